#include "spinbatt/dynamics.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "eig.hpp"

namespace spinbatt {

namespace {

constexpr double kImagTraceTol = 1e-10;

std::vector<int> digits_of(Eigen::Index index, int local_dim, int n_sites) {
  std::vector<int> digits(static_cast<std::size_t>(n_sites));
  for (int k = n_sites - 1; k >= 0; --k) {
    digits[static_cast<std::size_t>(k)] = static_cast<int>(index % local_dim);
    index /= local_dim;
  }
  return digits;
}

}  // namespace

double default_time_window(double omega) {
  if (omega == 0.0) {
    throw std::invalid_argument(
        "default time window is undefined for omega = 0; pass t_max explicitly");
  }
  return 4.0 * std::numbers::pi / std::abs(omega);
}

ChargerBasis::ChargerBasis(const ChargerHamiltonian& charger)
    : n_sites_(charger.n_sites),
      local_dim_(static_cast<int>(charger.per_site_local.rows())),
      dim_(dim_pow(charger.per_site_local.rows(), charger.n_sites)) {
  if (charger.per_site_local.rows() != charger.per_site_local.cols()) {
    throw std::invalid_argument("charger local generator must be square");
  }
  if (charger.matrix.rows() != 0 && charger.matrix.rows() != dim_) {
    throw std::invalid_argument("charger matrix dimension mismatch");
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(charger.per_site_local);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failure on the charger local generator");
  }
  v_ = solver.eigenvectors();
  theta_ = solver.eigenvalues();

  class_of_.resize(static_cast<std::size_t>(dim_));
  phase_of_.resize(dim_);
  std::map<std::vector<int>, int> class_ids;
  std::vector<double> class_phases;
  for (Eigen::Index b = 0; b < dim_; ++b) {
    const auto digits = digits_of(b, local_dim_, n_sites_);
    std::vector<int> occupation(static_cast<std::size_t>(local_dim_), 0);
    double phase = 0.0;
    for (int digit : digits) {
      ++occupation[static_cast<std::size_t>(digit)];
      phase += theta_(digit);
    }
    auto [it, inserted] =
        class_ids.try_emplace(occupation, static_cast<int>(class_phases.size()));
    if (inserted) class_phases.push_back(phase);
    class_of_[static_cast<std::size_t>(b)] = it->second;
    phase_of_(b) = class_phases[static_cast<std::size_t>(it->second)];
  }
  class_phase_ = Eigen::Map<RealVector>(class_phases.data(),
                                        static_cast<Eigen::Index>(class_phases.size()));
}

void ChargerBasis::apply_local(Vector& v, const Matrix& site_matrix) const {
  // Contract the site-k index of the rank-N tensor with site_matrix, for
  // every site in turn.
  const Eigen::Index d = local_dim_;
  const Matrix mt = site_matrix.transpose();
  Matrix tmp;
  for (int k = 0; k < n_sites_; ++k) {
    const Eigen::Index inner = dim_pow(d, n_sites_ - 1 - k);
    const Eigen::Index outer = dim_pow(d, k);
    const Eigen::Index chunk = inner * d;
    for (Eigen::Index o = 0; o < outer; ++o) {
      Eigen::Map<Matrix> block(v.data() + o * chunk, inner, d);
      tmp.noalias() = block * mt;
      block = tmp;
    }
  }
}

void ChargerBasis::apply_left(Matrix& m, const Matrix& site_matrix) const {
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    Vector column = m.col(col);
    apply_local(column, site_matrix);
    m.col(col) = column;
  }
}

void ChargerBasis::to_eigenbasis(Vector& v) const {
  if (v.size() != dim_) throw std::invalid_argument("state dimension mismatch");
  apply_local(v, Matrix(v_.adjoint()));
}

void ChargerBasis::from_eigenbasis(Vector& v) const {
  if (v.size() != dim_) throw std::invalid_argument("state dimension mismatch");
  apply_local(v, v_);
}

void ChargerBasis::to_eigenbasis(Matrix& m) const {
  if (m.rows() != dim_ || m.cols() != dim_) {
    throw std::invalid_argument("operator dimension mismatch");
  }
  const Matrix vdag = v_.adjoint();
  apply_left(m, vdag);   // m <- T^dag m
  m.adjointInPlace();    // m <- m^dag T
  apply_left(m, vdag);   // m <- T^dag m^dag T
  m.adjointInPlace();    // m <- T^dag m T
}

void ChargerBasis::from_eigenbasis(Matrix& m) const {
  if (m.rows() != dim_ || m.cols() != dim_) {
    throw std::invalid_argument("operator dimension mismatch");
  }
  apply_left(m, v_);
  m.adjointInPlace();
  apply_left(m, v_);
  m.adjointInPlace();
}

void ChargerBasis::to_eigenbasis_columns(Matrix& m) const {
  if (m.rows() != dim_) throw std::invalid_argument("operator dimension mismatch");
  apply_left(m, Matrix(v_.adjoint()));
}

void ChargerBasis::from_eigenbasis_columns(Matrix& m) const {
  if (m.rows() != dim_) throw std::invalid_argument("operator dimension mismatch");
  apply_left(m, v_);
}

Eigen::MatrixXcd bin_by_class(const ChargerBasis& basis, const Matrix& h_tilde,
                              const Matrix& rho_tilde) {
  const Eigen::Index dim = basis.dim();
  if (h_tilde.rows() != dim || rho_tilde.rows() != dim) {
    throw std::invalid_argument("binning dimension mismatch");
  }
  const int n_classes = basis.n_classes();
  const auto& class_of = basis.class_of();
  Eigen::MatrixXcd binned = Eigen::MatrixXcd::Zero(n_classes, n_classes);
  const Matrix rho_t = rho_tilde.transpose();
  for (Eigen::Index b = 0; b < dim; ++b) {
    const int cb = class_of[static_cast<std::size_t>(b)];
    for (Eigen::Index a = 0; a < dim; ++a) {
      binned(class_of[static_cast<std::size_t>(a)], cb) +=
          h_tilde(a, b) * rho_t(a, b);
    }
  }
  return binned;
}

WorkEvaluator::WorkEvaluator(const NormalizedHamiltonian& h, const Vector& psi0,
                             const ChargerBasis& basis, std::string model_tag)
    : model_tag_(std::move(model_tag)) {
  if (psi0.size() != basis.dim() || h.matrix.rows() != basis.dim()) {
    throw std::invalid_argument("work evaluator dimension mismatch");
  }
  Vector phi = psi0 / psi0.norm();
  basis.to_eigenbasis(phi);

  // One vector per phase class: z_c = T (phi restricted to class c). The
  // evolved state is sum_c exp(-i Theta_c t) z_c.
  const int n_classes = basis.n_classes();
  const auto& class_of = basis.class_of();
  Matrix z = Matrix::Zero(basis.dim(), n_classes);
  for (Eigen::Index b = 0; b < basis.dim(); ++b) {
    z(b, class_of[static_cast<std::size_t>(b)]) = phi(b);
  }
  for (int c = 0; c < n_classes; ++c) {
    Vector column = z.col(c);
    basis.from_eigenbasis(column);
    z.col(c) = column;
  }
  Matrix hz;
  hz.noalias() = h.matrix * z;
  binned_.noalias() = z.adjoint() * hz;
  class_phase_ = basis.class_phase();
  finish_init();
}

WorkEvaluator::WorkEvaluator(const NormalizedHamiltonian& h,
                             const DensityOperator& rho0,
                             const ChargerBasis& basis, std::string model_tag)
    : model_tag_(std::move(model_tag)) {
  if (rho0.matrix.rows() != basis.dim() || h.matrix.rows() != basis.dim()) {
    throw std::invalid_argument("work evaluator dimension mismatch");
  }
  Matrix h_tilde = h.matrix;
  basis.to_eigenbasis(h_tilde);
  Matrix rho_tilde = rho0.matrix;
  basis.to_eigenbasis(rho_tilde);
  binned_ = bin_by_class(basis, h_tilde, rho_tilde);
  class_phase_ = basis.class_phase();
  finish_init();
}

WorkEvaluator::WorkEvaluator(RealVector class_phase, Eigen::MatrixXcd binned,
                             std::string model_tag)
    : class_phase_(std::move(class_phase)),
      binned_(std::move(binned)),
      model_tag_(std::move(model_tag)) {
  finish_init();
}

void WorkEvaluator::finish_init() {
  if (binned_.rows() != binned_.cols() ||
      binned_.rows() != class_phase_.size()) {
    throw std::invalid_argument("binned coefficient shape mismatch");
  }
  initial_energy_ = 0.0;
  initial_energy_ = energy_at(0.0);
}

double WorkEvaluator::energy_at(double t) const {
  const Eigen::Index n = class_phase_.size();
  Vector u(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    u(c) = std::polar(1.0, -class_phase_(c) * t);
  }
  const Complex value = u.dot(binned_ * u);  // u^dag G u
  return value.real();
}

double WorkEvaluator::work_at(double t) const {
  return energy_at(t) - initial_energy_;
}

DensityOperator evolve(const DensityOperator& rho0,
                       const ChargerHamiltonian& charger, double t) {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("evolution time must satisfy t >= 0");
  }
  const ChargerBasis basis(charger);
  Matrix m = rho0.matrix;
  basis.to_eigenbasis(m);
  const RealVector& phase = basis.phase_of();
  Vector p(phase.size());
  for (Eigen::Index i = 0; i < phase.size(); ++i) {
    p(i) = std::polar(1.0, -phase(i) * t);
  }
  m = p.asDiagonal() * m;
  m = m * p.conjugate().asDiagonal();
  basis.from_eigenbasis(m);
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityOperator{std::move(m), rho0.purity};
}

double work(const NormalizedHamiltonian& h, const DensityOperator& rho_t,
            const DensityOperator& rho0) {
  if (h.matrix.rows() != rho_t.matrix.rows() ||
      h.matrix.rows() != rho0.matrix.rows()) {
    throw std::invalid_argument("work: dimension mismatch");
  }
  const Complex tr =
      (h.matrix.cwiseProduct((rho_t.matrix - rho0.matrix).transpose())).sum();
  if (std::abs(tr.imag()) >= kImagTraceTol) {
    throw std::runtime_error("work: imaginary trace residue exceeds 1e-10");
  }
  return tr.real();
}

PowerSamples power_curve(const NormalizedHamiltonian& h,
                         const DensityOperator& rho0,
                         const ChargerHamiltonian& charger, double t_max,
                         int n_grid) {
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  if (n_grid < 2) throw std::invalid_argument("n_grid must be >= 2");

  const ChargerBasis basis(charger);
  const WorkEvaluator evaluator(h, rho0, basis, h.model_tag);
  PowerSamples out;
  out.curve.model_tag = h.model_tag;
  out.curve.times.reserve(static_cast<std::size_t>(n_grid));
  out.curve.work.reserve(static_cast<std::size_t>(n_grid));
  out.power.reserve(static_cast<std::size_t>(n_grid));
  const double step = t_max / (n_grid - 1);
  for (int i = 0; i < n_grid; ++i) {
    const double t = i * step;
    const double w = evaluator.work_at(t);
    out.curve.times.push_back(t);
    out.curve.work.push_back(w);
    out.power.push_back(i == 0 ? 0.0 : w / t);
  }
  return out;
}

PowerResult maximize_power_with(const WorkEvaluator& evaluator, double t_max,
                                double coarse_step, double refine_tol) {
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  if (!(coarse_step > 0.0) || !(refine_tol > 0.0)) {
    throw std::invalid_argument("step and tolerance must be positive");
  }

  const auto n_steps = static_cast<std::size_t>(t_max / coarse_step + 1e-9);
  PowerResult result;
  result.curve.model_tag = evaluator.model_tag();
  result.curve.times.reserve(n_steps + 1);
  result.curve.work.reserve(n_steps + 1);

  std::size_t best = 0;
  double best_power = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= n_steps; ++i) {
    const double t = static_cast<double>(i) * coarse_step;
    const double w = evaluator.work_at(t);
    result.curve.times.push_back(t);
    result.curve.work.push_back(w);
    if (i > 0 && w / t > best_power) {
      best = i;
      best_power = w / t;
    }
  }

  result.at_window_boundary = best == n_steps;
  result.t_star = result.curve.times[best];
  result.w_at_tstar = result.curve.work[best];
  result.p_max = best_power;

  // Golden-section refinement around the best grid point.
  const auto power_at = [&](double t) { return evaluator.work_at(t) / t; };
  double lo = best > 1 ? result.curve.times[best - 1] : 0.5 * coarse_step;
  double hi = std::min(t_max, result.curve.times[best] + coarse_step);
  constexpr double kGolden = 0.6180339887498949;
  double c = hi - kGolden * (hi - lo);
  double d = lo + kGolden * (hi - lo);
  double pc = power_at(c);
  double pd = power_at(d);
  while (hi - lo > refine_tol) {
    if (pc >= pd) {
      hi = d;
      d = c;
      pd = pc;
      c = hi - kGolden * (hi - lo);
      pc = power_at(c);
    } else {
      lo = c;
      c = d;
      pc = pd;
      d = lo + kGolden * (hi - lo);
      pd = power_at(d);
    }
  }
  const double t_refined = 0.5 * (lo + hi);
  const double w_refined = evaluator.work_at(t_refined);
  if (w_refined / t_refined > result.p_max) {
    result.t_star = t_refined;
    result.w_at_tstar = w_refined;
    result.p_max = w_refined / t_refined;
  }
  return result;
}

PowerResult maximize_power(const NormalizedHamiltonian& h,
                           const DensityOperator& rho0,
                           const ChargerHamiltonian& charger, double t_max,
                           double coarse_step, double refine_tol) {
  const ChargerBasis basis(charger);
  const WorkEvaluator evaluator(h, rho0, basis, h.model_tag);
  return maximize_power_with(evaluator, t_max, coarse_step, refine_tol);
}

double ergotropy(const NormalizedHamiltonian& h, const DensityOperator& rho) {
  if (h.matrix.rows() != rho.matrix.rows()) {
    throw std::invalid_argument("ergotropy: dimension mismatch");
  }
  const Complex tr = (h.matrix.cwiseProduct(rho.matrix.transpose())).sum();
  if (std::abs(tr.imag()) >= kImagTraceTol) {
    throw std::runtime_error("ergotropy: imaginary trace residue exceeds 1e-10");
  }
  const RealVector h_eigs = eig::eigenvalues(h.matrix);       // ascending
  const RealVector rho_eigs = eig::eigenvalues(rho.matrix);   // ascending
  double passive = 0.0;
  const Eigen::Index n = h_eigs.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    passive += rho_eigs(n - 1 - i) * h_eigs(i);
  }
  return tr.real() - passive;
}

}  // namespace spinbatt
