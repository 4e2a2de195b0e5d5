#include "spinbatt/hamiltonian.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "eig.hpp"

namespace spinbatt {

namespace {

void validate_chain(int n_sites, std::size_t n_couplings) {
  if (n_sites < 2) {
    throw std::invalid_argument("chain length must be >= 2");
  }
  if (n_couplings != static_cast<std::size_t>(n_sites - 1)) {
    throw std::invalid_argument("expected " + std::to_string(n_sites - 1) +
                                " bond couplings, got " +
                                std::to_string(n_couplings));
  }
}

std::string format_tag(const char* model, int n_sites, SpinQuantumNumber j,
                       double angle_name_value, const char* angle_name,
                       double h, const std::vector<double>& couplings) {
  std::ostringstream os;
  os << model << " n=" << n_sites << " two_j=" << j.two_j() << ' ' << angle_name
     << '=' << angle_name_value << " h=" << h << " lambda=";
  bool uniform = true;
  for (double c : couplings) uniform = uniform && c == couplings.front();
  if (uniform && !couplings.empty()) {
    os << couplings.front();
  } else {
    os << "site-dependent";
  }
  return os.str();
}

}  // namespace

std::size_t checked_dimension(SpinQuantumNumber j, int n_sites,
                              std::size_t dim_cap) {
  const auto d = static_cast<std::size_t>(j.dimension());
  std::size_t dim = 1;
  for (int k = 0; k < n_sites; ++k) {
    if (dim > (std::numeric_limits<std::size_t>::max)() / d) {
      throw ResourceLimitError(j.two_j(), n_sites,
                               (std::numeric_limits<std::size_t>::max)(),
                               dim_cap);
    }
    dim *= d;
    if (dim > dim_cap) {
      throw ResourceLimitError(j.two_j(), n_sites, dim, dim_cap);
    }
  }
  return dim;
}

Matrix build_xy_hamiltonian(const XYParams& p) {
  validate_chain(p.n_sites, p.couplings.size());
  const auto dim = static_cast<Eigen::Index>(
      checked_dimension(p.j, p.n_sites, p.dim_cap));

  const SpinOperatorSet ops = build_spin_operators(p.j);
  const Matrix sx = 2.0 * ops.sx;  // Pauli-normalized spin matrices
  const Matrix sy = 2.0 * ops.sy;
  const Matrix sz = 2.0 * ops.sz;

  Matrix h = Matrix::Zero(dim, dim);
  for (int k = 0; k < p.n_sites; ++k) {
    h += 0.5 * p.h * embed_at_site(sz, k, p.n_sites);
  }
  const Matrix xx = kron(sx, sx);
  const Matrix yy = kron(sy, sy);
  for (int k = 0; k + 1 < p.n_sites; ++k) {
    const double jk = p.couplings[static_cast<std::size_t>(k)] * std::abs(p.h);
    h += 0.25 * jk *
         embed_pair((1.0 + p.gamma) * xx + (1.0 - p.gamma) * yy, k, p.n_sites);
  }
  return h;
}

Matrix build_bbh_hamiltonian(const BBHParams& p) {
  validate_chain(p.n_sites, p.couplings.size());
  const auto dim = static_cast<Eigen::Index>(
      checked_dimension(p.j, p.n_sites, p.dim_cap));

  const SpinOperatorSet ops = build_spin_operators(p.j);
  const Matrix dot = kron(ops.sx, ops.sx) + kron(ops.sy, ops.sy) +
                     kron(ops.sz, ops.sz);
  const Matrix dot_sq = dot * dot;
  const double c = std::cos(p.phi);
  const double s = std::sin(p.phi);

  Matrix h = Matrix::Zero(dim, dim);
  for (int k = 0; k + 1 < p.n_sites; ++k) {
    const double jk = p.couplings[static_cast<std::size_t>(k)] * std::abs(p.h);
    h += jk * embed_pair(c * dot + s * dot_sq, k, p.n_sites);
  }
  for (int k = 0; k < p.n_sites; ++k) {
    h += 0.5 * p.h * embed_at_site(ops.sz, k, p.n_sites);
  }
  return h;
}

NormalizedHamiltonian normalize_spectrum(const Matrix& h,
                                         std::string model_tag) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw std::invalid_argument("normalize_spectrum requires a square matrix");
  }
  const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (asym > 1e-12 * scale) {
    throw std::invalid_argument("normalize_spectrum requires a Hermitian matrix");
  }

  const RealVector w = eig::eigenvalues(h);
  const double e_min = w(0);
  const double e_max = w(w.size() - 1);
  const double width = e_max - e_min;
  if (!(width > 1e-12 * std::max(1.0, std::abs(e_max)))) {
    throw DegenerateSpectrumError(
        "spectrum width is zero (matrix proportional to the identity)");
  }

  NormalizedHamiltonian out{Matrix(), e_max, e_min, std::move(model_tag)};
  out.matrix = (2.0 / width) * h;
  out.matrix.diagonal().array() -= (e_max + e_min) / width;
  return out;
}

ChargerHamiltonian build_xy_charger(double omega, int n_sites,
                                    SpinQuantumNumber j, std::size_t dim_cap) {
  if (n_sites < 1) {
    throw std::invalid_argument("chain length must be >= 1");
  }
  const auto dim =
      static_cast<Eigen::Index>(checked_dimension(j, n_sites, dim_cap));
  const SpinOperatorSet ops = build_spin_operators(j);
  // (omega/2) per site in the Pauli-normalized convention, i.e.
  // omega * S^x in textbook operators.
  const Matrix local = omega * ops.sx;

  ChargerHamiltonian charger{Matrix::Zero(dim, dim), omega,
                             ChargerForm::kLinear, local, n_sites, j};
  for (int k = 0; k < n_sites; ++k) {
    charger.matrix += embed_at_site(local, k, n_sites);
  }
  return charger;
}

ChargerHamiltonian build_bbh_charger(double omega, int n_sites,
                                     SpinQuantumNumber j, OmegaScope scope,
                                     std::size_t dim_cap) {
  if (n_sites < 1) {
    throw std::invalid_argument("chain length must be >= 1");
  }
  const auto dim =
      static_cast<Eigen::Index>(checked_dimension(j, n_sites, dim_cap));
  const SpinOperatorSet ops = build_spin_operators(j);
  const Matrix quad = 0.25 * (ops.sx * ops.sx);
  const Matrix local = scope == OmegaScope::kFull
                           ? Matrix(omega * (0.5 * ops.sx + quad))
                           : Matrix(omega * 0.5 * ops.sx + quad);

  ChargerHamiltonian charger{Matrix::Zero(dim, dim), omega,
                             ChargerForm::kQuadratic, local, n_sites, j};
  for (int k = 0; k < n_sites; ++k) {
    charger.matrix += embed_at_site(local, k, n_sites);
  }
  return charger;
}

}  // namespace spinbatt
