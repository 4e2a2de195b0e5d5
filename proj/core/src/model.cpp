#include "spinbatt/model.hpp"

#include <sstream>
#include <stdexcept>

#include "eig.hpp"

namespace spinbatt {

Matrix build_battery(const ModelConfig& m, std::span<const double> couplings) {
  std::vector<double> bonds(couplings.begin(), couplings.end());
  if (m.kind == ModelKind::kXY) {
    return build_xy_hamiltonian(
        XYParams{m.n_sites, m.j, std::move(bonds), m.gamma, m.h, m.dim_cap});
  }
  return build_bbh_hamiltonian(
      BBHParams{m.n_sites, m.j, std::move(bonds), m.phi, m.h, m.dim_cap});
}

ChargerHamiltonian build_charger(const ModelConfig& m) {
  if (m.kind == ModelKind::kXY) {
    return build_xy_charger(m.omega, m.n_sites, m.j, m.dim_cap);
  }
  return build_bbh_charger(m.omega, m.n_sites, m.j, m.omega_scope, m.dim_cap);
}

std::string model_tag(const ModelConfig& m, std::span<const double> couplings) {
  std::ostringstream os;
  os << (m.kind == ModelKind::kXY ? "xy" : "bbh") << " n=" << m.n_sites
     << " two_j=" << m.j.two_j();
  if (m.kind == ModelKind::kXY) {
    os << " gamma=" << m.gamma;
  } else {
    os << " phi=" << m.phi;
  }
  os << " h=" << m.h << " omega=" << m.omega;
  bool uniform = !couplings.empty();
  for (double c : couplings) uniform = uniform && c == couplings.front();
  os << " lambda=";
  if (uniform) {
    os << couplings.front();
  } else {
    os << "site-dependent";
  }
  if (m.beta) os << " beta=" << *m.beta;
  return os.str();
}

PreparedSystem::PreparedSystem(const ModelConfig& m,
                               std::vector<double> couplings)
    : cfg_(m),
      couplings_(std::move(couplings)),
      ham_(normalize_spectrum(build_battery(m, couplings_),
                              model_tag(m, couplings_))),
      charger_(build_charger(m)),
      basis_(charger_) {
  if (cfg_.beta) {
    // Thermal sweeps: keep the full decomposition, expressed in the charger
    // eigenbasis so each beta costs one rank-D product plus the binning.
    const eig::Decomposition dec = eig::full(ham_.matrix);
    energies_ = dec.values;
    r_ = dec.vectors;
    basis_.to_eigenbasis_columns(r_);
    h_tilde_ = ham_.matrix;
    basis_.to_eigenbasis(h_tilde_);
  } else {
    const eig::Lowest lowest = eig::lowest_two(ham_.matrix);
    ground_vec_ = lowest.vec;
    ground_degenerate_ = (lowest.e1 - lowest.e0) < 1e-10;
  }
}

bool PreparedSystem::ground_degenerate() const {
  if (cfg_.beta) {
    throw std::logic_error("system was prepared with a thermal initial state");
  }
  return ground_degenerate_;
}

WorkEvaluator PreparedSystem::evaluator() const {
  if (cfg_.beta) return evaluator_at(*cfg_.beta);
  return WorkEvaluator(ham_, ground_vec_, basis_, ham_.model_tag);
}

WorkEvaluator PreparedSystem::evaluator_at(double beta) const {
  if (!cfg_.beta) {
    throw std::logic_error("system was prepared with a ground initial state");
  }
  RealVector energies = energies_;
  if (cfg_.thermal_on_raw) {
    const double width = ham_.e_max - ham_.e_min;
    energies = 0.5 * (width * energies.array() + (ham_.e_max + ham_.e_min));
  }
  const RealVector w = gibbs_weights(energies, InverseTemperature(beta).beta());
  Matrix scaled = r_ * w.cwiseSqrt().asDiagonal();
  Matrix rho_tilde;
  rho_tilde.noalias() = scaled * scaled.adjoint();
  Eigen::MatrixXcd binned = bin_by_class(basis_, h_tilde_, rho_tilde);
  std::ostringstream tag;
  tag << ham_.model_tag << " beta=" << beta;
  return WorkEvaluator(basis_.class_phase(), std::move(binned), tag.str());
}

PowerResult PreparedSystem::maximize(const PowerSearchSettings& s) const {
  return maximize_power_with(evaluator(), s.resolve_t_max(cfg_.omega),
                             s.coarse_step, s.refine_tol);
}

PowerResult PreparedSystem::maximize_at(double beta,
                                        const PowerSearchSettings& s) const {
  return maximize_power_with(evaluator_at(beta), s.resolve_t_max(cfg_.omega),
                             s.coarse_step, s.refine_tol);
}

PowerResult compute_pmax(const ModelConfig& m, std::span<const double> couplings,
                         const PowerSearchSettings& s) {
  const PreparedSystem system(m, std::vector<double>(couplings.begin(),
                                                     couplings.end()));
  return system.maximize(s);
}

}  // namespace spinbatt
