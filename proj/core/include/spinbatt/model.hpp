#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spinbatt/dynamics.hpp"

namespace spinbatt {

enum class ModelKind { kXY, kBBH };

/// Everything that identifies one battery/charger setup except the bond
/// couplings, which are supplied separately so disorder realizations can
/// reuse the same config.
struct ModelConfig {
  ModelKind kind = ModelKind::kXY;
  int n_sites = 4;
  SpinQuantumNumber j = SpinQuantumNumber::from_two_j(1);
  double gamma = 0.0;  // XY anisotropy
  double phi = 0.0;    // BBH phase angle
  double h = 1.0;
  double omega = 1.0;
  OmegaScope omega_scope = OmegaScope::kFull;
  std::optional<double> beta;  // thermal initial state when set
  bool thermal_on_raw = false;
  std::size_t dim_cap = kDefaultDimCap;
};

struct PowerSearchSettings {
  std::optional<double> t_max;  // default 4 pi / |omega|
  double coarse_step = 0.01;
  double refine_tol = 1e-5;

  double resolve_t_max(double omega) const {
    return t_max ? *t_max : default_time_window(omega);
  }
};

Matrix build_battery(const ModelConfig& m, std::span<const double> couplings);
ChargerHamiltonian build_charger(const ModelConfig& m);
std::string model_tag(const ModelConfig& m, std::span<const double> couplings);

/// Caches the per-Hamiltonian heavy pieces (diagonalization, charger
/// eigenbasis) so that sweeps over beta or time reuse them. Immutable after
/// construction; const methods are safe to call concurrently.
class PreparedSystem {
 public:
  PreparedSystem(const ModelConfig& m, std::vector<double> couplings);

  const ModelConfig& config() const noexcept { return cfg_; }
  const NormalizedHamiltonian& hamiltonian() const noexcept { return ham_; }
  const ChargerHamiltonian& charger() const noexcept { return charger_; }
  const ChargerBasis& basis() const noexcept { return basis_; }

  /// Valid on ground-state systems (config().beta absent).
  bool ground_degenerate() const;

  WorkEvaluator evaluator() const;             // at the configured initial state
  WorkEvaluator evaluator_at(double beta) const;  // thermal state at given beta

  PowerResult maximize(const PowerSearchSettings& s = {}) const;
  PowerResult maximize_at(double beta, const PowerSearchSettings& s = {}) const;

 private:
  ModelConfig cfg_;
  std::vector<double> couplings_;
  NormalizedHamiltonian ham_;
  ChargerHamiltonian charger_;
  ChargerBasis basis_;
  // Ground-state preparation.
  Vector ground_vec_;
  bool ground_degenerate_ = false;
  // Thermal preparation.
  RealVector energies_;  // normalized eigenvalues, ascending
  Matrix r_;             // eigenvectors transformed to the charger eigenbasis
  Matrix h_tilde_;       // Hamiltonian in the charger eigenbasis
};

/// build -> normalize -> initial state -> maximize, in one call.
PowerResult compute_pmax(const ModelConfig& m, std::span<const double> couplings,
                         const PowerSearchSettings& s = {});

}  // namespace spinbatt
