#pragma once

#include "spinbatt/hamiltonian.hpp"
#include "spinbatt/spin.hpp"

namespace spinbatt {

/// Hermitian, unit-trace, positive-semidefinite state of the chain.
struct DensityOperator {
  Matrix matrix;
  double purity = 1.0;  // cached Tr rho^2
};

/// Dimensionless inverse temperature beta = |h| / (k_B T) >= 0.
class InverseTemperature {
 public:
  explicit InverseTemperature(double beta);
  double beta() const noexcept { return beta_; }

 private:
  double beta_;
};

struct GroundStateResult {
  DensityOperator state;
  double energy = 0.0;     // expectation of the normalized Hamiltonian, -1
  bool degenerate = false; // ground level degenerate; first eigenvector kept
};

/// Projector onto the lowest eigenvector. A degenerate ground level is
/// flagged and resolved deterministically (first eigenvector reported by the
/// solver).
GroundStateResult ground_state(const NormalizedHamiltonian& h);

/// Canonical equilibrium state exp(-beta H)/Z of the normalized Hamiltonian,
/// computed by eigendecomposition with max-shifted weights. When
/// `on_raw_spectrum` is set, beta weighs the pre-normalization eigenvalues
/// instead.
DensityOperator thermal_state(const NormalizedHamiltonian& h,
                              InverseTemperature beta,
                              bool on_raw_spectrum = false);

/// Normalized Gibbs populations exp(-beta(e_i - e_min)) / Z for an ascending
/// energy vector.
RealVector gibbs_weights(const RealVector& energies, double beta);

/// Builds a pure-state density operator |psi><psi| (psi need not be
/// normalized).
DensityOperator pure_state(const Vector& psi);

}  // namespace spinbatt
