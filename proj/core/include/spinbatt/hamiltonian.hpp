#pragma once

#include <string>
#include <vector>

#include "spinbatt/errors.hpp"
#include "spinbatt/spin.hpp"

namespace spinbatt {

inline constexpr std::size_t kDefaultDimCap = 4096;

/// Parameters of the anisotropic XY chain in a transverse field, open
/// boundaries. couplings[k] = lambda_k = J_k/|h|, one entry per bond.
/// gamma = 0 is the XX model, gamma = 1 the Ising model.
struct XYParams {
  int n_sites;
  SpinQuantumNumber j;
  std::vector<double> couplings;
  double gamma = 0.0;
  double h = 1.0;
  std::size_t dim_cap = kDefaultDimCap;
};

/// Parameters of the bilinear-biquadratic chain in a transverse field.
/// phi mixes the bilinear (cos phi) and biquadratic (sin phi) exchange.
struct BBHParams {
  int n_sites;
  SpinQuantumNumber j;
  std::vector<double> couplings;
  double phi = 0.0;
  double h = 1.0;
  std::size_t dim_cap = kDefaultDimCap;
};

/// A Hermitian matrix whose spectrum has been affinely mapped onto [-1, 1],
/// together with the extremal eigenvalues of the original matrix.
struct NormalizedHamiltonian {
  Matrix matrix;
  double e_max = 0.0;
  double e_min = 0.0;
  std::string model_tag;
};

enum class ChargerForm { kLinear, kQuadratic };

/// Scope of the field strength in the quadratic charger: whether omega
/// multiplies the whole per-site sum or only the linear part.
enum class OmegaScope { kFull, kLinearOnly };

/// Local charging field: a sum of identical single-site terms. The
/// per-site generator is kept so evolution can diagonalize d x d instead
/// of D x D.
struct ChargerHamiltonian {
  Matrix matrix;
  double omega = 1.0;
  ChargerForm form = ChargerForm::kLinear;
  Matrix per_site_local;
  int n_sites = 0;
  SpinQuantumNumber j;
};

/// Un-normalized XY battery Hamiltonian.
///
/// Spin matrices enter in the convention where j = 1/2 gives the Pauli
/// matrices (twice the textbook operators), so for j = 1/2 this is the
/// familiar (h/2) sum sigma^z + (J/4) sum [(1+gamma) sigma^x sigma^x + ...]
/// chain.
Matrix build_xy_hamiltonian(const XYParams& p);

/// Un-normalized bilinear-biquadratic battery Hamiltonian
/// sum_k J_k [cos phi (S_k . S_{k+1}) + sin phi (S_k . S_{k+1})^2]
/// + (h/2) sum_k S_k^z with textbook spin matrices.
Matrix build_bbh_hamiltonian(const BBHParams& p);

/// Affine map [2H - (e_max + e_min) I] / (e_max - e_min); eigenvectors are
/// unchanged and the extremal eigenvalues become exactly +-1. Throws
/// DegenerateSpectrumError when e_max == e_min.
NormalizedHamiltonian normalize_spectrum(const Matrix& h,
                                         std::string model_tag = {});

/// Linear charger (omega/2) sum_k S_k^x in the same convention as
/// build_xy_hamiltonian.
ChargerHamiltonian build_xy_charger(double omega, int n_sites,
                                    SpinQuantumNumber j,
                                    std::size_t dim_cap = kDefaultDimCap);

/// Quadratic charger omega sum_k [S_k^x / 2 + (S_k^x)^2 / 4] with textbook
/// spin matrices; `scope` controls whether omega multiplies the quadratic
/// part as well.
ChargerHamiltonian build_bbh_charger(double omega, int n_sites,
                                     SpinQuantumNumber j,
                                     OmegaScope scope = OmegaScope::kFull,
                                     std::size_t dim_cap = kDefaultDimCap);

/// Validates (2j+1)^N against the cap; throws ResourceLimitError.
std::size_t checked_dimension(SpinQuantumNumber j, int n_sites,
                              std::size_t dim_cap);

}  // namespace spinbatt
