#pragma once

#include <string>
#include <vector>

#include "spinbatt/hamiltonian.hpp"
#include "spinbatt/states.hpp"

namespace spinbatt {

/// W(t) samples on an ascending time grid; work[0] = 0 at t = 0 and
/// |W| <= 2 after spectrum normalization.
struct WorkCurve {
  std::vector<double> times;
  std::vector<double> work;
  std::string model_tag;
};

struct PowerSamples {
  WorkCurve curve;
  std::vector<double> power;  // W(t)/t, defined as 0 at t = 0
};

struct PowerResult {
  double p_max = 0.0;
  double t_star = 0.0;
  double w_at_tstar = 0.0;
  bool at_window_boundary = false;  // maximum sat at the end of the window
  WorkCurve curve;
};

/// Per-site eigendecomposition of the charger's local generator plus the
/// grouping of global phases by occupation of the local eigenvalues. The
/// charger is a sum of identical commuting single-site terms, so the full
/// propagator is diagonal in this basis with at most
/// C(N + d - 1, d - 1) distinct phases.
class ChargerBasis {
 public:
  explicit ChargerBasis(const ChargerHamiltonian& charger);

  Eigen::Index dim() const noexcept { return dim_; }
  int n_classes() const noexcept { return static_cast<int>(class_phase_.size()); }
  const RealVector& class_phase() const noexcept { return class_phase_; }
  const std::vector<int>& class_of() const noexcept { return class_of_; }
  const RealVector& phase_of() const noexcept { return phase_of_; }

  /// v <- (V^dag)^{(x)N} v, the charger eigenbasis.
  void to_eigenbasis(Vector& v) const;
  void from_eigenbasis(Vector& v) const;
  /// m <- (V^dag)^{(x)N} m V^{(x)N}.
  void to_eigenbasis(Matrix& m) const;
  void from_eigenbasis(Matrix& m) const;
  /// Column-only transforms, m <- (V^dag)^{(x)N} m and m <- V^{(x)N} m.
  void to_eigenbasis_columns(Matrix& m) const;
  void from_eigenbasis_columns(Matrix& m) const;

 private:
  void apply_local(Vector& v, const Matrix& site_matrix) const;
  void apply_left(Matrix& m, const Matrix& site_matrix) const;

  int n_sites_;
  int local_dim_;
  Eigen::Index dim_;
  Matrix v_;              // local eigenvectors
  RealVector theta_;      // local eigenvalues
  std::vector<int> class_of_;
  RealVector phase_of_;   // Theta per basis index
  RealVector class_phase_;
};

/// Evaluates W(t) = Tr(H rho_t) - Tr(H rho_0) in O(n_classes^2) per time
/// point after a one-time change to the charger eigenbasis.
class WorkEvaluator {
 public:
  /// Pure initial state |psi0> (need not be normalized).
  WorkEvaluator(const NormalizedHamiltonian& h, const Vector& psi0,
                const ChargerBasis& basis, std::string model_tag = {});

  /// General initial state.
  WorkEvaluator(const NormalizedHamiltonian& h, const DensityOperator& rho0,
                const ChargerBasis& basis, std::string model_tag = {});

  /// From already-binned coefficients (thermal sweep fast path).
  WorkEvaluator(RealVector class_phase, Eigen::MatrixXcd binned,
                std::string model_tag);

  double energy_at(double t) const;  // Tr(H rho_t)
  double work_at(double t) const;    // energy_at(t) - energy_at(0)
  const std::string& model_tag() const noexcept { return model_tag_; }

 private:
  void finish_init();

  RealVector class_phase_;
  Eigen::MatrixXcd binned_;
  double initial_energy_ = 0.0;
  std::string model_tag_;
};

/// Bins h_tilde(a,b) * rho_tilde(b,a) over (class(a), class(b)); both inputs
/// must already be in the charger eigenbasis.
Eigen::MatrixXcd bin_by_class(const ChargerBasis& basis, const Matrix& h_tilde,
                              const Matrix& rho_tilde);

/// Unitary conjugation rho(t) = U rho(0) U^dag with U = exp(-i H_c t),
/// computed site-locally. The spectrum of rho is preserved.
DensityOperator evolve(const DensityOperator& rho0,
                       const ChargerHamiltonian& charger, double t);

/// W = Tr(H rho_t) - Tr(H rho_0). The imaginary residue of the trace must
/// stay below 1e-10.
double work(const NormalizedHamiltonian& h, const DensityOperator& rho_t,
            const DensityOperator& rho0);

/// Uniform grid of W(t) and W(t)/t over [0, t_max].
PowerSamples power_curve(const NormalizedHamiltonian& h,
                         const DensityOperator& rho0,
                         const ChargerHamiltonian& charger, double t_max,
                         int n_grid);

/// Coarse grid scan of W(t)/t over (0, t_max] followed by golden-section
/// refinement around the best grid point.
PowerResult maximize_power(const NormalizedHamiltonian& h,
                           const DensityOperator& rho0,
                           const ChargerHamiltonian& charger, double t_max,
                           double coarse_step = 0.01,
                           double refine_tol = 1e-5);

/// Same maximization driven by a prebuilt evaluator.
PowerResult maximize_power_with(const WorkEvaluator& evaluator, double t_max,
                                double coarse_step = 0.01,
                                double refine_tol = 1e-5);

/// Tr(H rho) minus the passive-state energy sum_k r_k(desc) e_k(asc).
double ergotropy(const NormalizedHamiltonian& h, const DensityOperator& rho);

/// Default power-search window 4 pi / |omega|.
double default_time_window(double omega);

}  // namespace spinbatt
