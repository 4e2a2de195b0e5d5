#pragma once

#include <Eigen/Dense>
#include <complex>

namespace spinbatt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Spin quantum number j >= 1/2, stored as the integer 2j so half-integer
/// spins stay exact.
class SpinQuantumNumber {
 public:
  static SpinQuantumNumber from_two_j(int two_j);

  int two_j() const noexcept { return two_j_; }
  int dimension() const noexcept { return two_j_ + 1; }  // d = 2j + 1
  double value() const noexcept { return 0.5 * two_j_; }

  friend bool operator==(SpinQuantumNumber a, SpinQuantumNumber b) noexcept {
    return a.two_j_ == b.two_j_;
  }

 private:
  explicit SpinQuantumNumber(int two_j) noexcept : two_j_(two_j) {}
  int two_j_;
};

/// Dense S^x, S^y, S^z for a single spin-j site, hbar = 1.
///
/// Basis order is m = j, j-1, ..., -j, so sz is diagonal descending and the
/// last basis state is the fully down state.
struct SpinOperatorSet {
  SpinQuantumNumber j;
  Matrix sx;
  Matrix sy;
  Matrix sz;
};

/// Builds the spin-j operators from the ladder matrix elements
/// sqrt(j(j+1) - m(m+-1)); S^x = (S+ + S-)/2, S^y = (S+ - S-)/(2i).
SpinOperatorSet build_spin_operators(SpinQuantumNumber j);

/// I^{(x)k} (x) op (x) I^{(x)(N-1-k)} for a d x d single-site operator.
Matrix embed_at_site(const Matrix& op, int site, int n_sites);

/// Product of op_a embedded at `site` and op_b embedded at `site + 1`.
Matrix two_site_term(const Matrix& op_a, const Matrix& op_b, int site,
                     int n_sites);

/// Embeds a d^2 x d^2 operator acting on the (site, site+1) pair.
Matrix embed_pair(const Matrix& pair_op, int site, int n_sites);

/// Dense Kronecker product.
Matrix kron(const Matrix& a, const Matrix& b);

/// d^n as Eigen::Index; throws std::overflow_error when it does not fit.
Eigen::Index dim_pow(Eigen::Index d, int n);

}  // namespace spinbatt
