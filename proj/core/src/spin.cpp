#include "spinbatt/spin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinbatt {

SpinQuantumNumber SpinQuantumNumber::from_two_j(int two_j) {
  if (two_j < 1) {
    throw std::invalid_argument("spin quantum number requires 2j >= 1, got 2j = " +
                                std::to_string(two_j));
  }
  return SpinQuantumNumber(two_j);
}

SpinOperatorSet build_spin_operators(SpinQuantumNumber j) {
  const int d = j.dimension();
  const double jv = j.value();

  // S+ couples |m> -> |m+1>; with basis order m = j, j-1, ..., -j the
  // raising operator sits on the superdiagonal.
  Matrix sp = Matrix::Zero(d, d);
  for (int col = 1; col < d; ++col) {
    const double m = jv - col;
    sp(col - 1, col) = std::sqrt(jv * (jv + 1.0) - m * (m + 1.0));
  }
  const Matrix sm = sp.adjoint();

  SpinOperatorSet ops{j, Matrix(), Matrix(), Matrix()};
  ops.sx = 0.5 * (sp + sm);
  ops.sy = Complex(0.0, -0.5) * (sp - sm);
  ops.sz = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    ops.sz(i, i) = jv - i;
  }
  return ops;
}

Eigen::Index dim_pow(Eigen::Index d, int n) {
  Eigen::Index result = 1;
  for (int i = 0; i < n; ++i) {
    if (result > (std::numeric_limits<Eigen::Index>::max)() / d) {
      throw std::overflow_error("tensor-product dimension overflows");
    }
    result *= d;
  }
  return result;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
    }
  }
  return out;
}

namespace {

void check_site_op(const Matrix& op, int site, int n_sites, int max_site) {
  if (op.rows() != op.cols()) {
    throw std::invalid_argument("local operator must be square");
  }
  if (n_sites < 1) {
    throw std::invalid_argument("chain length must be >= 1");
  }
  if (site < 0 || site > max_site) {
    throw std::out_of_range("site index " + std::to_string(site) +
                            " out of range for N = " + std::to_string(n_sites));
  }
}

}  // namespace

Matrix embed_at_site(const Matrix& op, int site, int n_sites) {
  check_site_op(op, site, n_sites, n_sites - 1);
  const Eigen::Index d = op.rows();
  const Matrix left = Matrix::Identity(dim_pow(d, site), dim_pow(d, site));
  const Matrix right = Matrix::Identity(dim_pow(d, n_sites - 1 - site),
                                        dim_pow(d, n_sites - 1 - site));
  return kron(kron(left, op), right);
}

Matrix embed_pair(const Matrix& pair_op, int site, int n_sites) {
  if (pair_op.rows() != pair_op.cols()) {
    throw std::invalid_argument("pair operator must be square");
  }
  const auto d2 = pair_op.rows();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(d2))));
  if (d * d != d2) {
    throw std::invalid_argument("pair operator dimension is not a perfect square");
  }
  if (n_sites < 2 || site < 0 || site >= n_sites - 1) {
    throw std::out_of_range("pair site index out of range");
  }
  const Matrix left = Matrix::Identity(dim_pow(d, site), dim_pow(d, site));
  const Matrix right = Matrix::Identity(dim_pow(d, n_sites - 2 - site),
                                        dim_pow(d, n_sites - 2 - site));
  return kron(kron(left, pair_op), right);
}

Matrix two_site_term(const Matrix& op_a, const Matrix& op_b, int site,
                     int n_sites) {
  if (op_a.rows() != op_a.cols() || op_b.rows() != op_b.cols() ||
      op_a.rows() != op_b.rows()) {
    throw std::invalid_argument("two-site operators must be square and of equal dimension");
  }
  if (site < 0 || site >= n_sites - 1) {
    throw std::out_of_range("bond index " + std::to_string(site) +
                            " out of range for N = " + std::to_string(n_sites));
  }
  return embed_pair(kron(op_a, op_b), site, n_sites);
}

}  // namespace spinbatt
