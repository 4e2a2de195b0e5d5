#include "eig.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

#ifdef SPINBATT_WITH_LAPACKE
#include <lapacke.h>
#endif

namespace spinbatt::eig {

namespace {

void require_square(const Matrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw std::invalid_argument("eigensolver requires a non-empty square matrix");
  }
}

[[noreturn]] void solver_failed(const char* what, long long info) {
  throw std::runtime_error(std::string("eigensolver failure: ") + what +
                           " returned info = " + std::to_string(info));
}

}  // namespace

#ifdef SPINBATT_WITH_LAPACKE

RealVector eigenvalues(const Matrix& h) {
  require_square(h);
  const lapack_int n = static_cast<lapack_int>(h.rows());
  Matrix work = h;
  RealVector w(n);
  const lapack_int info = LAPACKE_zheevd(
      LAPACK_COL_MAJOR, 'N', 'L', n,
      reinterpret_cast<lapack_complex_double*>(work.data()), n, w.data());
  if (info != 0) solver_failed("zheevd", info);
  return w;
}

Lowest lowest_two(const Matrix& h) {
  require_square(h);
  const lapack_int n = static_cast<lapack_int>(h.rows());
  const lapack_int iu = n >= 2 ? 2 : 1;
  Matrix work = h;
  RealVector w(n);
  Matrix z(n, iu);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(iu));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_zheevr(
      LAPACK_COL_MAJOR, 'V', 'I', 'L', n,
      reinterpret_cast<lapack_complex_double*>(work.data()), n, 0.0, 0.0, 1, iu,
      0.0, &found, w.data(), reinterpret_cast<lapack_complex_double*>(z.data()),
      n, isuppz.data());
  if (info != 0 || found < 1) solver_failed("zheevr", info);
  Lowest out{w(0), std::numeric_limits<double>::infinity(), z.col(0)};
  if (found >= 2) out.e1 = w(1);
  return out;
}

Decomposition full(const Matrix& h) {
  require_square(h);
  const lapack_int n = static_cast<lapack_int>(h.rows());
  Decomposition out{RealVector(n), h};
  const lapack_int info = LAPACKE_zheevd(
      LAPACK_COL_MAJOR, 'V', 'L', n,
      reinterpret_cast<lapack_complex_double*>(out.vectors.data()), n,
      out.values.data());
  if (info != 0) solver_failed("zheevd", info);
  return out;
}

#else  // Eigen fallback

RealVector eigenvalues(const Matrix& h) {
  require_square(h);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) solver_failed("SelfAdjointEigenSolver", solver.info());
  return solver.eigenvalues();
}

Lowest lowest_two(const Matrix& h) {
  require_square(h);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) solver_failed("SelfAdjointEigenSolver", solver.info());
  Lowest out{solver.eigenvalues()(0), std::numeric_limits<double>::infinity(),
             solver.eigenvectors().col(0)};
  if (h.rows() >= 2) out.e1 = solver.eigenvalues()(1);
  return out;
}

Decomposition full(const Matrix& h) {
  require_square(h);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) solver_failed("SelfAdjointEigenSolver", solver.info());
  return Decomposition{solver.eigenvalues(), solver.eigenvectors()};
}

#endif

}  // namespace spinbatt::eig
