#pragma once

#include "spinbatt/spin.hpp"

// Dense Hermitian eigensolver front-end. Backed by LAPACKE (zheevd/zheevr)
// when SPINBATT_WITH_LAPACKE is defined, otherwise by Eigen.

namespace spinbatt::eig {

/// All eigenvalues, ascending.
RealVector eigenvalues(const Matrix& h);

struct Lowest {
  double e0;
  double e1;  // +inf for 1x1 input
  Vector vec;
};

/// Lowest two eigenvalues and the ground eigenvector.
Lowest lowest_two(const Matrix& h);

struct Decomposition {
  RealVector values;  // ascending
  Matrix vectors;     // columns match values
};

Decomposition full(const Matrix& h);

}  // namespace spinbatt::eig
