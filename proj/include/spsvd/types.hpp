#pragma once

#include <Eigen/Dense>

namespace spsvd {

using Index = Eigen::Index;

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// The library works in double precision throughout; the templated kernels in
// normalize.hpp accept any Eigen expression with a real scalar.
using Matrix = DenseMatrix<double>;
using Vector = DenseVector<double>;

template <class Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  return a.allFinite();
}

}  // namespace spsvd
