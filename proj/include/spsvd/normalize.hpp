#pragma once

#include <cmath>

#include "spsvd/errors.hpp"
#include "spsvd/summation.hpp"
#include "spsvd/types.hpp"

namespace spsvd {

// Projects each nonzero row of X onto the unit sphere; zero rows pass
// through unchanged. This is the spherical normalization step: it bounds the
// leverage any single observation can exert on a subsequent SVD.
template <class Derived>
DenseMatrix<typename Derived::Scalar> row_normalized(
    const Eigen::MatrixBase<Derived>& X) {
  if (!X.allFinite())
    throw DegenerateInputError("row_normalized: non-finite entries");
  DenseMatrix<typename Derived::Scalar> out = X;
  for (Index i = 0; i < out.rows(); ++i) {
    const auto norm = out.row(i).norm();
    if (norm > 0) out.row(i) /= norm;
  }
  return out;
}

template <class Derived>
DenseMatrix<typename Derived::Scalar> col_normalized(
    const Eigen::MatrixBase<Derived>& X) {
  if (!X.allFinite())
    throw DegenerateInputError("col_normalized: non-finite entries");
  DenseMatrix<typename Derived::Scalar> out = X;
  for (Index j = 0; j < out.cols(); ++j) {
    const auto norm = out.col(j).norm();
    if (norm > 0) out.col(j) /= norm;
  }
  return out;
}

// Entrywise l1 norm, sum of |x_ij| over all entries, with compensated
// summation. This is the fit criterion the pair-selection step minimizes.
template <class Derived>
double entrywise_l1_norm(const Eigen::MatrixBase<Derived>& X) {
  KahanSum acc;
  for (Index j = 0; j < X.cols(); ++j)
    for (Index i = 0; i < X.rows(); ++i)
      acc.add(std::abs(static_cast<double>(X(i, j))));
  return acc.value();
}

}  // namespace spsvd
