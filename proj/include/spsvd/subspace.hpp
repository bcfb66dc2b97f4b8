#pragma once

#include "spsvd/types.hpp"

namespace spsvd {

// An r-dimensional subspace of R^dim held as a matrix with orthonormal
// columns. Construction validates orthonormality to 1e-10.
struct Subspace {
  Matrix basis;

  explicit Subspace(Matrix b);
  Index ambient_dim() const { return basis.rows(); }
  Index dim() const { return basis.cols(); }
};

// Largest principal angle between two subspaces of equal dimension, in
// radians within [0, pi/2]: arccos of the smallest singular value of
// V^T W, with the cosine clamped into [0, 1] against rounding.
double principal_angle(const Subspace& V, const Subspace& W);
double principal_angle(const Matrix& V, const Matrix& W);

inline double degrees(double radians) {
  return radians * (180.0 / 3.14159265358979323846);
}

}  // namespace spsvd
