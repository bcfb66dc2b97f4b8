#include "doctest.h"

#include <cmath>
#include <numbers>

#include "spsvd/errors.hpp"
#include "spsvd/rng.hpp"
#include "spsvd/subspace.hpp"
#include "spsvd/types.hpp"

using spsvd::Index;
using spsvd::Matrix;
using spsvd::Subspace;
using spsvd::Vector;

namespace {

// Random orthonormal k x R basis via QR of a gaussian draw.
Matrix random_basis(spsvd::Philox& rng, Index k, Index R) {
  const Matrix G = spsvd::gaussian_matrix(rng, k, R);
  Eigen::HouseholderQR<Matrix> qr(G);
  return Matrix(qr.householderQ() * Matrix::Identity(k, R));
}

}  // namespace

TEST_SUITE("subspace") {

TEST_CASE("identical subspaces have angle zero") {
  Matrix B = Matrix::Zero(4, 2);
  B(0, 0) = 1;
  B(1, 1) = 1;
  // Exactly equal bases give the cosine exactly 1, so the angle is 0.
  CHECK(spsvd::principal_angle(Subspace(B), Subspace(B)) == 0.0);
}

TEST_CASE("orthogonal lines are at ninety degrees") {
  Matrix A = Matrix::Zero(3, 1);
  A(0, 0) = 1;
  Matrix B = Matrix::Zero(3, 1);
  B(1, 0) = 1;
  CHECK(spsvd::principal_angle(Subspace(A), Subspace(B)) ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
}

TEST_CASE("forty-five degree construction") {
  Matrix A = Matrix::Zero(3, 1);
  A(0, 0) = 1;
  Matrix B = Matrix::Zero(3, 1);
  B(0, 0) = 1 / std::sqrt(2.0);
  B(1, 0) = 1 / std::sqrt(2.0);
  CHECK(spsvd::principal_angle(Subspace(A), Subspace(B)) ==
        doctest::Approx(std::numbers::pi / 4).epsilon(1e-12));
}

TEST_CASE("symmetry and basis invariance") {
  spsvd::Philox rng(51, 0);
  const Matrix A = random_basis(rng, 10, 3);
  const Matrix B = random_basis(rng, 10, 3);
  const double ab = spsvd::principal_angle(A, B);
  const double ba = spsvd::principal_angle(B, A);
  CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
  // Rotate one basis by a random orthogonal R x R matrix.
  const Matrix Q = random_basis(rng, 3, 3);
  const double rotated = spsvd::principal_angle(Matrix(A * Q), B);
  CHECK(std::abs(rotated - ab) < 1e-10);
}

TEST_CASE("range and self-angle on random pairs") {
  spsvd::Philox rng(52, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix A = random_basis(rng, 8, 2);
    const Matrix B = random_basis(rng, 8, 2);
    const double theta = spsvd::principal_angle(A, B);
    CHECK(theta >= 0.0);
    CHECK(theta <= std::numbers::pi / 2 + 1e-15);
    // arccos amplifies rounding near cosine 1 to about sqrt(machine eps).
    CHECK(spsvd::principal_angle(A, A) < 1e-7);
  }
}

TEST_CASE("vector convention: angle ignores sign") {
  Matrix A = Matrix::Zero(5, 1);
  A(2, 0) = 1;
  CHECK(spsvd::principal_angle(A, Matrix(-A)) <= 1e-7);
}

TEST_CASE("constructor validates orthonormality and shape") {
  Matrix bad = Matrix::Ones(3, 2);  // not orthonormal
  CHECK_THROWS_AS(Subspace{bad}, spsvd::ParameterError);
  Matrix wide = Matrix::Identity(2, 2);
  CHECK_NOTHROW(Subspace{wide});
  Matrix too_many = Matrix::Ones(2, 3);
  CHECK_THROWS_AS(Subspace{too_many}, spsvd::ParameterError);
}

TEST_CASE("mismatched spaces are rejected") {
  spsvd::Philox rng(53, 0);
  const Matrix A = random_basis(rng, 6, 2);
  const Matrix B = random_basis(rng, 7, 2);
  CHECK_THROWS_AS((void)spsvd::principal_angle(A, B),
                  spsvd::ParameterError);
  const Matrix C = random_basis(rng, 6, 3);
  CHECK_THROWS_AS((void)spsvd::principal_angle(A, C),
                  spsvd::ParameterError);
}

TEST_CASE("degrees conversion") {
  CHECK(spsvd::degrees(std::numbers::pi / 2) ==
        doctest::Approx(90.0).epsilon(1e-12));
  CHECK(spsvd::degrees(0.0) == 0.0);
}

}  // TEST_SUITE
