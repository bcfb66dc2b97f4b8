#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "spsvd/errors.hpp"
#include "spsvd/rng.hpp"
#include "spsvd/truncated_svd.hpp"
#include "spsvd/types.hpp"

using spsvd::Index;
using spsvd::Matrix;
using spsvd::TruncatedSvdOptions;
using spsvd::Vector;

namespace {

Matrix rank_one(const Vector& u, const Vector& v, double d) {
  return d * u * v.transpose();
}

void check_factorization_invariants(const spsvd::SvdFactorization& fac) {
  for (const auto& t : fac.triples) {
    CHECK(t.d >= 0.0);
    CHECK(t.u.norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(t.v.norm() == doctest::Approx(1.0).epsilon(1e-10));
  }
  const Matrix U = fac.matrix_u();
  const Matrix V = fac.matrix_v();
  CHECK((U.transpose() * U - Matrix::Identity(fac.rank(), fac.rank()))
            .cwiseAbs()
            .maxCoeff() < 1e-8);
  CHECK((V.transpose() * V - Matrix::Identity(fac.rank(), fac.rank()))
            .cwiseAbs()
            .maxCoeff() < 1e-8);
}

}  // namespace

TEST_SUITE("truncated_svd") {

TEST_CASE("diagonal matrix keeps its top singular values") {
  Matrix X = Matrix::Zero(3, 3);
  X(0, 0) = 5;
  X(1, 1) = 3;
  X(2, 2) = 1;
  const auto fac = spsvd::truncated_svd(X, 2);
  REQUIRE(fac.rank() == 2);
  CHECK(fac.triples[0].d == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(fac.triples[1].d == doctest::Approx(3.0).epsilon(1e-12));
  // Singular vectors are standard basis vectors up to sign.
  CHECK(std::abs(fac.triples[0].u[0]) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(fac.triples[0].v[0]) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(fac.triples[1].u[1]) == doctest::Approx(1.0).epsilon(1e-10));
  check_factorization_invariants(fac);
}

TEST_CASE("exact rank-1 matrix is recovered to high precision") {
  spsvd::Philox rng(41, 0);
  Vector u = spsvd::gaussian_vector(rng, 12);
  Vector v = spsvd::gaussian_vector(rng, 8);
  u /= u.norm();
  v /= v.norm();
  const Matrix X = rank_one(u, v, 7.0);
  const auto fac = spsvd::truncated_svd(X, 1);
  CHECK(fac.triples[0].d == doctest::Approx(7.0).epsilon(1e-8));
  CHECK(std::abs(fac.triples[0].u.dot(u)) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(fac.triples[0].v.dot(v)) ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("singular values match the Gram eigenvalue oracle on 8x5") {
  spsvd::Philox rng(42, 0);
  const Matrix X = spsvd::gaussian_matrix(rng, 8, 5);
  const auto fac = spsvd::truncated_svd(X, 3);
  const Vector d_oracle = oracle::singular_values_via_gram(X, 3);
  for (Index r = 0; r < 3; ++r) {
    CHECK(fac.triples[static_cast<std::size_t>(r)].d ==
          doctest::Approx(d_oracle[r]).epsilon(1e-8));
  }
  check_factorization_invariants(fac);
}

TEST_CASE("iterative path matches the Gram oracle on 120x70") {
  spsvd::Philox rng(43, 0);
  const Matrix X = spsvd::gaussian_matrix(rng, 120, 70);  // min dim > 64
  const auto fac = spsvd::truncated_svd(X, 4);
  const Vector d_oracle = oracle::singular_values_via_gram(X, 4);
  for (Index r = 0; r < 4; ++r) {
    CHECK(fac.triples[static_cast<std::size_t>(r)].d ==
          doctest::Approx(d_oracle[r]).epsilon(1e-7));
  }
  const Matrix Vg = oracle::right_vectors_via_gram(X, 4);
  for (Index r = 0; r < 4; ++r) {
    CHECK(std::abs(fac.triples[static_cast<std::size_t>(r)].v.dot(Vg.col(r)))
          == doctest::Approx(1.0).epsilon(1e-6));
  }
  check_factorization_invariants(fac);
}

TEST_CASE("wide matrices work through the iterative path too") {
  spsvd::Philox rng(44, 0);
  const Matrix X = spsvd::gaussian_matrix(rng, 70, 150);
  const auto fac = spsvd::truncated_svd(X, 3);
  const Vector d_oracle = oracle::singular_values_via_gram(X, 3);
  for (Index r = 0; r < 3; ++r) {
    CHECK(fac.triples[static_cast<std::size_t>(r)].d ==
          doctest::Approx(d_oracle[r]).epsilon(1e-7));
  }
}

TEST_CASE("residual eigen-equation holds at the configured tolerance") {
  spsvd::Philox rng(45, 0);
  for (Index rows : {20, 90}) {
    const Matrix X = spsvd::gaussian_matrix(rng, rows, rows - 5);
    const auto fac = spsvd::truncated_svd(X, 3);
    const double d1 = fac.triples[0].d;
    for (const auto& t : fac.triples) {
      const Vector resid =
          X.transpose() * (X * t.v) - t.d * t.d * t.v;
      CHECK(resid.norm() <= 1e-10 * d1 * d1);
    }
  }
}

TEST_CASE("reconstruction beats random rank-R matrices in Frobenius error") {
  spsvd::Philox rng(46, 0);
  const Matrix X = spsvd::gaussian_matrix(rng, 15, 10);
  const Index R = 3;
  const auto fac = spsvd::truncated_svd(X, R);
  const double err = (X - fac.reconstruction()).norm();
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix M = spsvd::gaussian_matrix(rng, 15, R) *
                     spsvd::gaussian_matrix(rng, R, 10);
    CHECK(err <= (X - M).norm() + 1e-10);
  }
}

TEST_CASE("sign convention: largest-magnitude entry of each v is positive") {
  spsvd::Philox rng(47, 0);
  for (Index rows : {10, 80}) {
    const Matrix X = spsvd::gaussian_matrix(rng, rows, rows);
    const auto fac = spsvd::truncated_svd(X, 2);
    for (const auto& t : fac.triples) {
      Index arg = 0;
      t.v.cwiseAbs().maxCoeff(&arg);
      CHECK(t.v[arg] > 0.0);
    }
  }
}

TEST_CASE("bit-identical determinism on repeated calls") {
  spsvd::Philox rng(48, 0);
  const Matrix X = spsvd::gaussian_matrix(rng, 100, 90);
  const auto a = spsvd::truncated_svd(X, 3);
  const auto b = spsvd::truncated_svd(X, 3);
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(a.triples[r].d == b.triples[r].d);
    CHECK((a.triples[r].u - b.triples[r].u).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.triples[r].v - b.triples[r].v).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("iteration cap produces a convergence error with the count") {
  spsvd::Philox rng(49, 0);
  const Matrix X = spsvd::gaussian_matrix(rng, 90, 80);
  TruncatedSvdOptions opts;
  opts.max_iters = 1;
  opts.tol = 1e-16;
  try {
    (void)spsvd::truncated_svd(X, 2, opts);
    FAIL("expected a convergence error");
  } catch (const spsvd::ConvergenceError& e) {
    CHECK(e.iterations() == 1);
  }
}

TEST_CASE("parameter validation") {
  const Matrix X = Matrix::Ones(4, 3);
  CHECK_THROWS_AS((void)spsvd::truncated_svd(X, 0), spsvd::ParameterError);
  CHECK_THROWS_AS((void)spsvd::truncated_svd(X, 4), spsvd::ParameterError);
  TruncatedSvdOptions bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS((void)spsvd::truncated_svd(X, 1, bad),
                  spsvd::ParameterError);
  Matrix Y = X;
  Y(0, 0) = std::nan("");
  CHECK_THROWS_AS((void)spsvd::truncated_svd(Y, 1),
                  spsvd::DegenerateInputError);
}

}  // TEST_SUITE
