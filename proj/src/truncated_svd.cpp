#include "spsvd/truncated_svd.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "spsvd/errors.hpp"
#include "spsvd/rng.hpp"

namespace spsvd {

Vector SvdFactorization::singular_values() const {
  Vector d(rank());
  for (Index r = 0; r < rank(); ++r) d[r] = triples[static_cast<std::size_t>(r)].d;
  return d;
}

Matrix SvdFactorization::matrix_u() const {
  if (triples.empty()) return Matrix(0, 0);
  Matrix U(triples.front().u.size(), rank());
  for (Index r = 0; r < rank(); ++r) U.col(r) = triples[static_cast<std::size_t>(r)].u;
  return U;
}

Matrix SvdFactorization::matrix_v() const {
  if (triples.empty()) return Matrix(0, 0);
  Matrix V(triples.front().v.size(), rank());
  for (Index r = 0; r < rank(); ++r) V.col(r) = triples[static_cast<std::size_t>(r)].v;
  return V;
}

Matrix SvdFactorization::reconstruction() const {
  if (triples.empty()) return Matrix(0, 0);
  Matrix acc = Matrix::Zero(triples.front().u.size(), triples.front().v.size());
  for (const auto& t : triples) acc.noalias() += t.d * t.u * t.v.transpose();
  return acc;
}

namespace {

// Largest-magnitude entry of v positive, ties to the smallest index; the
// flip is applied to u as well so the product d u v^T is unchanged. Keeping
// one fixed convention makes outputs bit-reproducible across code paths.
void fix_signs(std::vector<SvdTriple>& triples) {
  for (auto& t : triples) {
    Index imax = 0;
    double best = -1.0;
    for (Index i = 0; i < t.v.size(); ++i) {
      const double a = std::abs(t.v[i]);
      if (a > best) {
        best = a;
        imax = i;
      }
    }
    if (t.v[imax] < 0) {
      t.v = -t.v;
      t.u = -t.u;
    }
  }
}

std::vector<SvdTriple> dense_path(const Matrix& X, Index R) {
  Eigen::BDCSVD<Matrix> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  std::vector<SvdTriple> triples(static_cast<std::size_t>(R));
  for (Index r = 0; r < R; ++r) {
    auto& t = triples[static_cast<std::size_t>(r)];
    t.d = svd.singularValues()[r];
    t.u = svd.matrixU().col(r);
    t.v = svd.matrixV().col(r);
  }
  return triples;
}

Matrix thin_q(const Matrix& A) {
  Eigen::HouseholderQR<Matrix> qr(A);
  return qr.householderQ() * Matrix::Identity(A.rows(), A.cols());
}

std::vector<SvdTriple> iterative_path(const Matrix& X, Index R,
                                      const TruncatedSvdOptions& opts) {
  const bool transposed = X.rows() < X.cols();
  Matrix Awork = transposed ? Matrix(X.transpose()) : X;
  const Index cols = Awork.cols();
  const Index q =
      std::min<Index>(R + static_cast<Index>(opts.oversample), cols);

  Philox rng(opts.seed, /*stream=*/0x53564453u);  // dedicated start stream
  Matrix Q = thin_q(gaussian_matrix(rng, cols, q));

  std::vector<SvdTriple> triples(static_cast<std::size_t>(R));
  for (int iter = 1; iter <= opts.max_iters; ++iter) {
    Matrix B = Awork * Q;           // rows x q
    Matrix Qb = thin_q(B);          // stabilized power step
    Matrix Z = Awork.transpose() * Qb;
    Q = thin_q(Z);

    // Rayleigh-Ritz on the current subspace.
    Matrix C = Awork * Q;
    Eigen::HouseholderQR<Matrix> qr(C);
    Matrix Rsmall =
        qr.matrixQR().topRows(q).template triangularView<Eigen::Upper>();
    Eigen::JacobiSVD<Matrix> small(Rsmall,
                                   Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Matrix Qc = qr.householderQ() * Matrix::Identity(C.rows(), q);
    const Matrix Ufull = Qc * small.matrixU();
    const Matrix Vfull = Q * small.matrixV();

    for (Index r = 0; r < R; ++r) {
      auto& t = triples[static_cast<std::size_t>(r)];
      t.d = small.singularValues()[r];
      if (transposed) {
        t.u = Vfull.col(r);
        t.v = Ufull.col(r);
      } else {
        t.u = Ufull.col(r);
        t.v = Vfull.col(r);
      }
    }

    // Convergence: eigen-residual of each kept right vector against X^T X.
    const double d1sq = triples[0].d * triples[0].d;
    bool ok = true;
    for (Index r = 0; r < R && ok; ++r) {
      const auto& t = triples[static_cast<std::size_t>(r)];
      const Vector resid =
          X.transpose() * (X * t.v) - (t.d * t.d) * t.v;
      if (resid.norm() > opts.tol * d1sq) ok = false;
    }
    if (ok) return triples;
  }
  throw ConvergenceError(
      "truncated_svd: subspace iteration did not meet tol " +
          std::to_string(opts.tol) + " within " +
          std::to_string(opts.max_iters) + " iterations",
      opts.max_iters);
}

}  // namespace

SvdFactorization truncated_svd(const Matrix& X, Index R,
                               const TruncatedSvdOptions& opts) {
  const Index minDim = std::min(X.rows(), X.cols());
  if (X.rows() == 0 || X.cols() == 0)
    throw ParameterError("truncated_svd: empty matrix");
  if (R < 1 || R > minDim)
    throw ParameterError("truncated_svd: rank " + std::to_string(R) +
                         " out of range [1, " + std::to_string(minDim) + "]");
  if (!(opts.tol > 0)) throw ParameterError("truncated_svd: tol must be > 0");
  if (opts.max_iters < 1)
    throw ParameterError("truncated_svd: max_iters must be >= 1");
  if (!X.allFinite())
    throw DegenerateInputError("truncated_svd: non-finite entries");

  SvdFactorization out;
  out.triples = (minDim <= opts.dense_cutoff) ? dense_path(X, R)
                                              : iterative_path(X, R, opts);
  fix_signs(out.triples);
  return out;
}

}  // namespace spsvd
