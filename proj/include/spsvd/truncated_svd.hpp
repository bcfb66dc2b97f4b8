#pragma once

#include <cstdint>
#include <vector>

#include "spsvd/types.hpp"

namespace spsvd {

struct SvdTriple {
  double d = 0.0;
  Vector u;
  Vector v;
};

// A rank-R factorization as an ordered list of (d, u, v) triples. For the
// plain SVD the order is d descending; the spherically normalized variant
// keeps its own selection order, so don't assume sortedness here.
struct SvdFactorization {
  std::vector<SvdTriple> triples;

  Index rank() const { return static_cast<Index>(triples.size()); }
  Vector singular_values() const;
  Matrix matrix_u() const;  // n x R, columns are the u_r
  Matrix matrix_v() const;  // p x R
  Matrix reconstruction() const;
};

struct TruncatedSvdOptions {
  double tol = 1e-10;   // residual bound, relative to d_1^2
  int max_iters = 300;  // subspace-iteration cap (large path only)
  std::uint64_t seed = 0;
  int oversample = 4;
  Index dense_cutoff = 64;  // min(n,p) at or below this uses the dense solver
};

// First R singular triples of X, deterministic for identical inputs. Small
// matrices go through a dense bidiagonalization-based solver; larger ones
// through seeded subspace iteration with R + oversample test vectors.
// Postconditions: d_1 >= ... >= d_R >= 0, orthonormal u's and v's,
// ||X^T X v_r - d_r^2 v_r|| <= tol * d_1^2, and the largest-magnitude entry
// of each v_r is positive (the sign is absorbed into u_r).
// Throws ConvergenceError if the iteration cap is hit first.
SvdFactorization truncated_svd(const Matrix& X, Index R,
                               const TruncatedSvdOptions& opts = {});

}  // namespace spsvd
