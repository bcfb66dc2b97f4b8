#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "spsvd/truncated_svd.hpp"
#include "spsvd/types.hpp"

namespace spsvd {

// Candidate singular vectors for the spherically normalized decomposition:
// the first R right singular vectors of the row-normalized matrix and the
// first R left singular vectors of the column-normalized matrix. The two
// sets come from different matrices, so a u and a v with the same index are
// not an a-priori matched pair; pairing is a separate optimization.
struct CandidateSets {
  std::vector<Vector> u;  // n-vectors, unit norm, orthonormal as a set
  std::vector<Vector> v;  // p-vectors, unit norm, orthonormal as a set
};

CandidateSets extract_candidates(const Matrix& X, Index R,
                                 const TruncatedSvdOptions& opts = {});

struct PairSelection {
  double d = 0.0;
  std::size_t u_index = 0;  // into the candidate lists as given
  std::size_t v_index = 0;
  double objective = 0.0;   // entrywise l1 of residual - d u v^T
};

// Entries where |u_i v_j| falls below this are excluded from the weighted
// median sample; their |x_ij| still enters the selection objective.
inline constexpr double kPairWeightFloor = 1e-14;
// Objectives within this of the minimum count as tied; ties resolve to the
// lexicographically smallest (u_index, v_index).
inline constexpr double kPairTieTolerance = 1e-12;

// Scores every candidate pair: the scale d that minimizes
// sum_ij |x_ij - d u_i v_j| is a weighted median of x_ij / (u_i v_j) with
// weights |u_i v_j|, and the best (pair, d) under the entrywise l1
// objective wins.
PairSelection select_pair(const Matrix& residual,
                          const std::vector<Vector>& u_cands,
                          const std::vector<Vector>& v_cands);

struct SpsvdResult {
  SvdFactorization factorization;  // selection order; d_r >= 0
  // Original candidate indices (u, v) consumed at each step.
  std::vector<std::pair<std::size_t, std::size_t>> pair_indices;
  // The minimized l1 objective at each step.
  std::vector<double> objectives;
};

// Rank-R spherically normalized decomposition: extract candidates once,
// then repeatedly pick the best remaining (u, v) pair for the current
// residual, deflate, and drop the consumed candidates. Triples keep the
// selection order and carry nonnegative d (sign absorbed into u; a d of
// exactly zero keeps the candidate orientation).
SpsvdResult spsvd_decompose(const Matrix& X, Index R,
                            const TruncatedSvdOptions& opts = {});

// Sum of the R selected rank-one terms.
Matrix spsvd_low_rank(const Matrix& X, Index R,
                      const TruncatedSvdOptions& opts = {});

}  // namespace spsvd
