#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spsvd/elsvd.hpp"
#include "spsvd/truncated_svd.hpp"
#include "spsvd/types.hpp"

namespace spsvd {

struct BlockSize {
  Index rows = 0;
  Index cols = 0;
};

// Block sizes form a partial order: (i, j) precedes (k, l) iff i <= k and
// j <= l. Sizes that dominate in one coordinate each are incomparable.
enum class BlockOrder { Less, Equal, Greater, Incomparable };
BlockOrder block_cmp(BlockSize a, BlockSize b);

struct BoundOptions {
  int k_max = 6;
  // Submatrix evaluations allowed before BudgetExceededError.
  std::uint64_t max_evaluations = 200'000'000;
  // Stop a level as soon as its running infimum certifies the answer. Turn
  // off to get exact per-level infima (slower).
  bool short_circuit = true;
  TruncatedSvdOptions svd;
};

struct BoundResult {
  // Smallest certified deletion count; k_max_searched + 1 when the search
  // ran out of levels (exhausted == false, rendered with a trailing arrow).
  int bound = 0;
  int k_max_searched = 0;
  bool exhausted = false;
  // Infimum of the spectral-gap functional per level k. Exact for levels
  // that failed their test; a running (upper) value for the level that
  // short-circuited.
  std::vector<std::pair<int, double>> per_k_infimum;
};

// Certified lower bound on the number of row replacements needed to break
// the rank-R spherically normalized right subspace: the smallest k such
// that deleting some k rows of the row-normalized matrix drops the gap
// lambda_R(sub)^2 - lambda_1(sub * P)^2 to k or below, where P projects
// onto the orthogonal complement of the estimated right subspace.
// Levels run k = 1..k_max over all (n choose k) deletions.
BoundResult row_deletion_bound(const Matrix& X, Index R,
                               const BoundOptions& opts = {});

// Column-side analogue; identical to the row bound of X^T.
BoundResult col_deletion_bound(const Matrix& X, Index R,
                               const BoundOptions& opts = {});

enum class StatKind {
  SvdLeft,
  SvdRight,
  SpsvdLeft,
  SpsvdRight,
  ElsvdLeft,
  ElsvdRight,
};

// Accepts "svd-left", "spsvd-right", ...; unknown names raise
// ParameterError listing the valid handles.
StatKind parse_stat(const std::string& name);
std::string stat_name(StatKind stat);

struct ProbeOptions {
  Index rank = 1;
  std::vector<double> magnitudes = {1e2, 1e4, 1e6, 1e8};
  int trials = 8;
  std::uint64_t seed = 0;
  double angle_threshold_deg = 89.0;
  HuberConfig huber;
  TruncatedSvdOptions svd;
};

struct ProbeReport {
  std::string stat;
  BlockSize block;
  int trials = 0;
  double max_angle_deg = 0.0;
  double magnitude_at_max = 0.0;
  int trial_at_max = 0;
  int pattern_at_max = 0;
  double threshold_deg = 89.0;
  bool broke_down = false;
};

// Empirical breakdown probe: replaces a random (rows x cols) index block
// with structured spikes (constant-column c*d*1^T and rank-one c*a*b^T,
// with the spike direction drawn from the null space of the clean
// subspace's block restriction when the block is large enough) at each
// magnitude, and records the worst principal angle against the clean
// statistic. Blocks are nested across sizes for a fixed (seed, trial), so
// growing the block never shrinks the attack surface.
ProbeReport breakdown_probe(const Matrix& X, StatKind stat, BlockSize block,
                            const ProbeOptions& opts = {});

// Rebuilds the contaminated matrix for one (trial, pattern, magnitude)
// cell of the probe, so the attack behind a reported maximum can be
// replayed exactly.
Matrix probe_attack(const Matrix& X, StatKind stat, BlockSize block,
                    const ProbeOptions& opts, int trial, int pattern,
                    double magnitude);

}  // namespace spsvd
