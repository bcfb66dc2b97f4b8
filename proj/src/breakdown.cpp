#include "spsvd/breakdown.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "spsvd/errors.hpp"
#include "spsvd/normalize.hpp"
#include "spsvd/rng.hpp"
#include "spsvd/spsvd.hpp"
#include "spsvd/subspace.hpp"

namespace spsvd {

BlockOrder block_cmp(BlockSize a, BlockSize b) {
  if (a.rows == b.rows && a.cols == b.cols) return BlockOrder::Equal;
  if (a.rows <= b.rows && a.cols <= b.cols) return BlockOrder::Less;
  if (a.rows >= b.rows && a.cols >= b.cols) return BlockOrder::Greater;
  return BlockOrder::Incomparable;
}

namespace {

struct LevelOutcome {
  double infimum = std::numeric_limits<double>::infinity();
  bool certified = false;  // running infimum dropped to <= k
};

// Walks all k-subsets of the permuted row set in lexicographic order,
// reusing Gram downdates along shared prefixes. The functional per subset
// is lambda_R(Gsub) - lambda_1(P Gsub P), both as eigenvalues of p x p
// symmetric matrices.
class RowDeletionSearch {
 public:
  RowDeletionSearch(const Matrix& Xt, const Matrix& P, Index R,
                    std::uint64_t budget)
      : Xt_(Xt), P_(P), R_(R), budget_(budget) {
    const Index n = Xt.rows();
    G0_ = Xt.transpose() * Xt;
    // Delete signal-heavy rows first: they pull lambda_R down fastest, so
    // certificates surface early in the walk.
    Vector score(n);
    const Matrix signal = Xt * (Matrix::Identity(P.rows(), P.cols()) - P);
    for (Index i = 0; i < n; ++i) score[i] = signal.row(i).squaredNorm();
    perm_.resize(static_cast<std::size_t>(n));
    std::iota(perm_.begin(), perm_.end(), Index{0});
    std::sort(perm_.begin(), perm_.end(),
              [&](Index a, Index b) { return score[a] > score[b]; });
  }

  LevelOutcome run_level(int k, bool short_circuit,
                         std::vector<std::pair<int, double>>& progress) {
    k_ = k;
    short_circuit_ = short_circuit;
    outcome_ = LevelOutcome{};
    grams_.assign(static_cast<std::size_t>(k + 1), G0_);
    descend(0, 0, progress);
    return outcome_;
  }

  std::uint64_t evaluations() const { return evaluations_; }

 private:
  // Returns true when the level can stop early.
  bool descend(Index start, int depth,
               std::vector<std::pair<int, double>>& progress) {
    const Index n = Xt_.rows();
    for (Index pos = start; pos <= n - (k_ - depth); ++pos) {
      const Index row = perm_[static_cast<std::size_t>(pos)];
      grams_[static_cast<std::size_t>(depth + 1)] =
          grams_[static_cast<std::size_t>(depth)];
      grams_[static_cast<std::size_t>(depth + 1)].noalias() -=
          Xt_.row(row).transpose() * Xt_.row(row);
      if (depth + 1 == k_) {
        if (++evaluations_ > budget_) {
          progress.emplace_back(k_, outcome_.infimum);
          throw BudgetExceededError(
              "deletion bound: evaluation budget of " +
                  std::to_string(budget_) + " submatrices exceeded at k = " +
                  std::to_string(k_),
              progress);
        }
        const double val =
            evaluate(grams_[static_cast<std::size_t>(depth + 1)]);
        outcome_.infimum = std::min(outcome_.infimum, val);
        if (outcome_.infimum <= static_cast<double>(k_)) {
          outcome_.certified = true;
          if (short_circuit_) return true;
        }
      } else if (descend(pos + 1, depth + 1, progress)) {
        return true;
      }
    }
    return false;
  }

  double evaluate(const Matrix& Gsub) const {
    const Index p = Gsub.cols();
    Eigen::SelfAdjointEigenSolver<Matrix> es(Gsub, Eigen::EigenvaluesOnly);
    const double lamR = es.eigenvalues()[p - R_];
    const Matrix projected = P_ * Gsub * P_;
    Eigen::SelfAdjointEigenSolver<Matrix> esp(projected,
                                              Eigen::EigenvaluesOnly);
    const double lam1 = esp.eigenvalues()[p - 1];
    return lamR - lam1;
  }

  const Matrix& Xt_;
  const Matrix& P_;
  Index R_;
  std::uint64_t budget_;
  std::uint64_t evaluations_ = 0;
  Matrix G0_;
  std::vector<Index> perm_;
  std::vector<Matrix> grams_;
  int k_ = 0;
  bool short_circuit_ = true;
  LevelOutcome outcome_;
};

}  // namespace

BoundResult row_deletion_bound(const Matrix& X, Index R,
                               const BoundOptions& opts) {
  const Index n = X.rows();
  const Index p = X.cols();
  if (R < 1 || R > std::min(n, p))
    throw ParameterError("row_deletion_bound: rank out of range");
  if (opts.k_max < 1)
    throw ParameterError("row_deletion_bound: k_max must be >= 1");
  if (static_cast<Index>(opts.k_max) > n - R)
    throw ParameterError("row_deletion_bound: k_max must leave at least R rows");
  if (opts.max_evaluations < 1)
    throw ParameterError("row_deletion_bound: evaluation budget must be >= 1");

  const Matrix V = spsvd_decompose(X, R, opts.svd).factorization.matrix_v();
  const Matrix P = Matrix::Identity(p, p) - V * V.transpose();
  const Matrix Xt = row_normalized(X);

  RowDeletionSearch search(Xt, P, R, opts.max_evaluations);
  BoundResult res;
  res.k_max_searched = opts.k_max;
  for (int k = 1; k <= opts.k_max; ++k) {
    const LevelOutcome level =
        search.run_level(k, opts.short_circuit, res.per_k_infimum);
    res.per_k_infimum.emplace_back(k, level.infimum);
    if (level.certified) {
      res.bound = k;
      res.exhausted = true;
      return res;
    }
  }
  res.bound = opts.k_max + 1;
  res.exhausted = false;
  return res;
}

BoundResult col_deletion_bound(const Matrix& X, Index R,
                               const BoundOptions& opts) {
  return row_deletion_bound(X.transpose(), R, opts);
}

StatKind parse_stat(const std::string& name) {
  if (name == "svd-left") return StatKind::SvdLeft;
  if (name == "svd-right") return StatKind::SvdRight;
  if (name == "spsvd-left") return StatKind::SpsvdLeft;
  if (name == "spsvd-right") return StatKind::SpsvdRight;
  if (name == "elsvd-left") return StatKind::ElsvdLeft;
  if (name == "elsvd-right") return StatKind::ElsvdRight;
  throw ParameterError(
      "unknown statistic '" + name +
      "'; valid: svd-left, svd-right, spsvd-left, spsvd-right, elsvd-left, "
      "elsvd-right");
}

std::string stat_name(StatKind stat) {
  switch (stat) {
    case StatKind::SvdLeft: return "svd-left";
    case StatKind::SvdRight: return "svd-right";
    case StatKind::SpsvdLeft: return "spsvd-left";
    case StatKind::SpsvdRight: return "spsvd-right";
    case StatKind::ElsvdLeft: return "elsvd-left";
    case StatKind::ElsvdRight: return "elsvd-right";
  }
  throw ParameterError("unknown statistic kind");
}

namespace {

constexpr std::uint64_t kAttackStreamBase = 0xA77AC000u;

bool is_left_stat(StatKind stat) {
  return stat == StatKind::SvdLeft || stat == StatKind::SpsvdLeft ||
         stat == StatKind::ElsvdLeft;
}

Matrix stat_basis(const Matrix& M, StatKind stat, const ProbeOptions& opts) {
  switch (stat) {
    case StatKind::SvdLeft:
      return truncated_svd(M, opts.rank, opts.svd).matrix_u();
    case StatKind::SvdRight:
      return truncated_svd(M, opts.rank, opts.svd).matrix_v();
    case StatKind::SpsvdLeft:
      return spsvd_decompose(M, opts.rank, opts.svd).factorization.matrix_u();
    case StatKind::SpsvdRight:
      return spsvd_decompose(M, opts.rank, opts.svd).factorization.matrix_v();
    case StatKind::ElsvdLeft:
      return elsvd_decompose(M, opts.rank, opts.huber).factorization.matrix_u();
    case StatKind::ElsvdRight:
      return elsvd_decompose(M, opts.rank, opts.huber).factorization.matrix_v();
  }
  throw ParameterError("unknown statistic kind");
}

std::vector<Index> random_permutation(Philox& rng, Index n) {
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  for (Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Index>(
        rng.uniform_index(static_cast<std::uint64_t>(i + 1)));
    std::swap(perm[static_cast<std::size_t>(i)],
              perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

// Unit vector orthogonal to every column of the basis restricted to the
// chosen coordinates; exists whenever the block is larger than the rank.
Vector restricted_null_vector(const Matrix& basis,
                              const std::vector<Index>& coords) {
  Matrix restricted(static_cast<Index>(coords.size()), basis.cols());
  for (std::size_t i = 0; i < coords.size(); ++i)
    restricted.row(static_cast<Index>(i)) = basis.row(coords[i]);
  Eigen::JacobiSVD<Matrix> svd(restricted, Eigen::ComputeFullU);
  return svd.matrixU().col(restricted.rows() - 1);
}

struct AttackIngredients {
  std::vector<Index> rows;  // sorted block coordinates
  std::vector<Index> cols;
  Vector const_profile;  // pattern 0: row profile d (k)
  Vector row_spike;      // pattern 1: a (k)
  Vector col_profile;    // pattern 1: w (l)
  Vector rank1_a;        // pattern 2 (k)
  Vector rank1_b;        // pattern 2 (l)
};

AttackIngredients draw_attack(const Matrix& X, const Matrix& clean_basis,
                              bool left_side, BlockSize block,
                              std::uint64_t seed, int trial, Index rank) {
  Philox rng(seed, kAttackStreamBase + static_cast<std::uint64_t>(trial));
  AttackIngredients ing;
  const auto row_perm = random_permutation(rng, X.rows());
  const auto col_perm = random_permutation(rng, X.cols());
  ing.rows.assign(row_perm.begin(), row_perm.begin() + block.rows);
  ing.cols.assign(col_perm.begin(), col_perm.begin() + block.cols);
  std::sort(ing.rows.begin(), ing.rows.end());
  std::sort(ing.cols.begin(), ing.cols.end());

  const auto unit = [&rng](Index m) {
    Vector g = gaussian_vector(rng, m);
    g.normalize();
    return g;
  };
  ing.const_profile = unit(block.rows);
  ing.row_spike = unit(block.rows);
  ing.col_profile = unit(block.cols);
  ing.rank1_a = unit(block.rows);
  ing.rank1_b = unit(block.cols);

  // Proof-style alignment: point the spike profile into the null space of
  // the clean subspace's block restriction, so the contaminated matrix
  // grows a strong direction orthogonal to the clean statistic.
  if (left_side && block.rows > rank)
    ing.const_profile = restricted_null_vector(clean_basis, ing.rows);
  if (!left_side && block.cols > rank)
    ing.col_profile = restricted_null_vector(clean_basis, ing.cols);
  return ing;
}

constexpr int kProbePatterns = 3;

Matrix apply_pattern(const Matrix& X, const AttackIngredients& ing,
                     int pattern, double magnitude) {
  Matrix Z = X;
  const Index k = static_cast<Index>(ing.rows.size());
  const Index l = static_cast<Index>(ing.cols.size());
  for (Index bi = 0; bi < k; ++bi) {
    for (Index bj = 0; bj < l; ++bj) {
      double value = 0.0;
      switch (pattern) {
        case 0: value = magnitude * ing.const_profile[bi]; break;
        case 1: value = magnitude * ing.row_spike[bi] * ing.col_profile[bj]; break;
        case 2: value = magnitude * ing.rank1_a[bi] * ing.rank1_b[bj]; break;
        default: throw ParameterError("probe pattern index out of range");
      }
      Z(ing.rows[static_cast<std::size_t>(bi)],
        ing.cols[static_cast<std::size_t>(bj)]) = value;
    }
  }
  return Z;
}

void validate_probe(const Matrix& X, BlockSize block,
                    const ProbeOptions& opts) {
  if (opts.rank < 1 || opts.rank > std::min(X.rows(), X.cols()))
    throw ParameterError("breakdown_probe: rank out of range");
  if (block.rows < 1 || block.rows > X.rows() || block.cols < 1 ||
      block.cols > X.cols())
    throw ParameterError("breakdown_probe: block exceeds matrix dimensions");
  if (opts.trials < 1)
    throw ParameterError("breakdown_probe: trials must be >= 1");
  if (opts.magnitudes.empty())
    throw ParameterError("breakdown_probe: need at least one magnitude");
  for (const double m : opts.magnitudes)
    if (!(m > 0) || !std::isfinite(m))
      throw ParameterError("breakdown_probe: magnitudes must be positive");
  if (!(opts.angle_threshold_deg > 0) || opts.angle_threshold_deg > 90)
    throw ParameterError("breakdown_probe: threshold must be in (0, 90]");
}

}  // namespace

ProbeReport breakdown_probe(const Matrix& X, StatKind stat, BlockSize block,
                            const ProbeOptions& opts) {
  validate_probe(X, block, opts);
  const Matrix clean = stat_basis(X, stat, opts);
  const Subspace clean_sub(clean);
  const bool left = is_left_stat(stat);

  ProbeReport report;
  report.stat = stat_name(stat);
  report.block = block;
  report.trials = opts.trials;
  report.threshold_deg = opts.angle_threshold_deg;
  report.max_angle_deg = -1.0;

  for (int trial = 0; trial < opts.trials; ++trial) {
    const AttackIngredients ing =
        draw_attack(X, clean, left, block, opts.seed, trial, opts.rank);
    for (int pattern = 0; pattern < kProbePatterns; ++pattern) {
      for (const double magnitude : opts.magnitudes) {
        const Matrix Z = apply_pattern(X, ing, pattern, magnitude);
        const double angle =
            degrees(principal_angle(clean_sub, Subspace(stat_basis(Z, stat, opts))));
        if (angle > report.max_angle_deg) {
          report.max_angle_deg = angle;
          report.magnitude_at_max = magnitude;
          report.trial_at_max = trial;
          report.pattern_at_max = pattern;
        }
      }
    }
  }
  report.broke_down = report.max_angle_deg >= opts.angle_threshold_deg;
  return report;
}

Matrix probe_attack(const Matrix& X, StatKind stat, BlockSize block,
                    const ProbeOptions& opts, int trial, int pattern,
                    double magnitude) {
  validate_probe(X, block, opts);
  if (trial < 0 || trial >= opts.trials)
    throw ParameterError("probe_attack: trial out of range");
  if (pattern < 0 || pattern >= kProbePatterns)
    throw ParameterError("probe_attack: pattern out of range");
  const Matrix clean = stat_basis(X, stat, opts);
  const AttackIngredients ing = draw_attack(X, clean, is_left_stat(stat),
                                            block, opts.seed, trial, opts.rank);
  return apply_pattern(X, ing, pattern, magnitude);
}

}  // namespace spsvd
