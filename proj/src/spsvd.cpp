#include "spsvd/spsvd.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "spsvd/errors.hpp"
#include "spsvd/normalize.hpp"
#include "spsvd/summation.hpp"
#include "spsvd/weighted_median.hpp"

namespace spsvd {

CandidateSets extract_candidates(const Matrix& X, Index R,
                                 const TruncatedSvdOptions& opts) {
  const auto right = truncated_svd(row_normalized(X), R, opts);
  const auto left = truncated_svd(col_normalized(X), R, opts);
  CandidateSets out;
  out.u.reserve(static_cast<std::size_t>(R));
  out.v.reserve(static_cast<std::size_t>(R));
  for (const auto& t : left.triples) out.u.push_back(t.u);
  for (const auto& t : right.triples) out.v.push_back(t.v);
  return out;
}

namespace {

struct PairScore {
  double objective;
  double d;
};

PairScore score_pair(const Matrix& X, const Vector& u, const Vector& v,
                     std::vector<double>& values, std::vector<double>& weights) {
  values.clear();
  weights.clear();
  KahanSum floor_mass;  // |x_ij| of entries excluded from the sample
  for (Index j = 0; j < X.cols(); ++j) {
    const double vj = v[j];
    for (Index i = 0; i < X.rows(); ++i) {
      const double w = u[i] * vj;
      const double aw = std::abs(w);
      if (aw < kPairWeightFloor) {
        floor_mass.add(std::abs(X(i, j)));
      } else {
        values.push_back(X(i, j) / w);
        weights.push_back(aw);
      }
    }
  }
  PairScore out;
  if (values.empty()) {
    out.d = 0.0;
    out.objective = floor_mass.value();
    return out;
  }
  WeightedSample s{std::move(values), std::move(weights)};
  out.d = weighted_median(s);
  values = std::move(s.values);
  weights = std::move(s.weights);

  KahanSum obj;
  for (Index j = 0; j < X.cols(); ++j) {
    const double vj = v[j];
    for (Index i = 0; i < X.rows(); ++i) {
      const double w = u[i] * vj;
      if (std::abs(w) < kPairWeightFloor)
        obj.add(std::abs(X(i, j)));
      else
        obj.add(std::abs(X(i, j) - out.d * w));
    }
  }
  out.objective = obj.value();
  return out;
}

}  // namespace

PairSelection select_pair(const Matrix& residual,
                          const std::vector<Vector>& u_cands,
                          const std::vector<Vector>& v_cands) {
  if (u_cands.empty() || v_cands.empty())
    throw ParameterError("select_pair: empty candidate set");
  for (const auto& u : u_cands)
    if (u.size() != residual.rows())
      throw ParameterError("select_pair: u candidate dimension mismatch");
  for (const auto& v : v_cands)
    if (v.size() != residual.cols())
      throw ParameterError("select_pair: v candidate dimension mismatch");

  std::vector<PairScore> scores(u_cands.size() * v_cands.size());
  std::vector<double> values;
  std::vector<double> weights;
  values.reserve(static_cast<std::size_t>(residual.size()));
  weights.reserve(static_cast<std::size_t>(residual.size()));
  for (std::size_t a = 0; a < u_cands.size(); ++a)
    for (std::size_t b = 0; b < v_cands.size(); ++b)
      scores[a * v_cands.size() + b] =
          score_pair(residual, u_cands[a], v_cands[b], values, weights);

  // Two-pass reduction: find the minimum, then the lexicographically first
  // pair within the tie tolerance of it. This gives the same winner no
  // matter how the scoring loop is scheduled.
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : scores) best = std::min(best, s.objective);
  for (std::size_t a = 0; a < u_cands.size(); ++a) {
    for (std::size_t b = 0; b < v_cands.size(); ++b) {
      const auto& s = scores[a * v_cands.size() + b];
      if (s.objective <= best + kPairTieTolerance)
        return PairSelection{s.d, a, b, s.objective};
    }
  }
  throw std::logic_error("select_pair: reduction failed");  // unreachable
}

SpsvdResult spsvd_decompose(const Matrix& X, Index R,
                            const TruncatedSvdOptions& opts) {
  CandidateSets cands = extract_candidates(X, R, opts);

  std::vector<std::size_t> avail_u(cands.u.size());
  std::vector<std::size_t> avail_v(cands.v.size());
  for (std::size_t i = 0; i < avail_u.size(); ++i) avail_u[i] = i;
  for (std::size_t i = 0; i < avail_v.size(); ++i) avail_v[i] = i;

  SpsvdResult res;
  Matrix residual = X;
  std::vector<Vector> us;
  std::vector<Vector> vs;
  for (Index r = 0; r < R; ++r) {
    us.clear();
    vs.clear();
    for (const auto a : avail_u) us.push_back(cands.u[a]);
    for (const auto b : avail_v) vs.push_back(cands.v[b]);
    const PairSelection sel = select_pair(residual, us, vs);
    const std::size_t orig_a = avail_u[sel.u_index];
    const std::size_t orig_b = avail_v[sel.v_index];

    SvdTriple t;
    t.v = cands.v[orig_b];
    if (sel.d < 0) {  // absorb the sign into u; d == 0 keeps the orientation
      t.d = -sel.d;
      t.u = -cands.u[orig_a];
    } else {
      t.d = sel.d;
      t.u = cands.u[orig_a];
    }
    residual.noalias() -= t.d * t.u * t.v.transpose();

    res.factorization.triples.push_back(std::move(t));
    res.pair_indices.emplace_back(orig_a, orig_b);
    res.objectives.push_back(sel.objective);
    avail_u.erase(avail_u.begin() + static_cast<std::ptrdiff_t>(sel.u_index));
    avail_v.erase(avail_v.begin() + static_cast<std::ptrdiff_t>(sel.v_index));
  }
  return res;
}

Matrix spsvd_low_rank(const Matrix& X, Index R,
                      const TruncatedSvdOptions& opts) {
  return spsvd_decompose(X, R, opts).factorization.reconstruction();
}

}  // namespace spsvd
