#pragma once

#include <vector>

#include "spsvd/types.hpp"

namespace spsvd {

// A weighted scalar sample; values and weights are parallel arrays,
// weights nonnegative with positive total.
struct WeightedSample {
  std::vector<double> values;
  std::vector<double> weights;
};

// Lower weighted median: the smallest value x_k whose cumulative weight
// (over values <= x_k) reaches half the total. It minimizes
// f(d) = sum_i w_i |x_i - d|, and when the minimizer is an interval the
// left endpoint is returned. Selection runs in O(m): partition-based with a
// deterministic median-of-medians pivot once the introselect depth budget
// is spent. Throws DegenerateInputError when all weights are zero.
double weighted_median(const WeightedSample& s);

// Sort-and-scan reference (O(m log m)); same contract, kept as an
// independent path for differential testing.
double weighted_median_by_sort(const WeightedSample& s);

// f(d) above, with compensated summation.
double weighted_l1_objective(const WeightedSample& s, double d);

}  // namespace spsvd
