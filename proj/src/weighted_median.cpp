#include "spsvd/weighted_median.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>

#include "spsvd/errors.hpp"
#include "spsvd/summation.hpp"

namespace spsvd {
namespace {

double validated_total(const WeightedSample& s, bool require_positive) {
  if (s.values.size() != s.weights.size())
    throw ParameterError("weighted sample: values/weights length mismatch");
  if (s.values.empty()) throw ParameterError("weighted sample: empty");
  KahanSum total;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (!std::isfinite(s.values[i]))
      throw DegenerateInputError("weighted sample: non-finite value");
    if (!std::isfinite(s.weights[i]) || s.weights[i] < 0)
      throw ParameterError("weighted sample: weights must be finite and >= 0");
    total.add(s.weights[i]);
  }
  if (require_positive && !(total.value() > 0))
    throw DegenerateInputError("weighted sample: all weights zero");
  return total.value();
}

double median3(double a, double b, double c) {
  if (a > b) std::swap(a, b);
  if (b > c) b = c;
  return std::max(a, b);
}

// Median of medians over groups of five; reorders the scratch buffer.
// Guarantees a 30/70 split, keeping the selection linear in the worst case.
double mom_pivot(double* v, std::size_t n) {
  while (n > 5) {
    std::size_t out = 0;
    for (std::size_t g = 0; g < n; g += 5) {
      const std::size_t len = std::min<std::size_t>(5, n - g);
      std::sort(v + g, v + g + len);
      v[out++] = v[g + (len - 1) / 2];
    }
    n = out;
  }
  std::sort(v, v + n);
  return v[(n - 1) / 2];
}

double select_lower_median(std::vector<double>& vals, std::vector<double>& wts,
                           double target) {
  std::size_t lo = 0;
  std::size_t hi = vals.size();
  KahanSum below;  // weight mass strictly left of the current window
  int depth = 2 * static_cast<int>(std::bit_width(vals.size())) + 8;
  std::vector<double> scratch;

  for (;;) {
    const std::size_t len = hi - lo;
    if (len <= 48) {
      // Insertion sort on the window, weights in tandem.
      for (std::size_t i = lo + 1; i < hi; ++i) {
        const double v = vals[i];
        const double w = wts[i];
        std::size_t j = i;
        while (j > lo && vals[j - 1] > v) {
          vals[j] = vals[j - 1];
          wts[j] = wts[j - 1];
          --j;
        }
        vals[j] = v;
        wts[j] = w;
      }
      KahanSum cum;
      for (std::size_t i = lo; i < hi; ++i) {
        cum.add(wts[i]);
        if (below.value() + cum.value() >= target) return vals[i];
      }
      return vals[hi - 1];  // target exceeded total only by rounding
    }

    double pivot;
    if (depth-- > 0) {
      pivot = median3(vals[lo], vals[lo + len / 2], vals[hi - 1]);
    } else {
      scratch.assign(vals.begin() + static_cast<std::ptrdiff_t>(lo),
                     vals.begin() + static_cast<std::ptrdiff_t>(hi));
      pivot = mom_pivot(scratch.data(), len);
    }

    // Three-way partition into < pivot | == pivot | > pivot.
    std::size_t a = lo;
    std::size_t i = lo;
    std::size_t b = hi;
    while (i < b) {
      if (vals[i] < pivot) {
        std::swap(vals[a], vals[i]);
        std::swap(wts[a], wts[i]);
        ++a;
        ++i;
      } else if (vals[i] > pivot) {
        --b;
        std::swap(vals[i], vals[b]);
        std::swap(wts[i], wts[b]);
      } else {
        ++i;
      }
    }
    KahanSum wlt;
    for (std::size_t k = lo; k < a; ++k) wlt.add(wts[k]);
    KahanSum weq;
    for (std::size_t k = a; k < b; ++k) weq.add(wts[k]);

    if (below.value() + wlt.value() >= target) {
      hi = a;
    } else if (below.value() + wlt.value() + weq.value() >= target) {
      return pivot;
    } else {
      below.add(wlt.value());
      below.add(weq.value());
      lo = b;
    }
  }
}

}  // namespace

double weighted_median(const WeightedSample& s) {
  const double total = validated_total(s, /*require_positive=*/true);
  std::vector<double> vals = s.values;
  std::vector<double> wts = s.weights;
  return select_lower_median(vals, wts, total / 2.0);
}

double weighted_median_by_sort(const WeightedSample& s) {
  const double total = validated_total(s, /*require_positive=*/true);
  std::vector<std::size_t> order(s.values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return s.values[a] < s.values[b];
  });
  const double target = total / 2.0;
  KahanSum cum;
  for (const std::size_t idx : order) {
    cum.add(s.weights[idx]);
    if (cum.value() >= target) return s.values[idx];
  }
  return s.values[order.back()];
}

double weighted_l1_objective(const WeightedSample& s, double d) {
  validated_total(s, /*require_positive=*/false);
  KahanSum acc;
  for (std::size_t i = 0; i < s.values.size(); ++i)
    acc.add(s.weights[i] * std::abs(s.values[i] - d));
  return acc.value();
}

}  // namespace spsvd
