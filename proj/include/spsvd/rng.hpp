#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "spsvd/errors.hpp"
#include "spsvd/types.hpp"

namespace spsvd {

// Philox-4x32-10 counter-based generator (constants from the Random123
// design). Streams are split by construction, never by jumping: the 128-bit
// counter holds (block index) in its low half and (stream id) in its high
// half, and the key carries the user seed. Two generators with the same seed
// and different stream ids therefore produce independent, reproducible
// sequences; see simulate.hpp for the stream-id conventions used by the
// experiment code.
class Philox {
 public:
  using result_type = std::uint64_t;

  struct Block {
    std::uint32_t x[4];
  };

  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0)
      : key0_(static_cast<std::uint32_t>(seed)),
        key1_(static_cast<std::uint32_t>(seed >> 32)),
        stream_(stream) {}

  // One keyed 10-round permutation of a 128-bit counter. Public so the
  // published test vectors for this generator can be checked directly.
  static Block permute(std::uint32_t c0, std::uint32_t c1, std::uint32_t c2,
                       std::uint32_t c3, std::uint32_t k0, std::uint32_t k1) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * c0;
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * c2;
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      c0 = hi1 ^ c1 ^ k0;
      c1 = lo1;
      c2 = hi0 ^ c3 ^ k1;
      c3 = lo0;
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    return Block{{c0, c1, c2, c3}};
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    if (have_ == 0) refill();
    return buf_[--have_];
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller on the generator's own uniforms.
  // std::normal_distribution is implementation-defined, which would make
  // seeded experiments non-portable.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]: keeps log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  // Uniform integer in [0, n) without modulo bias (masked rejection).
  std::uint64_t uniform_index(std::uint64_t n) {
    if (n == 0) throw ParameterError("uniform_index: n must be positive");
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      const std::uint64_t x = (*this)() & mask;
      if (x < n) return x;
    }
  }

 private:
  void refill() {
    const Block b = permute(static_cast<std::uint32_t>(block_),
                            static_cast<std::uint32_t>(block_ >> 32),
                            static_cast<std::uint32_t>(stream_),
                            static_cast<std::uint32_t>(stream_ >> 32),
                            key0_, key1_);
    ++block_;
    buf_[0] = (std::uint64_t{b.x[1]} << 32) | b.x[0];
    buf_[1] = (std::uint64_t{b.x[3]} << 32) | b.x[2];
    have_ = 2;
  }

  std::uint32_t key0_;
  std::uint32_t key1_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::uint64_t buf_[2] = {0, 0};
  int have_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

inline Matrix gaussian_matrix(Philox& rng, Index rows, Index cols) {
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = rng.normal();
  return g;
}

inline Vector gaussian_vector(Philox& rng, Index n) {
  Vector g(n);
  for (Index i = 0; i < n; ++i) g[i] = rng.normal();
  return g;
}

// k distinct indices drawn uniformly from [0, n), returned sorted.
inline std::vector<Index> sample_without_replacement(Philox& rng, Index n,
                                                     Index k) {
  if (k < 0 || k > n)
    throw ParameterError("sample_without_replacement: need 0 <= k <= n");
  std::vector<Index> pool(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (Index i = 0; i < k; ++i) {
    const auto j = static_cast<Index>(
        rng.uniform_index(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)],
              pool[static_cast<std::size_t>(i + j)]);
  }
  std::vector<Index> out(pool.begin(), pool.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace spsvd
