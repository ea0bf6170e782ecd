#pragma once

#include <cstdint>

namespace qsspi {

// Compensated accumulator. The reconstruction and threshold formulas compare
// long count sums at 1e-9 tolerances, which plain left-to-right summation
// does not reliably reach for 32x32 runs with large false-signal ratios.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }

  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Derives an independent RNG substream seed, so shots (and repetitions) can
// be sampled in any order with identical output.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t h = splitmix64(seed ^ 0xA0761D6478BD642Full);
  h = splitmix64(h ^ (a + 0x8BB84B93962EACC9ull));
  h = splitmix64(h ^ (b + 0x2D358DCCAA6C78A5ull));
  return h;
}

}  // namespace qsspi
