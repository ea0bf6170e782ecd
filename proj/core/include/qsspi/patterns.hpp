#pragma once

#include <cstdint>
#include <vector>

#include "qsspi/grid.hpp"

namespace qsspi {

// Size caps keep a mistyped exponent from requesting a multi-gigabyte matrix.
inline constexpr int kMaxHadamardExponent = 12;   // largest order 4096
inline constexpr int kMaxResolutionExponent = 6;  // largest image 64x64

// Sylvester-ordered Hadamard matrix of order 2^m, entries in {+1, -1}.
// Rows are pairwise orthogonal with self-product equal to the order.
struct HadamardMatrix {
  int order = 0;
  Grid<std::int8_t> entries;
};

enum class MaskPolarity : std::uint8_t { positive, inverse };

// One DMD shot. The positive mask of pattern k is Hadamard row k reshaped
// row-major with +1 -> 1 and -1 -> 0; the paired inverse mask is its
// cell-wise complement, so the two sum to the all-ones grid.
struct PatternMask {
  int side = 0;
  ByteGrid cells;
  int shot_index = 0;
  MaskPolarity polarity = MaskPolarity::positive;
};

HadamardMatrix hadamard_matrix(int exponent);

// Display sequence for a 2^n x 2^n image: exactly 2^(2n+1) masks, alternating
// positive/inverse per Hadamard row, in natural (Sylvester) row order.
std::vector<PatternMask> pattern_sequence(int resolution_exponent);

// Signed two-shot coefficient: positive-shot count minus inverse-shot count.
inline double differential_intensity(double positive_value, double inverse_value) {
  return positive_value - inverse_value;
}

}  // namespace qsspi
