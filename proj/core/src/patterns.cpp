#include "qsspi/patterns.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace qsspi {

HadamardMatrix hadamard_matrix(int exponent) {
  if (exponent < 0) {
    throw std::invalid_argument("hadamard_matrix: exponent must be non-negative");
  }
  if (exponent > kMaxHadamardExponent) {
    throw std::invalid_argument("hadamard_matrix: exponent " + std::to_string(exponent) +
                                " exceeds the size cap of " +
                                std::to_string(kMaxHadamardExponent));
  }
  const int order = 1 << exponent;
  Grid<std::int8_t> h(order, 1);
  // Sylvester doubling: H_{2k} = [[H_k, H_k], [H_k, -H_k]].
  for (int block = 1; block < order; block *= 2) {
    for (int r = 0; r < block; ++r) {
      for (int c = 0; c < block; ++c) {
        const std::int8_t v = h(r, c);
        h(r, c + block) = v;
        h(r + block, c) = v;
        h(r + block, c + block) = static_cast<std::int8_t>(-v);
      }
    }
  }
  return HadamardMatrix{order, std::move(h)};
}

std::vector<PatternMask> pattern_sequence(int resolution_exponent) {
  if (resolution_exponent < 1) {
    throw std::invalid_argument("pattern_sequence: resolution exponent must be >= 1");
  }
  if (resolution_exponent > kMaxResolutionExponent) {
    throw std::invalid_argument("pattern_sequence: resolution exponent " +
                                std::to_string(resolution_exponent) +
                                " exceeds the size cap of " +
                                std::to_string(kMaxResolutionExponent));
  }
  const int side = 1 << resolution_exponent;
  const HadamardMatrix h = hadamard_matrix(2 * resolution_exponent);
  const int pattern_count = h.order;

  std::vector<PatternMask> sequence;
  sequence.reserve(static_cast<std::size_t>(2 * pattern_count));
  for (int row = 0; row < pattern_count; ++row) {
    PatternMask positive{side, ByteGrid(side), 2 * row, MaskPolarity::positive};
    PatternMask inverse{side, ByteGrid(side), 2 * row + 1, MaskPolarity::inverse};
    for (int c = 0; c < pattern_count; ++c) {
      const bool on = h.entries(row, c) > 0;
      positive.cells[static_cast<std::size_t>(c)] = on ? 1 : 0;
      inverse.cells[static_cast<std::size_t>(c)] = on ? 0 : 1;
    }
    sequence.push_back(std::move(positive));
    sequence.push_back(std::move(inverse));
  }
  return sequence;
}

}  // namespace qsspi
