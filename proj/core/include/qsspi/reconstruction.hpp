#pragma once

#include <span>
#include <vector>

#include "qsspi/acquisition.hpp"
#include "qsspi/grid.hpp"
#include "qsspi/patterns.hpp"

namespace qsspi {

// Mean-subtracted pattern correlation over all shots:
//   G(i,j) = <P(i,j) I> - <P(i,j)> <I>,
// with <.> the mean over the shot sequence. No clipping or normalization is
// applied here. The per-shot intensities are whatever scalar totals the
// caller selects (coincidences, correct-only counts, singles, ...).
ImageGrid spi_reconstruct(std::span<const PatternMask> masks,
                          std::span<const double> intensities);

struct SplitImages {
  ImageGrid all;   // every coincidence
  ImageGrid cor;   // matched-polarization coincidences
  ImageGrid mask;  // erroneous (crossed within a basis) coincidences
};

// Reconstructs the three images from a tally sequence; all = cor + mask
// cell-wise. The mask sequence is regenerated from the shot count
// (2^(2n+1) shots for resolution exponent n).
SplitImages split_reconstructions(std::span<const CoincidenceTally> tallies);

// Cell-wise cor - 3 * mask; with clip_negatives, negative cells are then
// forced to 0.
ImageGrid trustworthy_image(const ImageGrid& cor, const ImageGrid& mask,
                            bool clip_negatives = true);

// Clips negatives to 0, divides by the maximum and scales to [0, 255],
// rounding half up. An all-zero (or all-negative) image maps to all zeros.
ByteGrid render_8bit(const ImageGrid& image);

// Pearson correlation over cells; 0 when either image is constant.
double normalized_cross_correlation(const ImageGrid& a, const ImageGrid& b);

// Sum over cells with negatives clipped to 0.
double image_sum_clipped(const ImageGrid& image);

ImageGrid image_difference(const ImageGrid& a, const ImageGrid& b);

}  // namespace qsspi
