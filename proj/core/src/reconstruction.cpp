#include "qsspi/reconstruction.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qsspi/numeric.hpp"

namespace qsspi {
namespace {

int resolution_from_shot_count(std::size_t shots) {
  for (int n = 1; n <= kMaxResolutionExponent; ++n) {
    if (shots == (static_cast<std::size_t>(1) << (2 * n + 1))) {
      return n;
    }
  }
  throw std::invalid_argument("split_reconstructions: " + std::to_string(shots) +
                              " shots is not a full 2^(2n+1) sequence");
}

}  // namespace

ImageGrid spi_reconstruct(std::span<const PatternMask> masks,
                          std::span<const double> intensities) {
  if (masks.size() != intensities.size()) {
    throw std::invalid_argument("spi_reconstruct: mask and intensity counts differ");
  }
  if (masks.empty()) {
    throw std::invalid_argument("spi_reconstruct: empty shot sequence");
  }
  const int side = masks.front().side;
  const std::size_t cells = static_cast<std::size_t>(side) * static_cast<std::size_t>(side);

  std::vector<KahanSum> pattern_intensity(cells);  // sum of P(i,j) * I
  std::vector<KahanSum> pattern_mean(cells);       // sum of P(i,j)
  KahanSum intensity_sum;

  for (std::size_t k = 0; k < masks.size(); ++k) {
    const PatternMask& mask = masks[k];
    if (mask.side != side) {
      throw std::invalid_argument("spi_reconstruct: inconsistent mask sides");
    }
    const double intensity = intensities[k];
    intensity_sum.add(intensity);
    for (std::size_t i = 0; i < cells; ++i) {
      if (mask.cells[i]) {
        pattern_intensity[i].add(intensity);
        pattern_mean[i].add(1.0);
      }
    }
  }

  const double inv_shots = 1.0 / static_cast<double>(masks.size());
  const double mean_intensity = intensity_sum.value() * inv_shots;
  ImageGrid image(side);
  for (std::size_t i = 0; i < cells; ++i) {
    image[i] = pattern_intensity[i].value() * inv_shots -
               pattern_mean[i].value() * inv_shots * mean_intensity;
  }
  return image;
}

SplitImages split_reconstructions(std::span<const CoincidenceTally> tallies) {
  if (tallies.empty()) {
    throw std::invalid_argument("split_reconstructions: empty tally sequence");
  }
  const int n = resolution_from_shot_count(tallies.size());
  const std::vector<PatternMask> masks = pattern_sequence(n);

  std::vector<double> all, cor, mask;
  all.reserve(tallies.size());
  cor.reserve(tallies.size());
  mask.reserve(tallies.size());
  for (const CoincidenceTally& tally : tallies) {
    all.push_back(total_coincidences(tally));
    cor.push_back(correct_coincidences(tally));
    mask.push_back(erroneous_coincidences(tally));
  }
  return SplitImages{spi_reconstruct(masks, all), spi_reconstruct(masks, cor),
                     spi_reconstruct(masks, mask)};
}

ImageGrid trustworthy_image(const ImageGrid& cor, const ImageGrid& mask,
                            bool clip_negatives) {
  if (cor.side() != mask.side()) {
    throw std::invalid_argument("trustworthy_image: image sides differ");
  }
  ImageGrid result(cor.side());
  for (std::size_t i = 0; i < result.size(); ++i) {
    const double value = cor[i] - 3.0 * mask[i];
    result[i] = (clip_negatives && value < 0.0) ? 0.0 : value;
  }
  return result;
}

ByteGrid render_8bit(const ImageGrid& image) {
  if (image.empty()) {
    throw std::invalid_argument("render_8bit: empty image");
  }
  double max_value = 0.0;
  for (double cell : image) {
    if (cell > max_value) {
      max_value = cell;
    }
  }
  ByteGrid bytes(image.side(), 0);
  if (max_value <= 0.0) {
    return bytes;  // nothing above zero: all-dark frame
  }
  for (std::size_t i = 0; i < image.size(); ++i) {
    const double clipped = image[i] < 0.0 ? 0.0 : image[i];
    const double scaled = clipped / max_value * 255.0;
    bytes[i] = static_cast<std::uint8_t>(std::floor(scaled + 0.5));  // round half up
  }
  return bytes;
}

double normalized_cross_correlation(const ImageGrid& a, const ImageGrid& b) {
  if (a.side() != b.side() || a.empty()) {
    throw std::invalid_argument("normalized_cross_correlation: incompatible images");
  }
  const double count = static_cast<double>(a.size());
  KahanSum sum_a, sum_b;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum_a.add(a[i]);
    sum_b.add(b[i]);
  }
  const double mean_a = sum_a.value() / count;
  const double mean_b = sum_b.value() / count;
  KahanSum cov, var_a, var_b;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    cov.add(da * db);
    var_a.add(da * da);
    var_b.add(db * db);
  }
  if (var_a.value() <= 0.0 || var_b.value() <= 0.0) {
    return 0.0;
  }
  return cov.value() / std::sqrt(var_a.value() * var_b.value());
}

double image_sum_clipped(const ImageGrid& image) {
  KahanSum sum;
  for (double cell : image) {
    sum.add(cell > 0.0 ? cell : 0.0);
  }
  return sum.value();
}

ImageGrid image_difference(const ImageGrid& a, const ImageGrid& b) {
  if (a.side() != b.side()) {
    throw std::invalid_argument("image_difference: image sides differ");
  }
  ImageGrid result(a.side());
  for (std::size_t i = 0; i < result.size(); ++i) {
    result[i] = a[i] - b[i];
  }
  return result;
}

}  // namespace qsspi
