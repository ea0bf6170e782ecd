#include "qsspi/scene.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "qsspi/image_io.hpp"

namespace qsspi {
namespace {

constexpr int kGlyphBase = 16;

using GlyphBitmap = std::array<std::string_view, kGlyphBase>;

// 16x16 base bitmaps. F and the mirrored L follow a seven-segment layout so
// that the two tile into the digit 8 with no overlapping pixel.
constexpr GlyphBitmap kGlyphA = {
    "................",
    ".....######.....",
    "....########....",
    "...###....###...",
    "...###....###...",
    "...###....###...",
    "...###....###...",
    "...##########...",
    "...##########...",
    "...###....###...",
    "...###....###...",
    "...###....###...",
    "...###....###...",
    "...###....###...",
    "................",
    "................",
};

constexpr GlyphBitmap kGlyphD = {
    "................",
    "..########......",
    "..##########....",
    "..###....####...",
    "..###......###..",
    "..###......###..",
    "..###......###..",
    "..###......###..",
    "..###......###..",
    "..###......###..",
    "..###......###..",
    "..###......###..",
    "..###....####...",
    "..##########....",
    "..########......",
    "................",
};

constexpr GlyphBitmap kGlyphF = {
    "................",
    "...##########...",
    "...##########...",
    "...##...........",
    "...##...........",
    "...##...........",
    "...##...........",
    "...########.....",
    "...########.....",
    "...##...........",
    "...##...........",
    "...##...........",
    "...##...........",
    "................",
    "................",
    "................",
};

constexpr GlyphBitmap kGlyphMirroredL = {
    "................",
    "................",
    "................",
    "...........##...",
    "...........##...",
    "...........##...",
    "...........##...",
    "...........##...",
    "...........##...",
    "...........##...",
    "...........##...",
    "...........##...",
    "...........##...",
    "...##########...",
    "...##########...",
    "................",
};

bool is_power_of_two(int value) { return value > 0 && (value & (value - 1)) == 0; }

SceneProfile uniform_scene(int side, double chi_value) {
  SceneProfile profile{side, ImageGrid(side, chi_value), ImageGrid(side, 1.0)};
  return profile;
}

SceneProfile bitmap_scene(const GlyphBitmap& bitmap, int side) {
  if (side < kGlyphBase) {
    throw std::invalid_argument("builtin_glyph: letter glyphs need side >= " +
                                std::to_string(kGlyphBase));
  }
  const int scale = side / kGlyphBase;
  SceneProfile profile{side, ImageGrid(side, 0.0), ImageGrid(side, 1.0)};
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      if (bitmap[static_cast<std::size_t>(r / scale)][static_cast<std::size_t>(c / scale)] == '#') {
        profile.chi(r, c) = 1.0;
      }
    }
  }
  return profile;
}

}  // namespace

Glyph glyph_from_name(std::string_view name) {
  if (name == "A") return Glyph::A;
  if (name == "D") return Glyph::D;
  if (name == "F") return Glyph::F;
  if (name == "mirrored-L") return Glyph::MirroredL;
  if (name == "blank") return Glyph::Blank;
  if (name == "full") return Glyph::Full;
  throw std::invalid_argument("unknown glyph id: " + std::string(name));
}

std::string_view glyph_name(Glyph glyph) {
  switch (glyph) {
    case Glyph::A: return "A";
    case Glyph::D: return "D";
    case Glyph::F: return "F";
    case Glyph::MirroredL: return "mirrored-L";
    case Glyph::Blank: return "blank";
    case Glyph::Full: return "full";
  }
  return "?";
}

SceneProfile builtin_glyph(Glyph glyph, int side) {
  if (!is_power_of_two(side)) {
    throw std::invalid_argument("builtin_glyph: side must be a power of two");
  }
  switch (glyph) {
    case Glyph::Blank: return uniform_scene(side, 0.0);
    case Glyph::Full: return uniform_scene(side, 1.0);
    case Glyph::A: return bitmap_scene(kGlyphA, side);
    case Glyph::D: return bitmap_scene(kGlyphD, side);
    case Glyph::F: return bitmap_scene(kGlyphF, side);
    case Glyph::MirroredL: return bitmap_scene(kGlyphMirroredL, side);
  }
  throw std::invalid_argument("builtin_glyph: unknown glyph");
}

ImageGrid effective_map(const SceneProfile& profile) {
  validate_scene(profile);
  ImageGrid map(profile.side);
  for (std::size_t i = 0; i < map.size(); ++i) {
    map[i] = profile.eta[i] * profile.chi[i];
  }
  return map;
}

double scene_sum(const SceneProfile& profile) {
  validate_scene(profile);
  double sum = 0.0;
  for (std::size_t i = 0; i < profile.chi.size(); ++i) {
    sum += profile.eta[i] * profile.chi[i];
  }
  return sum;
}

SceneProfile scene_from_pgm(const std::string& path) {
  const ByteGrid image = read_pgm(path);
  if (!is_power_of_two(image.side())) {
    throw std::invalid_argument("scene_from_pgm: side of " + path +
                                " is not a power of two");
  }
  SceneProfile profile{image.side(), ImageGrid(image.side()), ImageGrid(image.side(), 1.0)};
  for (std::size_t i = 0; i < image.size(); ++i) {
    profile.chi[i] = static_cast<double>(image[i]) / 255.0;
  }
  return profile;
}

void validate_scene(const SceneProfile& profile) {
  if (profile.side <= 0 || profile.chi.side() != profile.side ||
      profile.eta.side() != profile.side) {
    throw std::invalid_argument("scene: chi and eta must share the declared side");
  }
  for (std::size_t i = 0; i < profile.chi.size(); ++i) {
    if (!(profile.chi[i] >= 0.0 && profile.chi[i] <= 1.0) ||
        !(profile.eta[i] >= 0.0 && profile.eta[i] <= 1.0)) {
      throw std::invalid_argument("scene: chi and eta cells must stay within [0, 1]");
    }
  }
}

}  // namespace qsspi
