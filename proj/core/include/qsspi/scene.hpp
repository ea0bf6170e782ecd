#pragma once

#include <string>
#include <string_view>

#include "qsspi/grid.hpp"

namespace qsspi {

// Per-pixel target reflectivity (chi) and channel efficiency (eta), both
// constrained to [0, 1] and sharing the same side.
struct SceneProfile {
  int side = 0;
  ImageGrid chi;
  ImageGrid eta;
};

enum class Glyph { A, D, F, MirroredL, Blank, Full };

// Accepts the ids used by the CLI: A, D, F, mirrored-L, blank, full.
Glyph glyph_from_name(std::string_view name);
std::string_view glyph_name(Glyph glyph);

// Renders one of the built-in binary targets. Letter glyphs are drawn from
// fixed 16x16 bitmaps and nearest-neighbour upscaled, so side must be a power
// of two >= 16 for them (blank/full accept any power of two). eta defaults to
// 1 everywhere.
SceneProfile builtin_glyph(Glyph glyph, int side);

// Cell-wise eta * chi.
ImageGrid effective_map(const SceneProfile& profile);

// Sum of the effective map; the scene total S used by the threshold formulas.
double scene_sum(const SceneProfile& profile);

// Loads a user target from a binary PGM (P5, maxval 255, square power-of-two
// side). Grey values rescale to chi in [0, 1]; eta is set to 1.
SceneProfile scene_from_pgm(const std::string& path);

// Throws std::invalid_argument on dimension or range violations.
void validate_scene(const SceneProfile& profile);

}  // namespace qsspi
