#include <cstdio>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>

#include <doctest.h>

#include "qsspi/image_io.hpp"
#include "qsspi/scene.hpp"

using namespace qsspi;

namespace {

SceneProfile random_scene(int side, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  SceneProfile scene{side, ImageGrid(side), ImageGrid(side)};
  for (std::size_t i = 0; i < scene.chi.size(); ++i) {
    scene.chi[i] = uniform(rng);
    scene.eta[i] = uniform(rng);
  }
  return scene;
}

ByteGrid glyph_bytes(Glyph glyph, int side) {
  const SceneProfile scene = builtin_glyph(glyph, side);
  ByteGrid bytes(side);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = scene.chi[i] > 0.5 ? 255 : 0;
  }
  return bytes;
}

std::string fixture_path(const char* name) {
  return std::string(QSSPI_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_SUITE("scene") {

TEST_CASE("blank and full targets") {
  const SceneProfile blank = builtin_glyph(Glyph::Blank, 32);
  CHECK(scene_sum(blank) == 0.0);
  for (double chi : blank.chi) REQUIRE(chi == 0.0);

  const SceneProfile full = builtin_glyph(Glyph::Full, 32);
  CHECK(scene_sum(full) == 1024.0);  // side^2 with unit efficiency
  for (double chi : full.chi) REQUIRE(chi == 1.0);
}

TEST_CASE("letter glyphs are binary, non-empty and carry unit efficiency") {
  for (Glyph glyph : {Glyph::A, Glyph::D, Glyph::F, Glyph::MirroredL}) {
    const SceneProfile scene = builtin_glyph(glyph, 32);
    double sum = 0.0;
    for (std::size_t i = 0; i < scene.chi.size(); ++i) {
      REQUIRE((scene.chi[i] == 0.0 || scene.chi[i] == 1.0));
      REQUIRE(scene.eta[i] == 1.0);
      sum += scene.chi[i];
    }
    CHECK(sum > 0.0);
    CHECK(sum == scene_sum(scene));
  }
}

TEST_CASE("glyph renders match the committed fixtures bit-exactly") {
  CHECK(glyph_bytes(Glyph::A, 32) == read_pgm(fixture_path("glyph_a_32.pgm")));
  CHECK(glyph_bytes(Glyph::D, 32) == read_pgm(fixture_path("glyph_d_32.pgm")));
  CHECK(glyph_bytes(Glyph::F, 32) == read_pgm(fixture_path("glyph_f_32.pgm")));
  CHECK(glyph_bytes(Glyph::MirroredL, 32) ==
        read_pgm(fixture_path("glyph_mirrored_l_32.pgm")));
}

TEST_CASE("F and mirrored-L tile into a digit 8 without overlap") {
  const SceneProfile f = builtin_glyph(Glyph::F, 32);
  const SceneProfile l = builtin_glyph(Glyph::MirroredL, 32);
  for (std::size_t i = 0; i < f.chi.size(); ++i) {
    REQUIRE(f.chi[i] * l.chi[i] == 0.0);
  }
}

TEST_CASE("A and D glyphs overlap") {
  const SceneProfile a = builtin_glyph(Glyph::A, 32);
  const SceneProfile d = builtin_glyph(Glyph::D, 32);
  double overlap = 0.0;
  for (std::size_t i = 0; i < a.chi.size(); ++i) {
    overlap += a.chi[i] * d.chi[i];
  }
  CHECK(overlap > 0.0);
}

TEST_CASE("unknown glyph ids and bad sides are rejected") {
  CHECK_THROWS_AS(glyph_from_name("Q"), std::invalid_argument);
  CHECK_THROWS_AS(builtin_glyph(Glyph::A, 24), std::invalid_argument);
  CHECK_THROWS_AS(builtin_glyph(Glyph::A, 8), std::invalid_argument);
  CHECK_NOTHROW(builtin_glyph(Glyph::Blank, 8));
}

TEST_CASE("glyph name round trip") {
  for (Glyph glyph : {Glyph::A, Glyph::D, Glyph::F, Glyph::MirroredL, Glyph::Blank,
                      Glyph::Full}) {
    CHECK(glyph_from_name(glyph_name(glyph)) == glyph);
  }
}

TEST_CASE("effective map: identity and scaling cases") {
  const SceneProfile glyph = builtin_glyph(Glyph::A, 32);
  const ImageGrid map = effective_map(glyph);
  for (std::size_t i = 0; i < map.size(); ++i) {
    REQUIRE(map[i] == glyph.chi[i]);  // eta = 1 everywhere
  }

  SceneProfile scaled = builtin_glyph(Glyph::Full, 32);
  for (double& eta : scaled.eta) eta = 0.5;
  const ImageGrid half = effective_map(scaled);
  for (double value : half) REQUIRE(value == 0.5);
}

TEST_CASE("effective map and scene sum match a brute-force loop oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const SceneProfile scene = random_scene(16, rng);
    const ImageGrid map = effective_map(scene);
    double expected_sum = 0.0;
    for (int r = 0; r < scene.side; ++r) {
      for (int c = 0; c < scene.side; ++c) {
        const double product = scene.eta(r, c) * scene.chi(r, c);
        REQUIRE(map(r, c) == product);
        REQUIRE(product >= 0.0);
        REQUIRE(product <= 1.0);
        expected_sum += product;
      }
    }
    CHECK(scene_sum(scene) == doctest::Approx(expected_sum).epsilon(1e-12));
  }
}

TEST_CASE("effective map is commutative in its two grids") {
  std::mt19937_64 rng(11);
  const SceneProfile scene = random_scene(16, rng);
  SceneProfile swapped{scene.side, scene.eta, scene.chi};
  CHECK(effective_map(scene) == effective_map(swapped));
}

TEST_CASE("scene sum is monotone under cell-wise increase") {
  std::mt19937_64 rng(13);
  SceneProfile scene = random_scene(16, rng);
  for (double& chi : scene.chi) chi *= 0.5;
  const double before = scene_sum(scene);
  SceneProfile raised = scene;
  raised.chi(3, 4) = std::min(1.0, raised.chi(3, 4) + 0.25);
  CHECK(scene_sum(raised) >= before);
  SceneProfile raised_eta = scene;
  raised_eta.eta(5, 6) = 1.0;
  CHECK(scene_sum(raised_eta) >= before);
}

TEST_CASE("PGM targets rescale to [0,1] reflectivity") {
  const auto path = std::filesystem::temp_directory_path() / "qsspi_scene_target.pgm";
  ByteGrid image(16, 0);
  image(0, 0) = 255;
  image(1, 2) = 51;
  write_pgm(path.string(), image);

  const SceneProfile scene = scene_from_pgm(path.string());
  CHECK(scene.side == 16);
  CHECK(scene.chi(0, 0) == 1.0);
  CHECK(scene.chi(1, 2) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(scene.chi(5, 5) == 0.0);
  for (double eta : scene.eta) REQUIRE(eta == 1.0);
  std::filesystem::remove(path);
}

TEST_CASE("scene validation rejects out-of-range cells") {
  SceneProfile scene = builtin_glyph(Glyph::Full, 16);
  scene.chi(0, 0) = 1.5;
  CHECK_THROWS_AS(validate_scene(scene), std::invalid_argument);
  scene.chi(0, 0) = -0.1;
  CHECK_THROWS_AS(validate_scene(scene), std::invalid_argument);
}

}  // TEST_SUITE
