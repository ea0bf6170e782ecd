#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qsspi/adversary.hpp"
#include "qsspi/optics.hpp"
#include "qsspi/patterns.hpp"
#include "qsspi/scene.hpp"

namespace qsspi {

enum class RunMode { analytic, stochastic };

struct RunConfig {
  int resolution_exponent = 5;
  RunMode mode = RunMode::analytic;
  std::uint64_t rng_seed = 1;  // ignored in analytic mode
  SourceModel source;
  DetectorModel detector;
  AttackSpec attack;
};

// Per-shot coincidence record. counts[x][y] holds C(x, y) for signal
// polarization x and idler polarization y; the signal and idler arms share
// the basis choice, so cross-basis cells are structurally zero. Analytic mode
// books fractional expected counts (each basis at weight 1/2) rather than
// sampling basis choices; stochastic mode holds integer Poisson draws.
struct CoincidenceTally {
  int shot_index = 0;
  std::array<std::array<double, 4>, 4> counts{};
  double signal_singles = 0.0;
};

double total_coincidences(const CoincidenceTally& tally);
double correct_coincidences(const CoincidenceTally& tally);
double erroneous_coincidences(const CoincidenceTally& tally);

// Expected counts for one displayed mask: the true-signal term distributed
// over polarization pairs by the source statistics, plus the attack variant's
// contribution, all scaled by the acquisition time per shot.
CoincidenceTally expected_shot_tally(const RunConfig& config, const SceneProfile& scene,
                                     const PatternMask& mask);

// Runs the full mask sequence. Stochastic mode draws every tally entry from a
// Poisson law with the analytic expectation as mean, using a per-shot
// substream derived from rng_seed, so shots reproduce independent of
// evaluation order.
std::vector<CoincidenceTally> run_experiment(const RunConfig& config,
                                             const SceneProfile& scene);

// Signal-arm singles per shot (including any jamming inflation), as used by a
// classical single-pixel reconstruction. Matches the signal_singles fields
// produced by run_experiment under the same config.
std::vector<double> classical_singles_trace(const RunConfig& config,
                                            const SceneProfile& scene);

}  // namespace qsspi
