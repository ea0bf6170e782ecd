#include "qsspi/acquisition.hpp"

#include <random>
#include <stdexcept>
#include <string>

#include "qsspi/numeric.hpp"

namespace qsspi {
namespace {

int pol_index(Polarization p) { return static_cast<int>(p); }

// Fraction of the pre-selection false-signal rate landing in each tally cell.
// Intercept-resend and random-polarization fractions sum to 1; the emulated
// fixed-polarization attack post-selects and keeps only 3/4 of the raw rate
// (same-basis idler mismatches are discarded).
std::array<std::array<double, 4>, 4> eve_cell_fractions(const AttackSpec& attack) {
  std::array<std::array<double, 4>, 4> fractions{};
  switch (attack.variant) {
    case AttackVariant::full_intercept_resend:
    case AttackVariant::partial_intercept_resend: {
      const EveContribution per_idler = eve_rates_intercept_resend(1.0);
      for (Polarization idler : kAllPolarizations) {
        fractions[pol_index(idler)][pol_index(idler)] = per_idler.correct_rate;
        fractions[pol_index(orthogonal(idler))][pol_index(idler)] = per_idler.error_rate;
      }
      break;
    }
    case AttackVariant::random_polarization: {
      const EveContribution per_idler = eve_rates_random_polarization(1.0);
      for (Polarization idler : kAllPolarizations) {
        fractions[pol_index(idler)][pol_index(idler)] = per_idler.correct_rate;
        fractions[pol_index(orthogonal(idler))][pol_index(idler)] = per_idler.error_rate;
      }
      break;
    }
    case AttackVariant::emulated_fixed_polarization: {
      const Polarization fixed = attack.fixed_polarization;
      // Same basis (probability 1/2): the false signal always projects onto
      // itself and only matching idlers are kept (another 1/2).
      fractions[pol_index(fixed)][pol_index(fixed)] = 0.25;
      // Other basis (probability 1/2): signal and idler outcomes are both
      // uniform, every combination is kept.
      for (Polarization s : basis_polarizations(other_basis(basis_of(fixed)))) {
        for (Polarization i : basis_polarizations(other_basis(basis_of(fixed)))) {
          fractions[pol_index(s)][pol_index(i)] = 0.125;
        }
      }
      break;
    }
    default:
      break;
  }
  return fractions;
}

double masked_effective_fraction(const SceneProfile& scene, const PatternMask& mask) {
  KahanSum sum;
  for (std::size_t i = 0; i < mask.cells.size(); ++i) {
    if (mask.cells[i]) {
      sum.add(scene.eta[i] * scene.chi[i]);
    }
  }
  return sum.value() / static_cast<double>(mask.cells.size());
}

double poisson_draw(std::mt19937_64& rng, double mean) {
  if (mean <= 0.0) {
    return 0.0;
  }
  std::poisson_distribution<long long> distribution(mean);
  return static_cast<double>(distribution(rng));
}

void sample_tally(CoincidenceTally& tally, std::uint64_t seed, std::uint64_t shot) {
  std::mt19937_64 rng(derive_seed(seed, shot));
  // Fixed draw order keeps the substream layout stable.
  for (auto& row : tally.counts) {
    for (auto& cell : row) {
      cell = poisson_draw(rng, cell);
    }
  }
  tally.signal_singles = poisson_draw(rng, tally.signal_singles);
}

void validate_run(const RunConfig& config, const SceneProfile& scene) {
  validate_scene(scene);
  const int side = 1 << config.resolution_exponent;
  if (scene.side != side) {
    throw std::invalid_argument("run: scene side " + std::to_string(scene.side) +
                                " does not match resolution 2^" +
                                std::to_string(config.resolution_exponent));
  }
  if (is_deceiving(config.attack.variant)) {
    validate_scene(config.attack.fraud_scene);
    if (config.attack.fraud_scene.side != side) {
      throw std::invalid_argument("run: fraud scene side does not match resolution");
    }
    if (config.attack.intensity_ratio < 0.0) {
      throw std::invalid_argument("run: intensity_ratio must be >= 0");
    }
  }
  if (config.attack.variant == AttackVariant::jamming && config.attack.jam_power_ratio < 0.0) {
    throw std::invalid_argument("run: jam_power_ratio must be >= 0");
  }
  if (!(config.detector.shot_time_s > 0.0) || !(config.detector.coincidence_window_s > 0.0)) {
    throw std::invalid_argument("run: detector times must be > 0");
  }
  if (config.source.pair_rate_cps < 0.0 || config.source.idler_singles_cps < 0.0 ||
      config.source.signal_singles_cps < 0.0) {
    throw std::invalid_argument("run: source rates must be >= 0");
  }
  if (config.source.visibility < 0.0 || config.source.visibility > 1.0) {
    throw std::invalid_argument("run: visibility must lie in [0, 1]");
  }
}

}  // namespace

double total_coincidences(const CoincidenceTally& tally) {
  double sum = 0.0;
  for (const auto& row : tally.counts) {
    for (double cell : row) {
      sum += cell;
    }
  }
  return sum;
}

double correct_coincidences(const CoincidenceTally& tally) {
  double sum = 0.0;
  for (Polarization p : kAllPolarizations) {
    sum += tally.counts[pol_index(p)][pol_index(p)];
  }
  return sum;
}

double erroneous_coincidences(const CoincidenceTally& tally) {
  double sum = 0.0;
  for (Polarization p : kAllPolarizations) {
    sum += tally.counts[pol_index(orthogonal(p))][pol_index(p)];
  }
  return sum;
}

CoincidenceTally expected_shot_tally(const RunConfig& config, const SceneProfile& scene,
                                     const PatternMask& mask) {
  if (scene.side != mask.side) {
    throw std::invalid_argument("expected_shot_tally: scene and mask sides differ");
  }
  const double shot_time = config.detector.shot_time_s;
  const AttackSpec& attack = config.attack;

  CoincidenceTally tally;
  tally.shot_index = mask.shot_index;

  // True-signal term.
  double masked_fraction = 0.0;
  if (!blocks_true_signal(attack.variant)) {
    masked_fraction = masked_effective_fraction(scene, mask);
    const double alice_rate = masked_fraction * config.source.pair_rate_cps;
    for (Basis basis : {Basis::rectilinear, Basis::diagonal}) {
      const auto probabilities = pair_probabilities(config.source, basis);
      const auto pols = basis_polarizations(basis);
      for (int s = 0; s < 2; ++s) {
        for (int i = 0; i < 2; ++i) {
          tally.counts[pol_index(pols[s])][pol_index(pols[i])] +=
              0.5 * probabilities[s][i] * alice_rate * shot_time;
        }
      }
    }
  }

  // False-signal / jamming term.
  if (is_deceiving(attack.variant)) {
    const double eve_rate = eve_shot_intensity(attack, mask, config.source.pair_rate_cps);
    const auto fractions = eve_cell_fractions(attack);
    for (int s = 0; s < 4; ++s) {
      for (int i = 0; i < 4; ++i) {
        tally.counts[s][i] += fractions[s][i] * eve_rate * shot_time;
      }
    }
  } else if (attack.variant == AttackVariant::jamming) {
    const JammingRates jam = jamming_rates(attack, config.source, config.detector);
    // Unpolarized accidentals spread uniformly over the in-basis cells.
    for (Basis basis : {Basis::rectilinear, Basis::diagonal}) {
      for (Polarization s : basis_polarizations(basis)) {
        for (Polarization i : basis_polarizations(basis)) {
          tally.counts[pol_index(s)][pol_index(i)] += jam.accidental_cps * shot_time / 8.0;
        }
      }
    }
  }

  // Signal-arm singles for the classical comparison.
  double singles = masked_fraction * config.source.signal_singles_cps * shot_time;
  if (attack.variant == AttackVariant::jamming) {
    singles += jamming_rates(attack, config.source, config.detector).singles_inflation_cps *
               shot_time;
  }
  tally.signal_singles = singles;
  return tally;
}

std::vector<CoincidenceTally> run_experiment(const RunConfig& config,
                                             const SceneProfile& scene) {
  validate_run(config, scene);
  const std::vector<PatternMask> masks = pattern_sequence(config.resolution_exponent);
  std::vector<CoincidenceTally> tallies;
  tallies.reserve(masks.size());
  for (const PatternMask& mask : masks) {
    CoincidenceTally tally = expected_shot_tally(config, scene, mask);
    if (config.mode == RunMode::stochastic) {
      sample_tally(tally, config.rng_seed, static_cast<std::uint64_t>(mask.shot_index));
    }
    tallies.push_back(tally);
  }
  return tallies;
}

std::vector<double> classical_singles_trace(const RunConfig& config,
                                            const SceneProfile& scene) {
  const std::vector<CoincidenceTally> tallies = run_experiment(config, scene);
  std::vector<double> singles;
  singles.reserve(tallies.size());
  for (const CoincidenceTally& tally : tallies) {
    singles.push_back(tally.signal_singles);
  }
  return singles;
}

}  // namespace qsspi
