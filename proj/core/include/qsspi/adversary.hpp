#pragma once

#include "qsspi/optics.hpp"
#include "qsspi/patterns.hpp"
#include "qsspi/scene.hpp"

namespace qsspi {

enum class AttackVariant {
  none,
  full_intercept_resend,
  partial_intercept_resend,
  random_polarization,
  emulated_fixed_polarization,
  jamming,
};

// Adversary description. intensity_ratio scales the false-signal coincidence
// rate relative to the imaging system's no-target pair rate; theta is the
// basis offset of an intercepting analyzer (the expected rates are
// theta-independent, see intercept_resend_error_rate); fixed_polarization is
// the constant false-signal polarization of the emulated variant.
struct AttackSpec {
  AttackVariant variant = AttackVariant::none;
  double theta = 0.0;
  SceneProfile fraud_scene;
  double intensity_ratio = 0.0;
  double jam_power_ratio = 0.0;
  Polarization fixed_polarization = Polarization::H;
};

constexpr bool is_deceiving(AttackVariant v) {
  return v == AttackVariant::full_intercept_resend ||
         v == AttackVariant::partial_intercept_resend ||
         v == AttackVariant::random_polarization ||
         v == AttackVariant::emulated_fixed_polarization;
}

// True-signal path is blocked, only the false signal reaches the receiver.
constexpr bool blocks_true_signal(AttackVariant v) {
  return v == AttackVariant::full_intercept_resend;
}

// Forged coincidence rates per heralded idler polarization: correct_rate lands
// in the heralded polarization, error_rate in the orthogonal one.
struct EveContribution {
  double correct_rate = 0.0;
  double error_rate = 0.0;
};

// Intercept-and-resend forger: per idler polarization 3/16 of the false rate
// arrives correct and 1/16 erroneous, i.e. a quarter of all forged
// coincidences are erroneous, independent of the analyzer offset.
EveContribution eve_rates_intercept_resend(double eve_rate_cps);

// Forger that resends a uniformly random polarization: 1/8 correct and 1/8
// erroneous per idler polarization, i.e. half of all forged coincidences are
// erroneous.
EveContribution eve_rates_random_polarization(double eve_rate_cps);

// False-signal coincidence rate contributed to one shot:
// (1/M) * sum over mask-selected pixels of eta_E * chi_E * n_E, with
// n_E = intensity_ratio * alice_pair_rate. Zero for the none and jamming
// variants.
double eve_shot_intensity(const AttackSpec& attack, const PatternMask& mask,
                          double alice_pair_rate_cps);

enum class SelectionOutcome { keep, discard, error_coincidence };

// Post-selection rules of the emulated fixed-polarization attack:
//  - identical bases: keep only coincidences whose idler matches the fixed
//    false polarization, discard the rest;
//  - different bases: keep every combination; mismatched signal/idler pairs
//    land as erroneous coincidences.
SelectionOutcome emulated_selection(Basis alice_basis, Polarization eve_fixed,
                                    Polarization signal_outcome,
                                    Polarization idler_outcome);

struct JammingRates {
  double singles_inflation_cps = 0.0;
  double accidental_cps = 0.0;
};

// Strong chaotic illumination: inflates the signal-arm singles by
// jam_power_ratio times the nominal singles rate and produces accidental
// coincidences at N_idler * inflation * window.
JammingRates jamming_rates(const AttackSpec& attack, const SourceModel& source,
                           const DetectorModel& detector);

}  // namespace qsspi
