#include "qsspi/adversary.hpp"

#include <stdexcept>
#include <string>

#include "qsspi/numeric.hpp"

namespace qsspi {

EveContribution eve_rates_intercept_resend(double eve_rate_cps) {
  if (eve_rate_cps < 0.0) {
    throw std::invalid_argument("eve_rates_intercept_resend: rate must be >= 0");
  }
  // Same-basis interception resends the exact polarization (1/2); a wrong
  // basis choice still projects back correctly half the time (1/4), and the
  // remaining 1/4 lands orthogonal. Scaled by the 1/4 chance of heralding a
  // given idler polarization.
  return EveContribution{3.0 * eve_rate_cps / 16.0, eve_rate_cps / 16.0};
}

EveContribution eve_rates_random_polarization(double eve_rate_cps) {
  if (eve_rate_cps < 0.0) {
    throw std::invalid_argument("eve_rates_random_polarization: rate must be >= 0");
  }
  return EveContribution{eve_rate_cps / 8.0, eve_rate_cps / 8.0};
}

double eve_shot_intensity(const AttackSpec& attack, const PatternMask& mask,
                          double alice_pair_rate_cps) {
  if (!is_deceiving(attack.variant)) {
    return 0.0;
  }
  const SceneProfile& fraud = attack.fraud_scene;
  if (fraud.side != mask.side) {
    throw std::invalid_argument("eve_shot_intensity: fraud scene side " +
                                std::to_string(fraud.side) + " does not match mask side " +
                                std::to_string(mask.side));
  }
  const double eve_rate = attack.intensity_ratio * alice_pair_rate_cps;
  KahanSum masked;
  for (std::size_t i = 0; i < mask.cells.size(); ++i) {
    if (mask.cells[i]) {
      masked.add(fraud.eta[i] * fraud.chi[i]);
    }
  }
  const double pixels = static_cast<double>(mask.cells.size());
  return masked.value() / pixels * eve_rate;
}

SelectionOutcome emulated_selection(Basis alice_basis, Polarization eve_fixed,
                                    Polarization signal_outcome,
                                    Polarization idler_outcome) {
  if (basis_of(signal_outcome) != alice_basis || basis_of(idler_outcome) != alice_basis) {
    throw std::invalid_argument(
        "emulated_selection: outcomes must lie in the analysis basis");
  }
  if (alice_basis == basis_of(eve_fixed)) {
    return idler_outcome == eve_fixed ? SelectionOutcome::keep
                                      : SelectionOutcome::discard;
  }
  return signal_outcome == idler_outcome ? SelectionOutcome::keep
                                         : SelectionOutcome::error_coincidence;
}

JammingRates jamming_rates(const AttackSpec& attack, const SourceModel& source,
                           const DetectorModel& detector) {
  if (attack.variant != AttackVariant::jamming) {
    throw std::invalid_argument("jamming_rates: attack variant is not jamming");
  }
  JammingRates rates;
  rates.singles_inflation_cps = attack.jam_power_ratio * source.signal_singles_cps;
  rates.accidental_cps = accidental_rate(source.idler_singles_cps,
                                         rates.singles_inflation_cps,
                                         detector.coincidence_window_s);
  return rates;
}

}  // namespace qsspi
