#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "qsspi/acquisition.hpp"
#include "qsspi/reconstruction.hpp"

namespace qsspi {

enum class Verdict { secure, partial_attack, full_attack, indeterminate };

std::string_view to_string(Verdict verdict);

// Coincidence counts summed over every shot of a run.
struct AggregateCounts {
  std::array<std::array<double, 4>, 4> counts{};
};

AggregateCounts aggregate_tallies(std::span<const CoincidenceTally> tallies);

// Error rate with respect to one idler polarization:
//   e_Xi = C(Xj, Xi) / (C(Xi, Xi) + C(Xj, Xi)),  Xj orthogonal to Xi.
// A zero denominator carries no evidence and reports as nullopt rather than 0.
std::optional<double> error_rate_per_idler(const AggregateCounts& counts,
                                           Polarization idler);

struct BasisErrorRates {
  std::optional<double> e_r;  // rectilinear basis
  std::optional<double> e_d;  // diagonal basis
};

// Ratio of erroneous to all coincidences per basis, aggregating both idler
// polarizations (count-weighted).
BasisErrorRates basis_error_rates(const AggregateCounts& counts);

// Image-based partial-attack threshold: sum(G_mask) / sum(G_all), with
// negative cells clipped to 0 before summation. nullopt when the clipped
// G_all sums to zero.
std::optional<double> partial_threshold(const ImageGrid& g_mask, const ImageGrid& g_all);

// Count-based partial-attack threshold for an intercept-and-resend forger:
//   (1/4) * S_E n_E / (S_A n_A + S_E n_E).
double theoretical_partial_error(double s_alice, double n_alice, double s_eve,
                                 double n_eve);

// Same quantity for a forger resending uniformly random polarizations; the
// prefactor doubles to 1/2, so the measured rate always exceeds the
// intercept-resend threshold whenever S_E n_E > 0.
double theoretical_random_polarization_error(double s_alice, double n_alice,
                                             double s_eve, double n_eve);

// Three-step decision:
//   1. max(e_r, e_d) >= 25%           -> full_attack, discard all images;
//   2. otherwise max(e_r, e_d) >= e_T -> partial_attack, only the trustworthy
//                                        image is credible;
//   3. otherwise                      -> secure.
// Comparisons carry a 1e-9 absolute tolerance because the analytic model
// produces exact ties at both thresholds, and a tie must classify as a
// crossing. A run with zero erroneous coincidences carries no attack evidence
// and is secure; undefined inputs propagate as indeterminate.
Verdict verdict(std::optional<double> e_r, std::optional<double> e_d,
                std::optional<double> e_t);

struct SecurityReport {
  std::optional<double> e_r;
  std::optional<double> e_d;
  std::optional<double> e_T;
  std::array<std::optional<double>, 4> e_by_idler{};  // indexed by Polarization
  Verdict verdict = Verdict::indeterminate;
};

// Full analysis of a tally sequence: basis and per-idler error rates, the
// image-based threshold, and the verdict.
SecurityReport analyze_run(std::span<const CoincidenceTally> tallies);
SecurityReport analyze_run(std::span<const CoincidenceTally> tallies,
                           const SplitImages& images);

}  // namespace qsspi
