#include "qsspi/security.hpp"

#include <algorithm>
#include <stdexcept>

#include "qsspi/numeric.hpp"

namespace qsspi {
namespace {

constexpr double kFullAttackThreshold = 0.25;
constexpr double kTieTolerance = 1e-9;

int pol_index(Polarization p) { return static_cast<int>(p); }

}  // namespace

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::secure: return "secure";
    case Verdict::partial_attack: return "partial_attack";
    case Verdict::full_attack: return "full_attack";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

AggregateCounts aggregate_tallies(std::span<const CoincidenceTally> tallies) {
  std::array<std::array<KahanSum, 4>, 4> sums;
  for (const CoincidenceTally& tally : tallies) {
    for (int s = 0; s < 4; ++s) {
      for (int i = 0; i < 4; ++i) {
        sums[s][i].add(tally.counts[s][i]);
      }
    }
  }
  AggregateCounts aggregate;
  for (int s = 0; s < 4; ++s) {
    for (int i = 0; i < 4; ++i) {
      aggregate.counts[s][i] = sums[s][i].value();
    }
  }
  return aggregate;
}

std::optional<double> error_rate_per_idler(const AggregateCounts& counts,
                                           Polarization idler) {
  const double matched = counts.counts[pol_index(idler)][pol_index(idler)];
  const double crossed = counts.counts[pol_index(orthogonal(idler))][pol_index(idler)];
  const double denominator = matched + crossed;
  if (denominator <= 0.0) {
    return std::nullopt;
  }
  return crossed / denominator;
}

BasisErrorRates basis_error_rates(const AggregateCounts& counts) {
  BasisErrorRates rates;
  for (Basis basis : {Basis::rectilinear, Basis::diagonal}) {
    double erroneous = 0.0;
    double all = 0.0;
    for (Polarization s : basis_polarizations(basis)) {
      for (Polarization i : basis_polarizations(basis)) {
        const double cell = counts.counts[pol_index(s)][pol_index(i)];
        all += cell;
        if (s != i) {
          erroneous += cell;
        }
      }
    }
    std::optional<double> rate;
    if (all > 0.0) {
      rate = erroneous / all;
    }
    (basis == Basis::rectilinear ? rates.e_r : rates.e_d) = rate;
  }
  return rates;
}

std::optional<double> partial_threshold(const ImageGrid& g_mask, const ImageGrid& g_all) {
  if (g_mask.side() != g_all.side() || g_all.empty()) {
    throw std::invalid_argument("partial_threshold: incompatible images");
  }
  const double total = image_sum_clipped(g_all);
  if (total <= 0.0) {
    return std::nullopt;
  }
  return image_sum_clipped(g_mask) / total;
}

double theoretical_partial_error(double s_alice, double n_alice, double s_eve,
                                 double n_eve) {
  const double eve_weight = s_eve * n_eve;
  const double denominator = s_alice * n_alice + eve_weight;
  if (denominator <= 0.0) {
    throw std::invalid_argument("theoretical_partial_error: zero total weight");
  }
  return 0.25 * eve_weight / denominator;
}

double theoretical_random_polarization_error(double s_alice, double n_alice,
                                             double s_eve, double n_eve) {
  return 2.0 * theoretical_partial_error(s_alice, n_alice, s_eve, n_eve);
}

Verdict verdict(std::optional<double> e_r, std::optional<double> e_d,
                std::optional<double> e_t) {
  if (!e_r || !e_d) {
    return Verdict::indeterminate;
  }
  const double worst = std::max(*e_r, *e_d);
  if (worst >= kFullAttackThreshold - kTieTolerance) {
    return Verdict::full_attack;
  }
  if (worst <= 0.0) {
    return Verdict::secure;  // no erroneous coincidences at all
  }
  if (!e_t) {
    return Verdict::indeterminate;
  }
  if (worst >= *e_t - kTieTolerance) {
    return Verdict::partial_attack;
  }
  return Verdict::secure;
}

SecurityReport analyze_run(std::span<const CoincidenceTally> tallies) {
  return analyze_run(tallies, split_reconstructions(tallies));
}

SecurityReport analyze_run(std::span<const CoincidenceTally> tallies,
                           const SplitImages& images) {
  const AggregateCounts aggregate = aggregate_tallies(tallies);
  SecurityReport report;
  for (Polarization p : kAllPolarizations) {
    report.e_by_idler[static_cast<std::size_t>(p)] = error_rate_per_idler(aggregate, p);
  }
  const BasisErrorRates rates = basis_error_rates(aggregate);
  report.e_r = rates.e_r;
  report.e_d = rates.e_d;
  report.e_T = partial_threshold(images.mask, images.all);
  report.verdict = verdict(report.e_r, report.e_d, report.e_T);
  return report;
}

}  // namespace qsspi
