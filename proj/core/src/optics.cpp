#include "qsspi/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qsspi {

std::string_view to_string(Polarization p) {
  switch (p) {
    case Polarization::H: return "H";
    case Polarization::V: return "V";
    case Polarization::D: return "D";
    case Polarization::A: return "A";
  }
  return "?";
}

std::string_view to_string(Basis b) {
  return b == Basis::rectilinear ? "rectilinear" : "diagonal";
}

double analyzer_angle(Polarization p) {
  switch (p) {
    case Polarization::H: return 0.0;
    case Polarization::V: return std::numbers::pi / 2.0;
    case Polarization::D: return std::numbers::pi / 4.0;
    case Polarization::A: return -std::numbers::pi / 4.0;
  }
  return 0.0;
}

std::array<std::array<double, 2>, 2> pair_probabilities(const SourceModel& source,
                                                        Basis /*basis*/) {
  // The maximally entangled state behaves identically in both bases, so the
  // basis argument only documents the measurement context.
  const double v = source.visibility;
  const double matched = (1.0 + v) / 4.0;
  const double crossed = (1.0 - v) / 4.0;
  return {{{matched, crossed}, {crossed, matched}}};
}

double projection_probability(Polarization incoming, double analyzer_angle_rad) {
  const double delta = analyzer_angle_rad - analyzer_angle(incoming);
  const double c = std::cos(delta);
  return c * c;
}

double accidental_rate(double idler_singles_cps, double foreign_singles_cps,
                       double window_s) {
  return idler_singles_cps * foreign_singles_cps * window_s;
}

double intercept_resend_error_rate(double theta_rad) {
  const double c = std::cos(2.0 * theta_rad);
  const double s = std::sin(2.0 * theta_rad);
  const double same_basis = (1.0 - c * c) / 2.0;
  const double offset_basis = (1.0 - s * s) / 2.0;
  return (same_basis + offset_basis) / 2.0;
}

double visibility_from_fidelity(double fidelity) {
  return std::clamp(2.0 * fidelity - 1.0, 0.0, 1.0);
}

}  // namespace qsspi
