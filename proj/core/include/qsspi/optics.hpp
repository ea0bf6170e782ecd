#pragma once

#include <array>
#include <string_view>

namespace qsspi {

enum class Polarization : int { H = 0, V = 1, D = 2, A = 3 };
enum class Basis : int { rectilinear = 0, diagonal = 1 };

inline constexpr std::array<Polarization, 4> kAllPolarizations = {
    Polarization::H, Polarization::V, Polarization::D, Polarization::A};

constexpr Basis basis_of(Polarization p) {
  return (p == Polarization::H || p == Polarization::V) ? Basis::rectilinear
                                                        : Basis::diagonal;
}

constexpr Polarization orthogonal(Polarization p) {
  switch (p) {
    case Polarization::H: return Polarization::V;
    case Polarization::V: return Polarization::H;
    case Polarization::D: return Polarization::A;
    case Polarization::A: return Polarization::D;
  }
  return Polarization::H;
}

constexpr std::array<Polarization, 2> basis_polarizations(Basis b) {
  return b == Basis::rectilinear
             ? std::array<Polarization, 2>{Polarization::H, Polarization::V}
             : std::array<Polarization, 2>{Polarization::D, Polarization::A};
}

constexpr Basis other_basis(Basis b) {
  return b == Basis::rectilinear ? Basis::diagonal : Basis::rectilinear;
}

std::string_view to_string(Polarization p);
std::string_view to_string(Basis b);

// Analyzer axis of a polarization: H = 0, V = pi/2, D = pi/4, A = -pi/4.
double analyzer_angle(Polarization p);

// Polarization-entangled pair source. visibility = 1 models the ideal state
// with perfectly correlated outcomes in both bases; lower values mix in
// basis-independent cross-polarization errors.
struct SourceModel {
  double pair_rate_cps = 300.0;        // coincidence rate with no target in the path
  double visibility = 1.0;
  double idler_singles_cps = 8.0e4;
  double signal_singles_cps = 6.0e3;
};

struct DetectorModel {
  double coincidence_window_s = 650e-12;
  double shot_time_s = 3.5;  // photon acquisition time per displayed mask
};

// Joint outcome probabilities within one measurement basis, indexed
// [signal outcome][idler outcome] over the basis' two polarizations.
// Matched outcomes carry (1+v)/4 each and crossed ones (1-v)/4, so the table
// sums to 1 and reduces to {1/2, 0} at visibility 1.
std::array<std::array<double, 2>, 2> pair_probabilities(const SourceModel& source,
                                                        Basis basis);

// Malus law: cos^2 of the angle between the incoming polarization axis and
// the analyzer axis.
double projection_probability(Polarization incoming, double analyzer_angle_rad);

// Uncorrelated-coincidence rate N_idler * N_foreign * window.
double accidental_rate(double idler_singles_cps, double foreign_singles_cps,
                       double window_s);

// Error rate seen under an intercept-and-resend attack when the interceptor's
// analyzer is offset by theta. Averaging over the interceptor's two basis
// choices cancels the offset, so the value is 1/4 for every theta.
double intercept_resend_error_rate(double theta_rad);

// Fringe-visibility convention v = 2F - 1, clamped to [0, 1].
double visibility_from_fidelity(double fidelity);

}  // namespace qsspi
