#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "qsspi/optics.hpp"

using namespace qsspi;

namespace {

constexpr double kPi = std::numbers::pi;

// Monte-Carlo oracle for the intercept-and-resend error rate: sample the
// interceptor's basis choice and both projection outcomes explicitly.
double monte_carlo_intercept_error(double theta, std::size_t trials,
                                   std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::uniform_int_distribution<int> pick_polarization(0, 3);
  std::size_t errors = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    // Heralded polarization of the intercepted photon.
    const Polarization heralded = kAllPolarizations[static_cast<std::size_t>(
        pick_polarization(rng))];
    const double heralded_angle = analyzer_angle(heralded);
    // Interceptor measures in one of its two offset bases.
    const double base = heralded_angle + theta + (uniform(rng) < 0.5 ? 0.0 : kPi / 4.0);
    // Outcome along the analyzer or orthogonal to it.
    const bool along = uniform(rng) < projection_probability(heralded, base);
    const double resent_angle = along ? base : base + kPi / 2.0;
    // Receiver projects the resent photon back onto the heralded axis;
    // landing orthogonal is an error.
    const double delta = resent_angle - heralded_angle;
    const double p_correct = std::cos(delta) * std::cos(delta);
    if (uniform(rng) >= p_correct) ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(trials);
}

}  // namespace

TEST_SUITE("optics") {

TEST_CASE("polarization bases and orthogonality relations") {
  CHECK(basis_of(Polarization::H) == Basis::rectilinear);
  CHECK(basis_of(Polarization::V) == Basis::rectilinear);
  CHECK(basis_of(Polarization::D) == Basis::diagonal);
  CHECK(basis_of(Polarization::A) == Basis::diagonal);
  for (Polarization p : kAllPolarizations) {
    CHECK(orthogonal(orthogonal(p)) == p);
    CHECK(basis_of(orthogonal(p)) == basis_of(p));
  }
}

TEST_CASE("pair probabilities at visibility 1 are the ideal statistics") {
  SourceModel source;
  source.visibility = 1.0;
  for (Basis basis : {Basis::rectilinear, Basis::diagonal}) {
    const auto p = pair_probabilities(source, basis);
    CHECK(p[0][0] == 0.5);
    CHECK(p[1][1] == 0.5);
    CHECK(p[0][1] == 0.0);
    CHECK(p[1][0] == 0.0);
  }
}

TEST_CASE("pair probabilities at visibility 0 are fully mixed") {
  SourceModel source;
  source.visibility = 0.0;
  const auto p = pair_probabilities(source, Basis::rectilinear);
  for (int s = 0; s < 2; ++s) {
    for (int i = 0; i < 2; ++i) {
      CHECK(p[s][i] == 0.25);
    }
  }
}

TEST_CASE("pair probabilities at visibility 0.972") {
  SourceModel source;
  source.visibility = 0.972;
  const auto p = pair_probabilities(source, Basis::diagonal);
  CHECK(p[0][1] == doctest::Approx((1.0 - 0.972) / 4.0).epsilon(1e-15));
  CHECK(p[0][1] == doctest::Approx(0.007).epsilon(1e-12));
  CHECK(p[1][0] == p[0][1]);
}

TEST_CASE("pair probability table sums to 1 and is outcome-symmetric") {
  SourceModel source;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    source.visibility = uniform(rng);
    const auto p = pair_probabilities(source, Basis::rectilinear);
    CHECK(p[0][0] + p[0][1] + p[1][0] + p[1][1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p[0][0] == p[1][1]);
    CHECK(p[0][1] == p[1][0]);
  }
}

TEST_CASE("projection probability: aligned, unbiased and oblique cases") {
  CHECK(projection_probability(Polarization::H, 0.0) == doctest::Approx(1.0));
  CHECK(projection_probability(Polarization::H, kPi / 4.0) ==
        doctest::Approx(0.5).epsilon(1e-15));
  // cos^2(pi/6) = 3/4
  CHECK(projection_probability(Polarization::H, kPi / 6.0) ==
        doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("projection onto an analyzer and its orthogonal complement sums to 1") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (Polarization p : kAllPolarizations) {
    for (int trial = 0; trial < 100; ++trial) {
      const double a = angle(rng);
      const double sum = projection_probability(p, a) +
                         projection_probability(p, a + kPi / 2.0);
      REQUIRE(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("accidental rate reproduces the reference operating point") {
  // 8e4 cps idler, 5.8e6 cps foreign light, 650 ps window -> about 300 cps.
  const double rate = accidental_rate(8.0e4, 5.8e6, 650e-12);
  CHECK(rate == doctest::Approx(301.6).epsilon(1e-12));
  CHECK(accidental_rate(0.0, 5.8e6, 650e-12) == 0.0);
  CHECK(accidental_rate(8.0e4, 0.0, 650e-12) == 0.0);
  CHECK(accidental_rate(1.0e5, 1.0e6, 1.0e-9) == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("accidental rate is bilinear in the two rates") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> uniform(0.0, 1.0e6);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = uniform(rng);
    const double b = uniform(rng);
    const double c = uniform(rng);
    const double tau = 650e-12;
    CHECK(accidental_rate(a + b, c, tau) ==
          doctest::Approx(accidental_rate(a, c, tau) + accidental_rate(b, c, tau))
              .epsilon(1e-12));
    CHECK(accidental_rate(2.5 * a, c, tau) ==
          doctest::Approx(2.5 * accidental_rate(a, c, tau)).epsilon(1e-12));
    CHECK(accidental_rate(a, 3.0 * c, tau) ==
          doctest::Approx(3.0 * accidental_rate(a, c, tau)).epsilon(1e-12));
  }
}

TEST_CASE("intercept-resend error rate is 1/4 independent of the offset") {
  CHECK(intercept_resend_error_rate(0.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(intercept_resend_error_rate(kPi / 8.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(intercept_resend_error_rate(0.3) == doctest::Approx(0.25).epsilon(1e-15));
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> theta(0.0, kPi);
  for (int trial = 0; trial < 1000; ++trial) {
    REQUIRE(std::abs(intercept_resend_error_rate(theta(rng)) - 0.25) < 1e-12);
  }
}

TEST_CASE("Monte-Carlo interception oracle agrees with the closed form") {
  std::mt19937_64 rng(20240810);
  constexpr std::size_t kTrials = 1'000'000;
  // 3 sigma of a Bernoulli(1/4) mean over 1e6 trials.
  const double three_sigma = 3.0 * std::sqrt(0.25 * 0.75 / static_cast<double>(kTrials));
  for (double theta : {0.0, 0.3, kPi / 8.0}) {
    const double estimate = monte_carlo_intercept_error(theta, kTrials, rng);
    CHECK(std::abs(estimate - intercept_resend_error_rate(theta)) < three_sigma);
  }
}

TEST_CASE("fidelity to visibility mapping") {
  CHECK(visibility_from_fidelity(1.0) == 1.0);
  CHECK(visibility_from_fidelity(0.986) == doctest::Approx(0.972).epsilon(1e-12));
  CHECK(visibility_from_fidelity(0.5) == 0.0);
  CHECK(visibility_from_fidelity(0.25) == 0.0);  // clamped
}

}  // TEST_SUITE
