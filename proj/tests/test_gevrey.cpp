#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "flatheat/errors.hpp"
#include "flatheat/gevrey.hpp"

using namespace flatheat;

namespace {

// Independent scalar reference for phi_s, sharing no code with the jet path.
double phi_reference(double t, double s) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double k = 1.0 / (s - 1.0);
  const double num = std::exp(-std::pow(1.0 - t, -k));
  const double den = num + std::exp(-std::pow(t, -k));
  return num / den;
}

// Central difference of the reference with a step sweep; returns the best
// (smallest-step-consistent) estimate.
double fd_derivative(double t, double s, double h) {
  return (phi_reference(t + h, s) - phi_reference(t - h, s)) / (2.0 * h);
}

}  // namespace

TEST_CASE("GevreyOrder validates 1 < s < 2") {
  CHECK_THROWS_AS(GevreyOrder(1.0), ConfigError);
  CHECK_THROWS_AS(GevreyOrder(2.0), ConfigError);
  CHECK_THROWS_AS(GevreyOrder(0.5), ConfigError);
  const GevreyOrder g(1.65);
  CHECK(g.k() == doctest::Approx(1.0 / 0.65).epsilon(1e-15));
}

TEST_CASE("phi_step endpoint and midpoint values") {
  const GevreyOrder s(1.65);
  CHECK(phi_step(0.0, s) == 1.0);
  CHECK(phi_step(1.0, s) == 0.0);
  CHECK(phi_step(-3.0, s) == 1.0);
  CHECK(phi_step(7.0, s) == 0.0);
  CHECK(phi_step(0.5, s) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("phi_step is non-increasing on a fine grid") {
  for (double sv : {1.1, 1.5, 1.65, 1.9}) {
    const GevreyOrder s(sv);
    double prev = phi_step(0.0, s);
    for (int i = 1; i <= 200; ++i) {
      const double v = phi_step(static_cast<double>(i) / 200.0, s);
      CHECK(v <= prev + 1e-16);
      prev = v;
    }
  }
}

TEST_CASE("symmetry phi(t) + phi(1-t) = 1") {
  const GevreyOrder s(1.65);
  for (int i = 0; i <= 1000; ++i) {
    const double t = static_cast<double>(i) / 1000.0;
    CHECK(phi_step(t, s) + phi_step(1.0 - t, s) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("endpoint jets are exact for m <= 40 and several s") {
  for (double sv : {1.1, 1.5, 1.65, 1.9}) {
    const GevreyOrder s(sv);
    for (std::size_t m : {0u, 1u, 10u, 40u}) {
      const TaylorJet j0 = phi_step_jet(0.0, s, m);
      CHECK(j0.coeffs[0] == 1.0);
      for (std::size_t i = 1; i <= m; ++i) CHECK(j0.coeffs[i] == 0.0);
      const TaylorJet j1 = phi_step_jet(1.0, s, m);
      for (std::size_t i = 0; i <= m; ++i) CHECK(j1.coeffs[i] == 0.0);
    }
  }
}

TEST_CASE("points within the snap distance return endpoint jets") {
  const GevreyOrder s(1.65);
  const TaylorJet near0 = phi_step_jet(1e-13, s, 12);
  CHECK(near0.coeffs[0] == 1.0);
  CHECK(near0.coeffs[5] == 0.0);
  const TaylorJet near1 = phi_step_jet(1.0 - 1e-13, s, 12);
  CHECK(near1.coeffs[0] == 0.0);
}

TEST_CASE("first jet coefficient matches finite differences at sigma = 0.37") {
  const GevreyOrder s(1.65);
  const TaylorJet jet = phi_step_jet(0.37, s, 8);
  const double d1 = jet.coeffs[1];  // = phi'(0.37) / 1!
  bool matched = false;
  for (double h : {1e-4, 1e-5, 1e-6}) {
    const double est = fd_derivative(0.37, s.s(), h);
    if (std::abs(est - d1) <= 1e-6 * std::abs(d1)) matched = true;
  }
  CHECK(matched);
}

TEST_CASE("jet value agrees with the scalar function") {
  const GevreyOrder s(1.65);
  for (double sigma : {0.05, 0.2, 0.37, 0.5, 0.73, 0.95}) {
    const TaylorJet jet = phi_step_jet(sigma, s, 10);
    CHECK(jet.coeffs[0] == doctest::Approx(phi_reference(sigma, 1.65)).epsilon(1e-13));
  }
}

TEST_CASE("jet consistency: shifted jet matches finite differences up to i = 10") {
  // The derivative jet of order i equals coeffs[i]*i!; compare each raw
  // derivative against a central difference of the (i-1)-th derivative built
  // from one-order-lower jets at neighbouring points.
  const GevreyOrder s(1.65);
  const double sigma = 0.41;
  const double h = 1e-5;
  const TaylorJet center = phi_step_jet(sigma, s, 12);
  const TaylorJet left = phi_step_jet(sigma - h, s, 12);
  const TaylorJet right = phi_step_jet(sigma + h, s, 12);
  for (std::size_t i = 1; i <= 10; ++i) {
    const double exact = center.derivative(i);
    const double fd = (right.derivative(i - 1) - left.derivative(i - 1)) / (2.0 * h);
    CHECK(fd == doctest::Approx(exact).epsilon(1e-5));
  }
}

TEST_CASE("empirical Gevrey envelope: scaled derivative growth is bounded") {
  // Fit log|phi^(i)(sigma)| <= log M + s log i! - i log R by least squares
  // over sigma in [0.05, 0.95], i <= 30, and check the fit residuals.
  const double sv = 1.65;
  const GevreyOrder s(sv);
  std::vector<std::pair<double, double>> pts;
  for (int a = 1; a <= 19; ++a) {
    const double sigma = 0.05 * static_cast<double>(a);
    const TaylorJet jet = phi_step_jet(sigma, s, 30);
    for (std::size_t i = 0; i <= 30; ++i) {
      const double mag = std::abs(jet.derivative(i));
      if (mag < 1e-290) continue;
      pts.emplace_back(static_cast<double>(i),
                       std::log(mag) - sv * std::lgamma(static_cast<double>(i) + 1.0));
    }
  }
  REQUIRE(pts.size() > 100);
  double si = 0, sii = 0, sv_ = 0, siv = 0;
  for (auto& [x, y] : pts) {
    si += x; sii += x * x; sv_ += y; siv += x * y;
  }
  const double n = static_cast<double>(pts.size());
  const double slope = (n * siv - si * sv_) / (n * sii - si * si);
  const double intercept = (sv_ - slope * si) / n;
  const double M = std::exp(intercept), R = std::exp(-slope);
  CHECK(std::isfinite(M));
  CHECK(std::isfinite(R));
  CHECK(M > 0.0);
  CHECK(R > 0.0);
  // Residuals around the fitted envelope stay bounded (no super-Gevrey growth).
  for (auto& [x, y] : pts) CHECK(y - (intercept + slope * x) < 25.0);
}
