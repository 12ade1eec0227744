#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "flatheat/spectral.hpp"

using namespace flatheat;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("eigenvalues") {
  CHECK(NeumannBasis1D(1.0).eigenvalue(0) == 0.0);
  CHECK(NeumannBasis1D(1.0).eigenvalue(1) == doctest::Approx(kPi * kPi).epsilon(1e-15));
  CHECK(NeumannBasis1D(2.0).eigenvalue(2) == doctest::Approx(kPi * kPi).epsilon(1e-15));
  // strictly increasing
  const NeumannBasis1D b(1.3);
  for (std::size_t j = 1; j < 10; ++j) CHECK(b.eigenvalue(j) > b.eigenvalue(j - 1));
}

TEST_CASE("eigenfunctions") {
  const NeumannBasis1D b(1.0);
  CHECK(b.eigenfunction(0, 0.3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b.eigenfunction(1, 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(b.eigenfunction(1, 0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(b.eigenfunction(1, -0.1), std::domain_error);
  CHECK_THROWS_AS(b.eigenfunction(1, 1.1), std::domain_error);
}

TEST_CASE("orthonormality under quadrature, both bases") {
  // Gram matrices on >= 512 quadrature points must be the identity to 1e-10.
  const NeumannBasis1D b(1.0);
  const std::size_t cells = 512;
  const double off = 0.5 / std::sqrt(3.0);
  for (std::size_t j = 0; j <= 8; ++j) {
    for (std::size_t k = 0; k <= 8; ++k) {
      double ge = 0.0, gf = 0.0;
      for (std::size_t c = 0; c < cells; ++c) {
        const double h = 1.0 / static_cast<double>(cells);
        for (double x : {(static_cast<double>(c) + 0.5 - off) * h,
                         (static_cast<double>(c) + 0.5 + off) * h}) {
          ge += b.eigenfunction(j, x) * b.eigenfunction(k, x) * 0.5 * h;
          gf += cosine_basis(j, x) * cosine_basis(k, x) * 0.5 * h;
        }
      }
      const double expected = (j == k) ? 1.0 : 0.0;
      CHECK(ge == doctest::Approx(expected).epsilon(1e-10));
      CHECK(gf == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("decompose of a constant field is the (0,0) mode") {
  const NeumannBasis1D b(1.0);
  const auto c = decompose([](double, double) { return 1.0; }, b, 4, 4, 64, 64);
  CHECK(c.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t j = 0; j <= 4; ++j)
    for (std::size_t n = 0; n <= 4; ++n)
      if (j || n) CHECK(std::abs(c.at(j, n)) < 1e-12);
}

TEST_CASE("decompose of cos(pi x1) cos(pi x2) is the (1,1) mode with weight 1/2") {
  const NeumannBasis1D b(1.0);
  const auto c = decompose(
      [](double x1, double x2) { return std::cos(kPi * x1) * std::cos(kPi * x2); }, b, 4, 4,
      256, 256);
  CHECK(c.at(1, 1) == doctest::Approx(0.5).epsilon(1e-10));
  for (std::size_t j = 0; j <= 4; ++j)
    for (std::size_t n = 0; n <= 4; ++n)
      if (!(j == 1 && n == 1)) CHECK(std::abs(c.at(j, n)) < 1e-10);
}

TEST_CASE("double-step closed form matches the quadrature decomposition") {
  const NeumannBasis1D b(1.0);
  const auto c = decompose(doublestep_value, b, 15, 15, 1024, 1024);
  for (std::size_t l = 0; 2 * l + 1 <= 15; ++l)
    for (std::size_t p = 0; 2 * p + 1 <= 15; ++p)
      CHECK(c.at(2 * l + 1, 2 * p + 1) ==
            doctest::Approx(doublestep_coefficient(l, p)).epsilon(1e-6));
  // Parity: even-index coefficients vanish.
  for (std::size_t j = 0; j <= 15; ++j)
    for (std::size_t n = 0; n <= 15; ++n)
      if (j % 2 == 0 || n % 2 == 0) CHECK(std::abs(c.at(j, n)) < 1e-10);
}

TEST_CASE("double-step closed-form values") {
  CHECK(doublestep_coefficient(0, 0) == doctest::Approx(-8.0 / (kPi * kPi)).epsilon(1e-15));
  CHECK(doublestep_coefficient(0, 1) == doctest::Approx(8.0 / (3.0 * kPi * kPi)).epsilon(1e-15));
  CHECK(doublestep_coefficient(1, 1) == doctest::Approx(-8.0 / (9.0 * kPi * kPi)).epsilon(1e-15));
}

TEST_CASE("Parseval partial sums approach 1 monotonically for the double step") {
  double prev = 0.0;
  for (std::size_t trunc : {5u, 21u, 51u, 200u}) {
    const double sum = doublestep_matrix(trunc, trunc).parseval_sum();
    CHECK(sum >= prev);
    CHECK(sum <= 1.0 + 1e-12);
    prev = sum;
  }
  CHECK(prev >= 0.98);  // J = N = 200
}

TEST_CASE("free evolution") {
  const NeumannBasis1D b(1.0);
  CoefficientMatrix c(2, 2);
  c.at(0, 1) = 1.0;
  c.at(2, 2) = -0.5;
  SUBCASE("t = 0 is the identity") {
    const auto r = free_evolution(c, b, 0.0);
    for (std::size_t i = 0; i < c.c.size(); ++i) CHECK(r.c[i] == c.c[i]);
  }
  SUBCASE("single-mode decay factor") {
    const auto r = free_evolution(c, b, 0.05);
    CHECK(r.at(0, 1) == doctest::Approx(std::exp(-kPi * kPi * 0.05)).epsilon(1e-13));
    CHECK(r.at(0, 1) == doctest::Approx(std::exp(-std::numbers::pi * std::numbers::pi * 0.05)).epsilon(1e-12));
  }
  SUBCASE("negative time rejected") { CHECK_THROWS_AS(free_evolution(c, b, -0.1), std::domain_error); }
  SUBCASE("Parseval norm non-increasing") {
    for (double t : {0.01, 0.1, 1.0})
      CHECK(free_evolution(c, b, t).parseval_sum() <= c.parseval_sum());
  }
  SUBCASE("semigroup property") {
    const auto r12 = free_evolution(free_evolution(c, b, 0.013), b, 0.037);
    const auto r = free_evolution(c, b, 0.05);
    for (std::size_t i = 0; i < c.c.size(); ++i)
      CHECK(r12.c[i] == doctest::Approx(r.c[i]).epsilon(1e-14));
  }
}

TEST_CASE("synthesize_field inverts decompose for a single mode") {
  const NeumannBasis1D b(1.0);
  CoefficientMatrix c(3, 3);
  SUBCASE("constant") {
    c.at(0, 0) = 1.0;
    const Field2D f = synthesize_field(c, b, Grid2D(1.0, 11, 11));
    for (double v : f.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("cos pi x1 cos pi x2 round trip") {
    const auto dc = decompose(
        [](double x1, double x2) { return std::cos(kPi * x1) * std::cos(kPi * x2); }, b, 3, 3,
        256, 256);
    const Field2D f = synthesize_field(dc, b, Grid2D(1.0, 21, 21));
    for (std::size_t i = 0; i < 21; ++i)
      for (std::size_t j = 0; j < 21; ++j)
        CHECK(f.at(i, j) == doctest::Approx(std::cos(kPi * f.grid.x1(i)) *
                                            std::cos(kPi * f.grid.x2(j)))
                                .epsilon(1e-10));
  }
}

TEST_CASE("double-step partial sums converge to the field in L2") {
  // Parseval: || P_JN theta0 ||^2 = sum c^2 -> ||theta0||^2 = 1; the synthesized
  // field norm must track the coefficient norm.
  const NeumannBasis1D b(1.0);
  const Grid2D grid(1.0, 200, 200);  // even point count: no node on the jump
  double prev_err = 2.0;
  for (std::size_t trunc : {11u, 41u}) {
    const Field2D f = synthesize_field(doublestep_matrix(trunc, trunc), b, grid);
    double err = 0.0;
    Field2D diff = f;
    for (std::size_t i = 0; i < grid.n1; ++i)
      for (std::size_t j = 0; j < grid.n2; ++j)
        diff.at(i, j) -= doublestep_value(grid.x1(i), grid.x2(j));
    err = diff.l2_norm();
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err < 0.25);
}

TEST_CASE("decompose rejects non-finite samples") {
  const NeumannBasis1D b(1.0);
  CHECK_THROWS_AS(decompose([](double, double) { return std::nan(""); }, b, 1, 1, 8, 8),
                  std::invalid_argument);
}
