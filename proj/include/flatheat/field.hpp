#pragma once

#include <cstddef>
#include <vector>

namespace flatheat {

/// Uniform node-centered grid on [0,L] x [0,1], boundaries included.
struct Grid2D {
  double L = 1.0;
  std::size_t n1 = 3;  // points along x1
  std::size_t n2 = 3;  // points along x2

  Grid2D() = default;
  Grid2D(double L_, std::size_t n1_, std::size_t n2_);

  double h1() const { return L / static_cast<double>(n1 - 1); }
  double h2() const { return 1.0 / static_cast<double>(n2 - 1); }
  double x1(std::size_t i) const { return static_cast<double>(i) * h1(); }
  double x2(std::size_t j) const { return static_cast<double>(j) * h2(); }
};

/// Sampled scalar field on a Grid2D, row-major over (i1, i2).
struct Field2D {
  Grid2D grid;
  double t = 0.0;
  std::vector<double> values;  // size n1*n2

  Field2D() = default;
  explicit Field2D(const Grid2D& g, double time = 0.0)
      : grid(g), t(time), values(g.n1 * g.n2, 0.0) {}

  double& at(std::size_t i1, std::size_t i2) { return values[i1 * grid.n2 + i2]; }
  double at(std::size_t i1, std::size_t i2) const { return values[i1 * grid.n2 + i2]; }

  bool all_finite() const;

  /// Trapezoidal approximation of the integral of the field over the domain.
  double integral() const;

  /// Trapezoidal approximation of the L2(Omega) norm.
  double l2_norm() const;

  double max_abs() const;
};

}  // namespace flatheat
