#include "flatheat/field.hpp"

#include <cmath>
#include <stdexcept>

namespace flatheat {

Grid2D::Grid2D(double L_, std::size_t n1_, std::size_t n2_) : L(L_), n1(n1_), n2(n2_) {
  if (!(L > 0.0)) throw std::invalid_argument("Grid2D: L must be positive");
  if (n1 < 3 || n2 < 3) throw std::invalid_argument("Grid2D: need at least 3 points per direction");
}

bool Field2D::all_finite() const {
  for (double v : values)
    if (!std::isfinite(v)) return false;
  return true;
}

namespace {

template <typename F>
double trapezoid2d(const Field2D& f, F&& integrand) {
  const Grid2D& g = f.grid;
  double acc = 0.0;
  for (std::size_t i = 0; i < g.n1; ++i) {
    const double w1 = (i == 0 || i == g.n1 - 1) ? 0.5 : 1.0;
    double row = 0.0;
    for (std::size_t j = 0; j < g.n2; ++j) {
      const double w2 = (j == 0 || j == g.n2 - 1) ? 0.5 : 1.0;
      row += w2 * integrand(f.at(i, j));
    }
    acc += w1 * row;
  }
  return acc * g.h1() * g.h2();
}

}  // namespace

double Field2D::integral() const {
  return trapezoid2d(*this, [](double v) { return v; });
}

double Field2D::l2_norm() const {
  return std::sqrt(trapezoid2d(*this, [](double v) { return v * v; }));
}

double Field2D::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace flatheat
