#include "flatheat/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "flatheat/errors.hpp"

namespace flatheat {

namespace {
constexpr double kPi = std::numbers::pi;
}

NeumannBasis1D::NeumannBasis1D(double L_) : L(L_) {
  if (!(L > 0.0)) throw std::invalid_argument("NeumannBasis1D: L must be positive");
}

double NeumannBasis1D::eigenvalue(std::size_t j) const {
  const double w = static_cast<double>(j) * kPi / L;
  return w * w;
}

double NeumannBasis1D::eigenfunction(std::size_t j, double x1) const {
  if (x1 < 0.0 || x1 > L)
    throw std::domain_error("eigenfunction: x1 outside [0,L]");
  if (j == 0) return 1.0 / std::sqrt(L);
  return std::sqrt(2.0 / L) * std::cos(static_cast<double>(j) * kPi * x1 / L);
}

double cosine_basis(std::size_t n, double x2) {
  if (n == 0) return 1.0;
  return std::sqrt(2.0) * std::cos(static_cast<double>(n) * kPi * x2);
}

double cosine_weight(std::size_t n) { return n == 0 ? 1.0 : std::sqrt(2.0); }

double CoefficientMatrix::parseval_sum() const {
  double acc = 0.0;
  for (double v : c) acc += v * v;
  return acc;
}

CoefficientMatrix decompose(const FieldEvaluator& theta0, const NeumannBasis1D& basis,
                            std::size_t J, std::size_t N,
                            std::size_t cells1, std::size_t cells2) {
  // Two Gauss-Legendre nodes per cell, at cell center +- h/(2 sqrt 3).
  const double off = 0.5 / std::sqrt(3.0);
  const std::size_t q1 = 2 * cells1, q2 = 2 * cells2;
  const double hc1 = basis.L / static_cast<double>(cells1);
  const double hc2 = 1.0 / static_cast<double>(cells2);

  std::vector<double> nodes1(q1), nodes2(q2);
  for (std::size_t c = 0; c < cells1; ++c) {
    const double mid = (static_cast<double>(c) + 0.5) * hc1;
    nodes1[2 * c] = mid - off * hc1;
    nodes1[2 * c + 1] = mid + off * hc1;
  }
  for (std::size_t c = 0; c < cells2; ++c) {
    const double mid = (static_cast<double>(c) + 0.5) * hc2;
    nodes2[2 * c] = mid - off * hc2;
    nodes2[2 * c + 1] = mid + off * hc2;
  }

  // Weighted basis tables; equal Gauss weights h/2 folded in.
  std::vector<double> E((J + 1) * q1), F((N + 1) * q2);
  for (std::size_t j = 0; j <= J; ++j)
    for (std::size_t a = 0; a < q1; ++a)
      E[j * q1 + a] = basis.eigenfunction(j, nodes1[a]) * 0.5 * hc1;
  for (std::size_t n = 0; n <= N; ++n)
    for (std::size_t b = 0; b < q2; ++b)
      F[n * q2 + b] = cosine_basis(n, nodes2[b]) * 0.5 * hc2;

  // G[a][n] = sum_b theta0(x1_a, x2_b) F[n][b], streamed one x1 node at a time.
  CoefficientMatrix out(J, N);
  std::vector<double> samples(q2), g(N + 1);
  for (std::size_t a = 0; a < q1; ++a) {
    for (std::size_t b = 0; b < q2; ++b) {
      const double v = theta0(nodes1[a], nodes2[b]);
      if (!std::isfinite(v))
        throw std::invalid_argument("decompose: non-finite sample at (" +
                                    std::to_string(nodes1[a]) + ", " +
                                    std::to_string(nodes2[b]) + ")");
      samples[b] = v;
    }
    for (std::size_t n = 0; n <= N; ++n) {
      double acc = 0.0;
      const double* Fn = &F[n * q2];
      for (std::size_t b = 0; b < q2; ++b) acc += samples[b] * Fn[b];
      g[n] = acc;
    }
    for (std::size_t j = 0; j <= J; ++j) {
      const double w = E[j * q1 + a];
      for (std::size_t n = 0; n <= N; ++n) out.at(j, n) += w * g[n];
    }
  }
  return out;
}

double doublestep_coefficient(std::size_t l, std::size_t p) {
  const double j = static_cast<double>(2 * l + 1);
  const double n = static_cast<double>(2 * p + 1);
  const double sign = ((l + p) % 2 == 0) ? 1.0 : -1.0;
  return -8.0 * sign / (kPi * kPi * j * n);
}

CoefficientMatrix doublestep_matrix(std::size_t J, std::size_t N) {
  CoefficientMatrix c(J, N);
  for (std::size_t l = 0; 2 * l + 1 <= J; ++l)
    for (std::size_t p = 0; 2 * p + 1 <= N; ++p)
      c.at(2 * l + 1, 2 * p + 1) = doublestep_coefficient(l, p);
  return c;
}

double doublestep_value(double x1, double x2) {
  auto sgn = [](double x) { return x < 0.5 ? 1.0 : (x > 0.5 ? -1.0 : 0.0); };
  return -sgn(x1) * sgn(x2);
}

CoefficientMatrix free_evolution(const CoefficientMatrix& c, const NeumannBasis1D& basis,
                                 double t) {
  if (t < 0.0) throw std::domain_error("free_evolution: t must be non-negative");
  CoefficientMatrix out = c;
  for (std::size_t j = 0; j <= c.J; ++j) {
    const double lam = basis.eigenvalue(j);
    for (std::size_t n = 0; n <= c.N; ++n) {
      const double mu = static_cast<double>(n) * kPi;
      out.at(j, n) = c.at(j, n) * std::exp(-(lam + mu * mu) * t);
    }
  }
  return out;
}

double synthesize_point(const CoefficientMatrix& c, const NeumannBasis1D& basis,
                        double x1, double x2) {
  double acc = 0.0;
  for (std::size_t j = 0; j <= c.J; ++j) {
    const double ej = basis.eigenfunction(j, x1);
    double inner = 0.0;
    for (std::size_t n = 0; n <= c.N; ++n) inner += c.at(j, n) * cosine_basis(n, x2);
    acc += ej * inner;
  }
  return acc;
}

Field2D synthesize_field(const CoefficientMatrix& c, const NeumannBasis1D& basis,
                         const Grid2D& grid, double t) {
  Field2D f(grid, t);
  // Tensor structure: evaluate the two 1-D basis tables once.
  std::vector<double> E((c.J + 1) * grid.n1), F((c.N + 1) * grid.n2);
  for (std::size_t j = 0; j <= c.J; ++j)
    for (std::size_t i = 0; i < grid.n1; ++i)
      E[j * grid.n1 + i] = basis.eigenfunction(j, grid.x1(i));
  for (std::size_t n = 0; n <= c.N; ++n)
    for (std::size_t i = 0; i < grid.n2; ++i)
      F[n * grid.n2 + i] = cosine_basis(n, grid.x2(i));

  std::vector<double> row(grid.n2);
  for (std::size_t j = 0; j <= c.J; ++j) {
    for (std::size_t i2 = 0; i2 < grid.n2; ++i2) {
      double acc = 0.0;
      for (std::size_t n = 0; n <= c.N; ++n) acc += c.at(j, n) * F[n * grid.n2 + i2];
      row[i2] = acc;
    }
    for (std::size_t i1 = 0; i1 < grid.n1; ++i1) {
      const double ej = E[j * grid.n1 + i1];
      for (std::size_t i2 = 0; i2 < grid.n2; ++i2) f.at(i1, i2) += ej * row[i2];
    }
  }
  return f;
}

}  // namespace flatheat
