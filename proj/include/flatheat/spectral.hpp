#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "flatheat/field.hpp"

namespace flatheat {

/// Neumann Laplacian eigenbasis on (0,L): eigenvalues (j*pi/L)^2 with the
/// orthonormal cosine eigenfunctions.
struct NeumannBasis1D {
  double L = 1.0;
  explicit NeumannBasis1D(double L_);

  double eigenvalue(std::size_t j) const;
  double eigenfunction(std::size_t j, double x1) const;  // throws on x1 outside [0,L]
};

/// x2 basis on (0,1): f_0 = 1, f_n = sqrt(2) cos(n pi x2), orthonormal in L2(0,1).
double cosine_basis(std::size_t n, double x2);

/// Weight relating f_n to the plain cosine: f_n = beta_n * cos(n pi x2).
double cosine_weight(std::size_t n);

/// Double-index coefficients c[j][n] of a field against e_j(x1) f_n(x2),
/// j = 0..J, n = 0..N.
struct CoefficientMatrix {
  std::size_t J = 0;
  std::size_t N = 0;
  std::vector<double> c;  // row-major (J+1) x (N+1)

  CoefficientMatrix() = default;
  CoefficientMatrix(std::size_t J_, std::size_t N_)
      : J(J_), N(N_), c((J_ + 1) * (N_ + 1), 0.0) {}

  double& at(std::size_t j, std::size_t n) { return c[j * (N + 1) + n]; }
  double at(std::size_t j, std::size_t n) const { return c[j * (N + 1) + n]; }

  double parseval_sum() const;  // sum of squared coefficients
};

using FieldEvaluator = std::function<double(double, double)>;

/// Project a field onto the tensor basis by composite 2-point Gauss-Legendre
/// quadrature with cells1 x cells2 uniform cells.  Gauss nodes never fall on
/// cell boundaries, so piecewise-smooth data with jumps on cell edges is
/// integrated at full order.
CoefficientMatrix decompose(const FieldEvaluator& theta0, const NeumannBasis1D& basis,
                            std::size_t J, std::size_t N,
                            std::size_t cells1 = 1024, std::size_t cells2 = 1024);

/// Closed-form coefficient of the double-step initial condition at the
/// odd-odd index (2l+1, 2p+1); even-index coefficients vanish.
double doublestep_coefficient(std::size_t l, std::size_t p);

/// Closed-form coefficient matrix of the double-step, truncated at (J, N).
CoefficientMatrix doublestep_matrix(std::size_t J, std::size_t N);

/// Pointwise value of the double-step initial condition, with the averaging
/// convention (value 0) on the discontinuity lines x=1/2.
double doublestep_value(double x1, double x2);

/// Heat-semigroup scaling c[j][n] *= exp(-(lambda_j + n^2 pi^2) t), t >= 0.
CoefficientMatrix free_evolution(const CoefficientMatrix& c, const NeumannBasis1D& basis, double t);

/// Inverse transform: sample sum_{j,n} c[j][n] e_j(x1) f_n(x2) on a grid.
Field2D synthesize_field(const CoefficientMatrix& c, const NeumannBasis1D& basis,
                         const Grid2D& grid, double t = 0.0);

/// Pointwise series value at a single location.
double synthesize_point(const CoefficientMatrix& c, const NeumannBasis1D& basis,
                        double x1, double x2);

}  // namespace flatheat
