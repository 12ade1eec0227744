#pragma once

#include <cstddef>
#include <vector>

namespace flatheat {

/// Truncated Taylor expansion of a scalar function at a point, stored in
/// scaled form: coeffs[i] = f^(i)(t0) / i!.  Scaled storage keeps high-order
/// jets of rapidly growing functions inside binary64 range.
struct TaylorJet {
  double t0 = 0.0;
  std::vector<double> coeffs;  // size order()+1

  TaylorJet() = default;
  TaylorJet(double t0_, std::size_t order) : t0(t0_), coeffs(order + 1, 0.0) {}

  std::size_t order() const { return coeffs.size() - 1; }

  /// Raw derivative f^(i)(t0) = coeffs[i] * i!.
  double derivative(std::size_t i) const;

  bool all_finite() const;
};

/// Jet of the identity map t -> t at t0: (t0, 1, 0, ...).
TaylorJet jet_variable(double t0, std::size_t order);

/// Jet of a constant: (c, 0, ...).
TaylorJet jet_constant(double c, double t0, std::size_t order);

TaylorJet jet_add(const TaylorJet& a, const TaylorJet& b);
TaylorJet jet_sub(const TaylorJet& a, const TaylorJet& b);
TaylorJet jet_scale(const TaylorJet& a, double factor);

/// Truncated Cauchy product.
TaylorJet jet_mul(const TaylorJet& a, const TaylorJet& b);

/// Truncated quotient; requires b.coeffs[0] != 0.
TaylorJet jet_div(const TaylorJet& a, const TaylorJet& b);

/// exp(a) by the standard power-series recurrence.
TaylorJet jet_exp(const TaylorJet& a);

/// a^alpha for real alpha; requires a.coeffs[0] > 0.
TaylorJet jet_pow(const TaylorJet& a, double alpha);

}  // namespace flatheat
