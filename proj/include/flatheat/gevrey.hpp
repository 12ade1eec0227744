#pragma once

#include "flatheat/jet.hpp"

namespace flatheat {

/// Gevrey regularity order s in (1,2), with the derived exponent k = 1/(s-1).
class GevreyOrder {
 public:
  explicit GevreyOrder(double s);  // throws ConfigError unless 1 < s < 2

  double s() const { return s_; }
  double k() const { return k_; }

 private:
  double s_;
  double k_;
};

/// Smooth step: 1 for sigma <= 0, 0 for sigma >= 1, and on (0,1) the ratio
/// exp(-(1-sigma)^-k) / (exp(-(1-sigma)^-k) + exp(-sigma^-k)).
/// Non-increasing, with all derivatives vanishing at both endpoints.
double phi_step(double sigma, const GevreyOrder& order);

/// Order-m jet of phi_step at sigma in [0,1].  Points within snap_distance of
/// an endpoint return the exact endpoint jet (the exponent sigma^-k overflows
/// long before the function value moves off its endpoint value).
TaylorJet phi_step_jet(double sigma, const GevreyOrder& order, std::size_t m,
                       double snap_distance = 1e-12);

}  // namespace flatheat
