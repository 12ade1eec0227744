#include "flatheat/gevrey.hpp"

#include <cmath>
#include <string>

#include "flatheat/errors.hpp"

namespace flatheat {

GevreyOrder::GevreyOrder(double s) : s_(s), k_(0.0) {
  if (!(s > 1.0 && s < 2.0))
    throw ConfigError("Gevrey order must satisfy 1 < s < 2, got " + std::to_string(s));
  k_ = 1.0 / (s - 1.0);
}

double phi_step(double sigma, const GevreyOrder& order) {
  if (sigma <= 0.0) return 1.0;
  if (sigma >= 1.0) return 0.0;
  const double k = order.k();
  // Divide top and bottom by the larger exponential to avoid 0/0 underflow.
  const double a = std::pow(1.0 - sigma, -k);  // exponent of the numerator
  const double b = std::pow(sigma, -k);
  if (a <= b) return 1.0 / (1.0 + std::exp(a - b));
  return std::exp(b - a) / (std::exp(b - a) + 1.0);
}

TaylorJet phi_step_jet(double sigma, const GevreyOrder& order, std::size_t m,
                       double snap_distance) {
  if (sigma <= snap_distance) {
    TaylorJet j(sigma, m);
    j.coeffs[0] = 1.0;
    return j;
  }
  if (sigma >= 1.0 - snap_distance) return TaylorJet(sigma, m);

  const double k = order.k();
  const TaylorJet t = jet_variable(sigma, m);
  const TaylorJet one_minus_t = jet_sub(jet_constant(1.0, sigma, m), t);
  // exp(-(1-t)^-k) and exp(-t^-k); the exp recurrence maps an underflowed
  // constant term to the zero jet, so only overflow in the exponent jets can
  // spoil the result.
  const TaylorJet ea = jet_exp(jet_scale(jet_pow(one_minus_t, -k), -1.0));
  const TaylorJet eb = jet_exp(jet_scale(jet_pow(t, -k), -1.0));
  TaylorJet phi = jet_div(ea, jet_add(ea, eb));
  if (!phi.all_finite())
    throw NumericRangeError("phi_step_jet: overflow at sigma=" + std::to_string(sigma) +
                            ", order " + std::to_string(m));
  return phi;
}

}  // namespace flatheat
