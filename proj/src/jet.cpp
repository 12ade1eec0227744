#include "flatheat/jet.hpp"

#include <cmath>
#include <stdexcept>

namespace flatheat {

namespace {

void require_compatible(const TaylorJet& a, const TaylorJet& b) {
  if (a.t0 != b.t0) throw std::invalid_argument("jet arithmetic: mismatched expansion points");
  if (a.coeffs.size() != b.coeffs.size()) throw std::invalid_argument("jet arithmetic: mismatched orders");
}

}  // namespace

double TaylorJet::derivative(std::size_t i) const {
  double fact = 1.0;
  for (std::size_t p = 2; p <= i; ++p) fact *= static_cast<double>(p);
  return coeffs[i] * fact;
}

bool TaylorJet::all_finite() const {
  for (double c : coeffs)
    if (!std::isfinite(c)) return false;
  return true;
}

TaylorJet jet_variable(double t0, std::size_t order) {
  TaylorJet j(t0, order);
  j.coeffs[0] = t0;
  if (order >= 1) j.coeffs[1] = 1.0;
  return j;
}

TaylorJet jet_constant(double c, double t0, std::size_t order) {
  TaylorJet j(t0, order);
  j.coeffs[0] = c;
  return j;
}

TaylorJet jet_add(const TaylorJet& a, const TaylorJet& b) {
  require_compatible(a, b);
  TaylorJet r = a;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
  return r;
}

TaylorJet jet_sub(const TaylorJet& a, const TaylorJet& b) {
  require_compatible(a, b);
  TaylorJet r = a;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] -= b.coeffs[i];
  return r;
}

TaylorJet jet_scale(const TaylorJet& a, double factor) {
  TaylorJet r = a;
  for (double& c : r.coeffs) c *= factor;
  return r;
}

TaylorJet jet_mul(const TaylorJet& a, const TaylorJet& b) {
  require_compatible(a, b);
  TaylorJet r(a.t0, a.order());
  for (std::size_t n = 0; n <= r.order(); ++n) {
    double acc = 0.0;
    for (std::size_t k = 0; k <= n; ++k) acc += a.coeffs[k] * b.coeffs[n - k];
    r.coeffs[n] = acc;
  }
  return r;
}

TaylorJet jet_div(const TaylorJet& a, const TaylorJet& b) {
  require_compatible(a, b);
  if (b.coeffs[0] == 0.0) throw std::domain_error("jet_div: divisor has zero constant term");
  TaylorJet r(a.t0, a.order());
  for (std::size_t n = 0; n <= r.order(); ++n) {
    double acc = a.coeffs[n];
    for (std::size_t k = 1; k <= n; ++k) acc -= b.coeffs[k] * r.coeffs[n - k];
    r.coeffs[n] = acc / b.coeffs[0];
  }
  return r;
}

TaylorJet jet_exp(const TaylorJet& a) {
  TaylorJet r(a.t0, a.order());
  r.coeffs[0] = std::exp(a.coeffs[0]);
  for (std::size_t n = 1; n <= r.order(); ++n) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
      acc += static_cast<double>(k) * a.coeffs[k] * r.coeffs[n - k];
    r.coeffs[n] = acc / static_cast<double>(n);
  }
  return r;
}

TaylorJet jet_pow(const TaylorJet& a, double alpha) {
  if (!(a.coeffs[0] > 0.0)) throw std::domain_error("jet_pow: non-positive base");
  TaylorJet r(a.t0, a.order());
  r.coeffs[0] = std::pow(a.coeffs[0], alpha);
  for (std::size_t n = 1; n <= r.order(); ++n) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      const double w = alpha * static_cast<double>(k) - static_cast<double>(n - k);
      acc += w * a.coeffs[k] * r.coeffs[n - k];
    }
    r.coeffs[n] = acc / (static_cast<double>(n) * a.coeffs[0]);
  }
  return r;
}

}  // namespace flatheat
