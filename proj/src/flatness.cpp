#include "flatheat/flatness.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace flatheat {

namespace {
constexpr double kPi = std::numbers::pi;

// Scaled exponential-sum jet shared by tau_coefficients and ybar_jet:
// coeffs[i] = (1/i!) sum_n beta_n row[n] (-n^2 pi^2)^i exp(-n^2 pi^2 t).
// The factor (n^2 pi^2)^i / i! is built by recurrence so no intermediate
// exceeds the final (finite) magnitude by more than the last multiplier.
void accumulate_exponential_sum(std::span<const double> row, double t,
                                std::span<double> coeffs) {
  const std::size_t N = row.size() - 1;
  std::vector<double> d(N + 1), p(N + 1, 1.0);
  for (std::size_t n = 0; n <= N; ++n) {
    const double mu2 = static_cast<double>(n) * static_cast<double>(n) * kPi * kPi;
    d[n] = cosine_weight(n) * row[n] * std::exp(-mu2 * t);
  }
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    double acc = 0.0;
    for (std::size_t n = 0; n <= N; ++n) acc += d[n] * p[n];
    coeffs[i] = sign * acc;
    for (std::size_t n = 0; n <= N; ++n) {
      const double mu2 = static_cast<double>(n) * static_cast<double>(n) * kPi * kPi;
      p[n] *= mu2 / static_cast<double>(i + 1);
    }
  }
}

}  // namespace

TauJetMatrix tau_coefficients(const CoefficientMatrix& c, double tau, std::size_t I) {
  if (!(tau > 0.0)) throw std::domain_error("tau_coefficients: tau must be positive");
  TauJetMatrix m(tau, c.J, I);
  for (std::size_t j = 0; j <= c.J; ++j) {
    std::span<const double> row(&c.c[j * (c.N + 1)], c.N + 1);
    accumulate_exponential_sum(row, tau, std::span<double>(&m.scaled[j * (I + 1)], I + 1));
  }
  return m;
}

TaylorJet ybar_jet(std::span<const double> c_row, double t, std::size_t I) {
  TaylorJet jet(t, I);
  accumulate_exponential_sum(c_row, t, jet.coeffs);
  return jet;
}

FlatSynthesis::FlatSynthesis(CoefficientMatrix c, NeumannBasis1D basis, double tau,
                             double T, GevreyOrder order, std::size_t I)
    : c_(std::move(c)), basis_(basis), tau_(tau), T_(T), order_(order), I_(I) {
  if (!(tau > 0.0 && tau < T)) throw std::domain_error("FlatSynthesis: need 0 < tau < T");
  fact_.resize(I_ + 2, 1.0);
  for (std::size_t i = 1; i < fact_.size(); ++i)
    fact_[i] = fact_[i - 1] * static_cast<double>(i);
  control_weight_.assign(I_ + 2, 0.0);
  state_weight_.assign(I_ + 2, 0.0);
  state_weight_[0] = 1.0;
  for (std::size_t i = 1; i <= I_ + 1; ++i) {
    // i!/(2i-1)! and i!/(2i)! via lgamma; exact enough and overflow-free.
    control_weight_[i] = std::exp(std::lgamma(static_cast<double>(i) + 1.0) -
                                  std::lgamma(2.0 * static_cast<double>(i)));
    state_weight_[i] = std::exp(std::lgamma(static_cast<double>(i) + 1.0) -
                                std::lgamma(2.0 * static_cast<double>(i) + 1.0));
  }
}

TaylorJet FlatSynthesis::flat_output_jet(std::size_t j, double t) const {
  if (t < tau_ || t > T_) throw std::domain_error("flat_output_jet: t outside [tau, T]");
  const double span = T_ - tau_;
  const double sigma = (t - tau_) / span;
  // Jet of phi in the t variable: each sigma-derivative picks up 1/span.
  TaylorJet phi = phi_step_jet(sigma, order_, I_ + 1);
  double scale = 1.0;
  for (std::size_t i = 0; i <= phi.order(); ++i) {
    phi.coeffs[i] *= scale;
    scale /= span;
  }
  phi.t0 = t;
  TaylorJet yb = ybar_jet(std::span<const double>(&c_.c[j * (c_.N + 1)], c_.N + 1), t, I_ + 1);
  return jet_mul(phi, yb);
}

TaylorJet FlatSynthesis::mode_series_jet(std::size_t j, double t) const {
  return flat_output_jet(j, t);
}

double FlatSynthesis::control(double t, double x1) const {
  std::array<double, 1> xs{x1};
  return control_profile(t, std::span<const double>(xs))[0];
}

std::vector<double> FlatSynthesis::control_profile(double t,
                                                   std::span<const double> x1_samples) const {
  if (t < 0.0 || t > T_) throw std::domain_error("control_profile: t outside [0, T]");
  std::vector<double> u(x1_samples.size(), 0.0);
  if (t <= tau_) return u;
  for (std::size_t j = 0; j <= c_.J; ++j) {
    const TaylorJet y = mode_series_jet(j, t);
    double series = 0.0;
    for (std::size_t i = 1; i <= I_; ++i) series += y.coeffs[i] * control_weight_[i];
    const double amp = std::exp(-basis_.eigenvalue(j) * t) * series;
    for (std::size_t m = 0; m < u.size(); ++m)
      u[m] += amp * basis_.eigenfunction(j, x1_samples[m]);
  }
  return u;
}

double FlatSynthesis::state(double t, double x1, double x2) const {
  return time_derivative(t, x1, x2, 0);
}

double FlatSynthesis::time_derivative(double t, double x1, double x2, std::size_t k) const {
  if (t < tau_ || t > T_) throw std::domain_error("state series: t outside [tau, T]");
  if (x1 < 0.0 || x1 > basis_.L || x2 < 0.0 || x2 > 1.0)
    throw std::domain_error("state series: (x1, x2) outside the domain");
  if (k > 1) throw std::domain_error("time_derivative: only k in {0,1} supported");
  const double x2sq = x2 * x2;
  double total = 0.0;
  for (std::size_t j = 0; j <= c_.J; ++j) {
    const TaylorJet y = mode_series_jet(j, t);
    const double lam = basis_.eigenvalue(j);
    double series = 0.0;
    double x2pow = 1.0;  // x2^(2i)
    for (std::size_t i = 0; i <= I_; ++i) {
      double term;
      if (k == 0) {
        term = y.coeffs[i];
      } else {
        // d/dt [e^{-lam t} y^{(i)}] = e^{-lam t} (y^{(i+1)} - lam y^{(i)});
        // scaled: y^{(i+1)} = coeffs[i+1]*(i+1)!.
        term = y.coeffs[i + 1] * (fact_[i + 1] / fact_[i]) - lam * y.coeffs[i];
      }
      series += term * state_weight_[i] * x2pow;
      x2pow *= x2sq;
    }
    total += std::exp(-lam * t) * basis_.eigenfunction(j, x1) * series;
  }
  return total;
}

double FlatSynthesis::state_x2_derivative(double t, double x1, double x2) const {
  if (t < tau_ || t > T_) throw std::domain_error("state series: t outside [tau, T]");
  double total = 0.0;
  for (std::size_t j = 0; j <= c_.J; ++j) {
    const TaylorJet y = mode_series_jet(j, t);
    double series = 0.0;
    for (std::size_t i = 1; i <= I_; ++i)
      series += y.coeffs[i] * control_weight_[i] * std::pow(x2, 2.0 * static_cast<double>(i) - 1.0);
    total += std::exp(-basis_.eigenvalue(j) * t) * basis_.eigenfunction(j, x1) * series;
  }
  return total;
}

double FlatSynthesis::tail_magnitude_i(double t, double x1) const {
  if (t <= tau_ || t > T_) return 0.0;
  double tail = 0.0;
  for (std::size_t j = 0; j <= c_.J; ++j) {
    const TaylorJet y = mode_series_jet(j, t);
    tail += std::abs(std::exp(-basis_.eigenvalue(j) * t) * basis_.eigenfunction(j, x1) *
                     y.coeffs[I_] * control_weight_[I_]);
  }
  return tail;
}

FlatTrajectorySet FlatSynthesis::sample_trajectories(std::size_t num_times) const {
  if (num_times < 2) throw std::invalid_argument("sample_trajectories: need at least 2 times");
  FlatTrajectorySet traj;
  traj.tau = tau_;
  traj.T = T_;
  traj.s = order_.s();
  traj.I = I_;
  traj.times.resize(num_times);
  traj.jets.resize(c_.J + 1);
  for (std::size_t k = 0; k < num_times; ++k)
    traj.times[k] = tau_ + (T_ - tau_) * static_cast<double>(k) / static_cast<double>(num_times - 1);
  for (std::size_t j = 0; j <= c_.J; ++j) {
    traj.jets[j].reserve(num_times);
    for (double t : traj.times) traj.jets[j].push_back(flat_output_jet(j, t));
  }
  return traj;
}

std::optional<GevreyEstimate> fit_gevrey_envelope(const FlatTrajectorySet& traj) {
  // Linear regression of log|y^(i)| - s log i! against i.
  double sum_i = 0.0, sum_ii = 0.0, sum_v = 0.0, sum_iv = 0.0;
  std::size_t count = 0;
  std::vector<double> lfact;
  std::vector<std::pair<double, double>> points;  // (i, value)
  for (const auto& mode : traj.jets) {
    for (const auto& jet : mode) {
      for (std::size_t i = 0; i <= jet.order(); ++i) {
        const double lg = std::lgamma(static_cast<double>(i) + 1.0);
        const double mag = std::abs(jet.coeffs[i]);
        if (mag < 1e-300) continue;
        const double v = std::log(mag) + lg - traj.s * lg;  // log of raw derivative, Gevrey-scaled
        const double di = static_cast<double>(i);
        points.emplace_back(di, v);
        sum_i += di;
        sum_ii += di * di;
        sum_v += v;
        sum_iv += di * v;
        ++count;
      }
    }
  }
  if (count < 2) return std::nullopt;
  const double n = static_cast<double>(count);
  const double denom = n * sum_ii - sum_i * sum_i;
  if (denom == 0.0) return std::nullopt;
  const double slope = (n * sum_iv - sum_i * sum_v) / denom;       // = -log R
  const double intercept = (sum_v - slope * sum_i) / n;            // = log M
  GevreyEstimate est;
  est.R = std::exp(-slope);
  // Shift M up so the envelope dominates every sample.
  double max_res = 0.0;
  for (const auto& [di, v] : points)
    max_res = std::max(max_res, v - (intercept + slope * di));
  est.M = std::exp(intercept + max_res);
  est.max_residual = max_res;
  if (!std::isfinite(est.M) || !std::isfinite(est.R) || est.M <= 0.0 || est.R <= 0.0)
    return std::nullopt;
  return est;
}

}  // namespace flatheat
