#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "flatheat/gevrey.hpp"
#include "flatheat/jet.hpp"
#include "flatheat/spectral.hpp"

namespace flatheat {

/// Derivative data of the smoothed state at the switch time: y[j][i] is the
/// i-th derivative of the free-evolved mode trace, stored i!-scaled.
struct TauJetMatrix {
  double tau = 0.0;
  std::size_t J = 0;
  std::size_t I = 0;
  std::vector<double> scaled;  // scaled[j*(I+1)+i] = y_{j,i} / i!

  TauJetMatrix() = default;
  TauJetMatrix(double tau_, std::size_t J_, std::size_t I_)
      : tau(tau_), J(J_), I(I_), scaled((J_ + 1) * (I_ + 1), 0.0) {}

  double& at(std::size_t j, std::size_t i) { return scaled[j * (I + 1) + i]; }
  double at(std::size_t j, std::size_t i) const { return scaled[j * (I + 1) + i]; }
};

/// Envelope constants of a fitted bound M i!^s / R^i.
struct GevreyEstimate {
  double M = 0.0;
  double R = 0.0;
  double max_residual = 0.0;  // max over samples of log|y| - log(envelope)
};

/// Jets of y_j on a time grid over [tau, T], with construction metadata.
struct FlatTrajectorySet {
  double tau = 0.0;
  double T = 0.0;
  double s = 0.0;
  std::size_t I = 0;
  std::vector<double> times;
  std::vector<std::vector<TaylorJet>> jets;  // jets[j][k] at times[k]
};

/// Switch-time derivative data: scaled y_{j,i}/i! with
/// y_{j,i} = sum_n beta_n c[j][n] exp(-n^2 pi^2 tau) (-n^2 pi^2)^i.
TauJetMatrix tau_coefficients(const CoefficientMatrix& c, double tau, std::size_t I);

/// Jet of ybar_j(t) = sum_n beta_n c[j][n] exp(-n^2 pi^2 t) at t > 0.
TaylorJet ybar_jet(std::span<const double> c_row, double t, std::size_t I);

/// Evaluates the state and control series synthesized from a coefficient
/// matrix. Immutable after construction; safe for concurrent reads.
class FlatSynthesis {
 public:
  FlatSynthesis(CoefficientMatrix c, NeumannBasis1D basis, double tau, double T,
                GevreyOrder order, std::size_t I);

  double tau() const { return tau_; }
  double T() const { return T_; }
  std::size_t jet_order() const { return I_; }
  const CoefficientMatrix& coefficients() const { return c_; }
  const NeumannBasis1D& basis() const { return basis_; }

  /// Jet of y_j(t) = phi_s((t-tau)/(T-tau)) * ybar_j(t), t in [tau, T].
  TaylorJet flat_output_jet(std::size_t j, double t) const;

  /// Control trace u(t, x1); identically zero for t <= tau and at t = T.
  double control(double t, double x1) const;
  std::vector<double> control_profile(double t, std::span<const double> x1_samples) const;

  /// State series theta(t, x1, x2) for t in [tau, T].
  double state(double t, double x1, double x2) const;

  /// Term-wise k-th time derivative of the state series, k in {0, 1}.
  double time_derivative(double t, double x1, double x2, std::size_t k) const;

  /// Term-wise x2-derivative of the state series (vanishes at x2 = 0).
  double state_x2_derivative(double t, double x1, double x2) const;

  /// Magnitude of the last retained control-series terms (truncation audit).
  double tail_magnitude_i(double t, double x1) const;

  /// Sample jets of every mode on a uniform time grid over [tau, T].
  FlatTrajectorySet sample_trajectories(std::size_t num_times) const;

 private:
  CoefficientMatrix c_;
  NeumannBasis1D basis_;
  double tau_;
  double T_;
  GevreyOrder order_;
  std::size_t I_;
  std::vector<double> fact_;              // i!
  std::vector<double> control_weight_;    // i!/(2i-1)!, 0 at i=0
  std::vector<double> state_weight_;      // i!/(2i)!

  TaylorJet mode_series_jet(std::size_t j, double t) const;
};

/// Least-squares fit of log|y_j^(i)(t)| <= log M + s log i! - i log R over all
/// non-negligible samples.  Returns nullopt for an (all but) zero trajectory.
std::optional<GevreyEstimate> fit_gevrey_envelope(const FlatTrajectorySet& traj);

}  // namespace flatheat
