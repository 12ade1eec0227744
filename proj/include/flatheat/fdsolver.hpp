#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "flatheat/field.hpp"

namespace flatheat {

/// Flux control at x2 = 1 as a function of (t, x1).
using ControlEvaluator = std::function<double(double, double)>;

/// Sampled control surface u(t_k, x1_m), time-major.
struct ControlSurface {
  std::vector<double> times;
  std::vector<double> x1;
  std::vector<double> u;  // size times.size() * x1.size()

  double at(std::size_t k, std::size_t m) const { return u[k * x1.size() + m]; }
  double& at(std::size_t k, std::size_t m) { return u[k * x1.size() + m]; }

  double max_abs() const;
  /// Trapezoidal L2 norm over the (t, x1) rectangle covered by the samples.
  double l2_effort() const;
};

/// Peaceman-Rachford ADI solver for the heat equation on [0,L] x [0,1] with
/// insulated walls except a prescribed flux u(t, x1) at x2 = 1.  Neumann
/// conditions enter through second-order mirror ghost nodes; the flux ghost is
/// theta_ghost = theta_interior + 2 h2 u, with u taken at the half-step time.
class AdiSolver {
 public:
  AdiSolver(Grid2D grid, ControlEvaluator control);

  /// Advance one ADI step from field.t to field.t + dt.
  Field2D step(const Field2D& field, double dt) const;

  struct Trajectory {
    std::vector<Field2D> snapshots;
    Field2D final_field;
    long steps = 0;
  };

  /// March from theta0.t over [theta0.t, t_end] with fixed dt, capturing the
  /// field at each requested snapshot time (which must land on the step grid).
  Trajectory simulate(const Field2D& theta0, double t_end, double dt,
                      const std::vector<double>& snapshot_times = {}) const;

 private:
  Grid2D grid_;
  ControlEvaluator control_;
};

}  // namespace flatheat
