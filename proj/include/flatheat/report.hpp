#pragma once

#include <map>
#include <string>
#include <vector>

#include "flatheat/config.hpp"

namespace flatheat {

/// Machine-readable summary of one experiment run.  Serialized as a sectioned
/// key-value text document with full decimal precision.
struct RunReport {
  ExperimentConfig config;
  std::vector<std::pair<double, double>> snapshot_norms;  // (t, L2 norm)
  double initial_norm = 0.0;
  double final_norm = 0.0;
  double final_relative_norm = 0.0;
  double max_abs_u = 0.0;
  double control_effort = 0.0;            // L2 norm of u over [tau,T]x(0,L)
  double phase_boundary_rel_error = 0.0;  // FD vs spectral at t = tau
  double compat_k0_max_abs = 0.0;
  double compat_k1_max_abs = 0.0;
  double gevrey_M = 0.0;
  double gevrey_R = 0.0;
  bool gevrey_fit_defined = false;
  double derivative_bound_constant = 0.0;      // sup_{j,i} |y_{j,i}| tau^i / i!
  double tail_i_magnitude = 0.0;          // last retained i-term of the control series
  double tail_j_magnitude = 0.0;          // last retained j-mode contribution to u
  double seconds_decompose = 0.0;
  double seconds_synthesis = 0.0;
  double seconds_simulation = 0.0;

  std::string serialize() const;
  static RunReport parse(const std::string& text);
};

std::string format_full(double v);

}  // namespace flatheat
