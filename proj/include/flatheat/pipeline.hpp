#pragma once

#include <string>
#include <variant>
#include <vector>

#include "flatheat/config.hpp"
#include "flatheat/fdsolver.hpp"
#include "flatheat/flatness.hpp"
#include "flatheat/report.hpp"
#include "flatheat/spectral.hpp"

namespace flatheat {

/// Builds the coefficient matrix of the configured initial condition: the
/// closed form for the double step and single modes, quadrature otherwise.
CoefficientMatrix initial_coefficients(const ExperimentConfig& cfg);

/// Samples the configured initial condition on the solver grid (averaging
/// convention on discontinuity lines).
Field2D initial_field(const ExperimentConfig& cfg, const Grid2D& grid);

/// Full two-phase experiment: decompose, synthesize the control, run the
/// finite-difference simulation over [0, T] with u = 0 enforced for t <= tau,
/// write snapshots, control surface and report under config.output_dir.
RunReport run_experiment(const ExperimentConfig& cfg);

struct SweepEntry {
  double tau = 0.0;
  bool ok = false;
  std::string error;  // set when !ok
  RunReport report;   // valid when ok
};

/// One full run per tau value; invalid entries are reported per-entry and do
/// not abort the rest of the sweep.
std::vector<SweepEntry> sweep_tau(const ExperimentConfig& base, const std::vector<double>& taus);

// File exports (CSV with full round-trip precision).
void export_snapshot(const Field2D& field, const std::string& path);
Field2D import_snapshot(const std::string& path);
void export_control(const ControlSurface& surface, const std::string& path);
ControlSurface import_control(const std::string& path);
void export_report(const RunReport& report, const std::string& path);
RunReport import_report(const std::string& path);
void export_coefficients(const CoefficientMatrix& c, const std::string& path);

}  // namespace flatheat
