// Command-line driver for the two-phase boundary-control experiment.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flatheat/errors.hpp"
#include "flatheat/pipeline.hpp"

namespace fs = std::filesystem;
using namespace flatheat;

namespace {

ExperimentConfig load_config(const std::string& config_path,
                             const std::vector<std::string>& overrides) {
  ExperimentConfig cfg;
  if (!config_path.empty()) cfg = ExperimentConfig::from_file(config_path);
  for (const auto& kv : overrides) cfg.apply_override(kv);
  return cfg;
}

void print_report_summary(const RunReport& r) {
  std::cout << "initial L2 norm        : " << format_full(r.initial_norm) << "\n"
            << "final L2 norm          : " << format_full(r.final_norm) << "\n"
            << "final relative L2 norm : " << format_full(r.final_relative_norm) << "\n"
            << "max |u|                : " << format_full(r.max_abs_u) << "\n"
            << "control effort (L2)    : " << format_full(r.control_effort) << "\n"
            << "compatibility k=0 / k=1: " << format_full(r.compat_k0_max_abs) << " / "
            << format_full(r.compat_k1_max_abs) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flatness-based null control of the 2-D heat equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "Config file (flat key = value)");
  app.add_option("--set", overrides, "Override a config key, e.g. --set tau=0.1");

  auto* cmd_decompose = app.add_subcommand(
      "decompose", "Write the coefficient matrix of the initial condition");
  auto* cmd_synthesize = app.add_subcommand(
      "synthesize", "Write the control surface sampled on the solver time grid");
  auto* cmd_simulate = app.add_subcommand(
      "simulate", "Run the finite-difference solver with a control surface file");
  std::string control_file;
  cmd_simulate->add_option("--control", control_file,
                           "Control surface CSV (omit for zero control)");
  auto* cmd_run = app.add_subcommand("run", "Full pipeline: decompose, synthesize, simulate, report");
  auto* cmd_sweep = app.add_subcommand("sweep-tau", "Run the full pipeline for several tau values");
  std::vector<double> tau_values;
  cmd_sweep->add_option("--tau-values", tau_values, "List of tau values")->required();
  auto* cmd_report = app.add_subcommand("report", "Re-read a run directory and check consistency");
  std::string run_dir;
  cmd_report->add_option("dir", run_dir, "Run output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_decompose->parsed()) {
      ExperimentConfig cfg = load_config(config_path, overrides);
      cfg.validate_and_finalize();
      fs::create_directories(cfg.output_dir);
      const auto c = initial_coefficients(cfg);
      const std::string path = (fs::path(cfg.output_dir) / "coefficients.csv").string();
      export_coefficients(c, path);
      std::cout << "wrote " << path << " (Parseval sum " << format_full(c.parseval_sum()) << ")\n";
    } else if (cmd_synthesize->parsed()) {
      ExperimentConfig cfg = load_config(config_path, overrides);
      cfg.validate_and_finalize();
      fs::create_directories(cfg.output_dir);
      const NeumannBasis1D basis(cfg.L);
      const Grid2D grid(cfg.L, cfg.n1, cfg.n2);
      const FlatSynthesis synth(initial_coefficients(cfg), basis, cfg.tau, cfg.T,
                                GevreyOrder(cfg.s), cfg.I);
      ControlSurface surface;
      surface.x1.resize(grid.n1);
      for (std::size_t i = 0; i < grid.n1; ++i) surface.x1[i] = grid.x1(i);
      const long steps = std::lround(cfg.T / cfg.dt);
      surface.times.resize(static_cast<std::size_t>(steps) + 1);
      surface.u.assign(surface.times.size() * surface.x1.size(), 0.0);
      for (long k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        surface.times[static_cast<std::size_t>(k)] = t;
        if (t > cfg.tau && t <= cfg.T) {
          const auto u = synth.control_profile(std::min(t, cfg.T), surface.x1);
          for (std::size_t m = 0; m < u.size(); ++m)
            surface.at(static_cast<std::size_t>(k), m) = u[m];
        }
      }
      const std::string path = (fs::path(cfg.output_dir) / "control.csv").string();
      export_control(surface, path);
      std::cout << "wrote " << path << " (max |u| " << format_full(surface.max_abs()) << ")\n";
    } else if (cmd_simulate->parsed()) {
      ExperimentConfig cfg = load_config(config_path, overrides);
      cfg.validate_and_finalize();
      fs::create_directories(cfg.output_dir);
      const Grid2D grid(cfg.L, cfg.n1, cfg.n2);
      ControlEvaluator u_eval;
      ControlSurface surface;
      if (!control_file.empty()) {
        surface = import_control(control_file);
        u_eval = [&surface, &cfg](double t, double x1) {
          // Piecewise-linear interpolation of the sampled surface.
          if (surface.times.size() < 2 || t <= cfg.tau) return 0.0;
          const double dt = (surface.times.back() - surface.times.front()) /
                            static_cast<double>(surface.times.size() - 1);
          const double kk = std::clamp((t - surface.times.front()) / dt, 0.0,
                                       static_cast<double>(surface.times.size() - 1));
          const std::size_t k = std::min(static_cast<std::size_t>(kk), surface.times.size() - 2);
          const double a = kk - static_cast<double>(k);
          const double dx = (surface.x1.back() - surface.x1.front()) /
                            static_cast<double>(surface.x1.size() - 1);
          const double mm = std::clamp((x1 - surface.x1.front()) / dx, 0.0,
                                       static_cast<double>(surface.x1.size() - 1));
          const std::size_t m = std::min(static_cast<std::size_t>(mm), surface.x1.size() - 2);
          const double b = mm - static_cast<double>(m);
          return (1 - a) * ((1 - b) * surface.at(k, m) + b * surface.at(k, m + 1)) +
                 a * ((1 - b) * surface.at(k + 1, m) + b * surface.at(k + 1, m + 1));
        };
      }
      const AdiSolver solver(grid, u_eval);
      const Field2D theta0 = initial_field(cfg, grid);
      auto traj = solver.simulate(theta0, cfg.T, cfg.dt, cfg.snapshot_times);
      for (const Field2D& snap : traj.snapshots) {
        char name[64];
        std::snprintf(name, sizeof(name), "snapshot_t%.6f.csv", snap.t);
        export_snapshot(snap, (fs::path(cfg.output_dir) / name).string());
      }
      std::cout << "final L2 norm " << format_full(traj.final_field.l2_norm()) << " after "
                << traj.steps << " steps\n";
    } else if (cmd_run->parsed()) {
      const RunReport report = run_experiment(load_config(config_path, overrides));
      print_report_summary(report);
      std::cout << "report written to " << report.config.output_dir << "/report.txt\n";
    } else if (cmd_sweep->parsed()) {
      const auto entries = sweep_tau(load_config(config_path, overrides), tau_values);
      for (const auto& e : entries) {
        if (e.ok)
          std::cout << "tau " << format_full(e.tau) << ": final relative norm "
                    << format_full(e.report.final_relative_norm) << ", effort "
                    << format_full(e.report.control_effort) << "\n";
        else
          std::cout << "tau " << format_full(e.tau) << ": ERROR " << e.error << "\n";
      }
    } else if (cmd_report->parsed()) {
      const RunReport report = import_report((fs::path(run_dir) / "report.txt").string());
      print_report_summary(report);
      const ControlSurface surface = import_control((fs::path(run_dir) / "control.csv").string());
      const double effort = surface.l2_effort();
      std::cout << "effort recomputed from control.csv: " << format_full(effort)
                << (std::abs(effort - report.control_effort) <= 1e-12 * (1.0 + effort)
                        ? " (consistent)\n"
                        : " (MISMATCH)\n");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
