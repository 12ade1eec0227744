#include "flatheat/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "flatheat/errors.hpp"

namespace flatheat {

namespace {

namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

// Bilinear interpolation over an imported grid file, for decompose().
FieldEvaluator make_interpolator(const Field2D& f) {
  return [f](double x1, double x2) {
    const Grid2D& g = f.grid;
    const double u = std::clamp(x1 / g.h1(), 0.0, static_cast<double>(g.n1 - 1));
    const double v = std::clamp(x2 / g.h2(), 0.0, static_cast<double>(g.n2 - 1));
    const std::size_t i = std::min(static_cast<std::size_t>(u), g.n1 - 2);
    const std::size_t j = std::min(static_cast<std::size_t>(v), g.n2 - 2);
    const double a = u - static_cast<double>(i), b = v - static_cast<double>(j);
    return (1 - a) * (1 - b) * f.at(i, j) + a * (1 - b) * f.at(i + 1, j) +
           (1 - a) * b * f.at(i, j + 1) + a * b * f.at(i + 1, j + 1);
  };
}

}  // namespace

CoefficientMatrix initial_coefficients(const ExperimentConfig& cfg) {
  const NeumannBasis1D basis(cfg.L);
  switch (cfg.initial_condition.kind) {
    case InitialConditionKind::DoubleStep:
      if (cfg.L != 1.0)
        throw ConfigError("double_step initial condition is defined on L = 1");
      return doublestep_matrix(cfg.J, cfg.N);
    case InitialConditionKind::Constant: {
      CoefficientMatrix c(cfg.J, cfg.N);
      c.at(0, 0) = cfg.initial_condition.constant_value * std::sqrt(cfg.L);
      return c;
    }
    case InitialConditionKind::SingleMode: {
      if (cfg.initial_condition.mode_j > cfg.J || cfg.initial_condition.mode_n > cfg.N)
        throw ConfigError("single_mode index exceeds truncation (J, N)");
      CoefficientMatrix c(cfg.J, cfg.N);
      c.at(cfg.initial_condition.mode_j, cfg.initial_condition.mode_n) = 1.0;
      return c;
    }
    case InitialConditionKind::SampledFile: {
      const Field2D f = import_snapshot(cfg.initial_condition.file_path);
      return decompose(make_interpolator(f), basis, cfg.J, cfg.N,
                       cfg.quadrature_cells, cfg.quadrature_cells);
    }
  }
  throw ConfigError("unhandled initial condition");
}

Field2D initial_field(const ExperimentConfig& cfg, const Grid2D& grid) {
  Field2D f(grid, 0.0);
  const NeumannBasis1D basis(cfg.L);
  switch (cfg.initial_condition.kind) {
    case InitialConditionKind::DoubleStep:
      for (std::size_t i = 0; i < grid.n1; ++i)
        for (std::size_t j = 0; j < grid.n2; ++j)
          f.at(i, j) = doublestep_value(grid.x1(i), grid.x2(j));
      return f;
    case InitialConditionKind::Constant:
      for (double& v : f.values) v = cfg.initial_condition.constant_value;
      return f;
    case InitialConditionKind::SingleMode:
      for (std::size_t i = 0; i < grid.n1; ++i)
        for (std::size_t j = 0; j < grid.n2; ++j)
          f.at(i, j) = basis.eigenfunction(cfg.initial_condition.mode_j, grid.x1(i)) *
                       cosine_basis(cfg.initial_condition.mode_n, grid.x2(j));
      return f;
    case InitialConditionKind::SampledFile: {
      const Field2D src = import_snapshot(cfg.initial_condition.file_path);
      const auto eval = make_interpolator(src);
      for (std::size_t i = 0; i < grid.n1; ++i)
        for (std::size_t j = 0; j < grid.n2; ++j)
          f.at(i, j) = eval(grid.x1(i), grid.x2(j));
      return f;
    }
  }
  throw ConfigError("unhandled initial condition");
}

RunReport run_experiment(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  cfg.validate_and_finalize();

  RunReport report;
  report.config = cfg;

  const NeumannBasis1D basis(cfg.L);
  const Grid2D grid(cfg.L, cfg.n1, cfg.n2);

  auto t_start = clock_type::now();
  const CoefficientMatrix c0 = initial_coefficients(cfg);
  report.seconds_decompose = seconds_since(t_start);

  // Control synthesis over the active phase.
  t_start = clock_type::now();
  const GevreyOrder order(cfg.s);
  const FlatSynthesis synth(c0, basis, cfg.tau, cfg.T, order, cfg.I);

  // Bound constant sup |y_{j,i}| tau^i / i! (scaled storage is y/i!).
  const TauJetMatrix tau_jets = tau_coefficients(c0, cfg.tau, cfg.I);
  for (std::size_t j = 0; j <= tau_jets.J; ++j) {
    double tp = 1.0;
    for (std::size_t i = 0; i <= tau_jets.I; ++i) {
      report.derivative_bound_constant =
          std::max(report.derivative_bound_constant, std::abs(tau_jets.at(j, i)) * tp);
      tp *= cfg.tau;
    }
  }

  // Control surface on the solver time grid (exact evaluation, no interpolation).
  const long steps = std::lround(cfg.T / cfg.dt);
  if (std::abs(static_cast<double>(steps) * cfg.dt - cfg.T) > 1e-9)
    throw ConfigError("invalid config: dt must divide T");
  ControlSurface surface;
  surface.x1.resize(grid.n1);
  for (std::size_t i = 0; i < grid.n1; ++i) surface.x1[i] = grid.x1(i);
  surface.times.resize(static_cast<std::size_t>(steps) + 1);
  surface.u.resize(surface.times.size() * surface.x1.size(), 0.0);
  for (long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    surface.times[static_cast<std::size_t>(k)] = t;
    if (t > cfg.tau && t <= cfg.T) {
      const std::vector<double> u = synth.control_profile(std::min(t, cfg.T), surface.x1);
      for (std::size_t m = 0; m < u.size(); ++m)
        surface.at(static_cast<std::size_t>(k), m) = u[m];
    }
  }
  report.max_abs_u = surface.max_abs();
  report.control_effort = surface.l2_effort();

  // Truncation audit at mid-active-phase.
  {
    const double t_mid = 0.5 * (cfg.tau + cfg.T);
    report.tail_i_magnitude = synth.tail_magnitude_i(t_mid, 0.0);
    const TaylorJet yJ = synth.flat_output_jet(cfg.J, t_mid);
    double series = 0.0;
    for (std::size_t i = 1; i <= cfg.I; ++i)
      series += std::abs(yJ.coeffs[i]) * std::exp(std::lgamma(static_cast<double>(i) + 1.0) -
                                                  std::lgamma(2.0 * static_cast<double>(i)));
    report.tail_j_magnitude =
        std::exp(-basis.eigenvalue(cfg.J) * t_mid) * std::abs(basis.eigenfunction(cfg.J, 0.0)) * series;
  }

  // Compatibility residuals at t = tau against the spectral free evolution.
  {
    const CoefficientMatrix c_tau = free_evolution(c0, basis, cfg.tau);
    const std::size_t probe = 21;
    for (std::size_t a = 0; a < probe; ++a) {
      for (std::size_t b = 0; b < probe; ++b) {
        const double x1 = cfg.L * static_cast<double>(a) / static_cast<double>(probe - 1);
        const double x2 = static_cast<double>(b) / static_cast<double>(probe - 1);
        const double spectral_k0 = synthesize_point(c_tau, basis, x1, x2);
        double spectral_k1 = 0.0;
        for (std::size_t j = 0; j <= c0.J; ++j)
          for (std::size_t n = 0; n <= c0.N; ++n) {
            const double mu2 = static_cast<double>(n * n) * std::numbers::pi * std::numbers::pi;
            spectral_k1 += -(basis.eigenvalue(j) + mu2) * c_tau.at(j, n) *
                           basis.eigenfunction(j, x1) * cosine_basis(n, x2);
          }
        report.compat_k0_max_abs =
            std::max(report.compat_k0_max_abs,
                     std::abs(synth.state(cfg.tau, x1, x2) - spectral_k0));
        report.compat_k1_max_abs =
            std::max(report.compat_k1_max_abs,
                     std::abs(synth.time_derivative(cfg.tau, x1, x2, 1) - spectral_k1));
      }
    }
  }

  // Gevrey envelope of the synthesized trajectories.
  {
    const auto est = fit_gevrey_envelope(synth.sample_trajectories(33));
    report.gevrey_fit_defined = est.has_value();
    if (est) {
      report.gevrey_M = est->M;
      report.gevrey_R = est->R;
    }
  }
  report.seconds_synthesis = seconds_since(t_start);

  // Independent finite-difference verification over the full window [0, T].
  t_start = clock_type::now();
  const Field2D theta0 = initial_field(cfg, grid);
  report.initial_norm = theta0.l2_norm();
  const ControlEvaluator u_eval = [&synth, &cfg](double t, double x1) {
    if (t <= cfg.tau || t > cfg.T) return 0.0;
    return synth.control(t, x1);
  };
  const AdiSolver solver(grid, u_eval);
  auto traj = solver.simulate(theta0, cfg.T, cfg.dt, cfg.snapshot_times);
  report.seconds_simulation = seconds_since(t_start);

  for (const Field2D& snap : traj.snapshots)
    report.snapshot_norms.emplace_back(snap.t, snap.l2_norm());
  report.final_norm = traj.final_field.l2_norm();
  report.final_relative_norm =
      report.initial_norm > 0.0 ? report.final_norm / report.initial_norm : 0.0;

  // Phase-boundary check: rerun the free phase alone and compare at tau.
  {
    const long tau_steps = std::lround(cfg.tau / cfg.dt);
    if (std::abs(static_cast<double>(tau_steps) * cfg.dt - cfg.tau) <= 1e-9) {
      const AdiSolver free_solver(grid, nullptr);
      const Field2D fd_tau = free_solver.simulate(theta0, cfg.tau, cfg.dt).final_field;
      const Field2D sp_tau = synthesize_field(free_evolution(c0, basis, cfg.tau), basis, grid, cfg.tau);
      Field2D diff = fd_tau;
      for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] -= sp_tau.values[i];
      const double ref = sp_tau.l2_norm();
      report.phase_boundary_rel_error = ref > 0.0 ? diff.l2_norm() / ref : diff.l2_norm();
    }
  }

  // Exports.
  fs::create_directories(cfg.output_dir);
  for (const Field2D& snap : traj.snapshots) {
    char name[64];
    std::snprintf(name, sizeof(name), "snapshot_t%.6f.csv", snap.t);
    export_snapshot(snap, (fs::path(cfg.output_dir) / name).string());
  }
  export_control(surface, (fs::path(cfg.output_dir) / "control.csv").string());
  export_report(report, (fs::path(cfg.output_dir) / "report.txt").string());
  return report;
}

std::vector<SweepEntry> sweep_tau(const ExperimentConfig& base, const std::vector<double>& taus) {
  std::vector<SweepEntry> out;
  for (double tau : taus) {
    SweepEntry entry;
    entry.tau = tau;
    try {
      ExperimentConfig cfg = base;
      cfg.tau = tau;
      char sub[48];
      std::snprintf(sub, sizeof(sub), "tau_%.6f", tau);
      cfg.output_dir = (fs::path(base.output_dir) / sub).string();
      entry.report = run_experiment(cfg);
      entry.ok = true;
    } catch (const std::exception& e) {
      entry.ok = false;
      entry.error = e.what();
    }
    out.push_back(std::move(entry));
  }
  return out;
}

void export_snapshot(const Field2D& field, const std::string& path) {
  std::ofstream out = open_output(path);
  out << "x1,x2,theta\n";
  for (std::size_t i = 0; i < field.grid.n1; ++i)
    for (std::size_t j = 0; j < field.grid.n2; ++j)
      out << format_full(field.grid.x1(i)) << "," << format_full(field.grid.x2(j)) << ","
          << format_full(field.at(i, j)) << "\n";
}

Field2D import_snapshot(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line) || line != "x1,x2,theta")
    throw std::runtime_error("snapshot file '" + path + "': bad header");
  std::vector<double> x1s, x2s, vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
      throw std::runtime_error("snapshot file '" + path + "': bad row '" + line + "'");
    x1s.push_back(std::stod(a));
    x2s.push_back(std::stod(b));
    vals.push_back(std::stod(c));
  }
  if (vals.empty()) throw std::runtime_error("snapshot file '" + path + "': empty");
  // Row-major over the grid: n2 = number of leading rows sharing x1.
  std::size_t n2 = 1;
  while (n2 < x1s.size() && x1s[n2] == x1s[0]) ++n2;
  if (x1s.size() % n2 != 0)
    throw std::runtime_error("snapshot file '" + path + "': not a full grid");
  const std::size_t n1 = x1s.size() / n2;
  Field2D f(Grid2D(x1s.back(), n1, n2));
  f.values = std::move(vals);
  return f;
}

void export_control(const ControlSurface& surface, const std::string& path) {
  std::ofstream out = open_output(path);
  out << "t,x1,u\n";
  for (std::size_t k = 0; k < surface.times.size(); ++k)
    for (std::size_t m = 0; m < surface.x1.size(); ++m)
      out << format_full(surface.times[k]) << "," << format_full(surface.x1[m]) << ","
          << format_full(surface.at(k, m)) << "\n";
}

ControlSurface import_control(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line) || line != "t,x1,u")
    throw std::runtime_error("control file '" + path + "': bad header");
  std::vector<double> ts, xs, us;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
      throw std::runtime_error("control file '" + path + "': bad row '" + line + "'");
    ts.push_back(std::stod(a));
    xs.push_back(std::stod(b));
    us.push_back(std::stod(c));
  }
  ControlSurface s;
  std::size_t nx = 1;
  while (nx < ts.size() && ts[nx] == ts[0]) ++nx;
  if (ts.empty() || ts.size() % nx != 0)
    throw std::runtime_error("control file '" + path + "': not a full surface");
  s.x1.assign(xs.begin(), xs.begin() + static_cast<long>(nx));
  for (std::size_t k = 0; k < ts.size(); k += nx) s.times.push_back(ts[k]);
  s.u = std::move(us);
  return s;
}

void export_report(const RunReport& report, const std::string& path) {
  open_output(path) << report.serialize();
}

RunReport import_report(const std::string& path) {
  std::ifstream in = open_input(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return RunReport::parse(buffer.str());
}

void export_coefficients(const CoefficientMatrix& c, const std::string& path) {
  std::ofstream out = open_output(path);
  out << "j,n,c\n";
  for (std::size_t j = 0; j <= c.J; ++j)
    for (std::size_t n = 0; n <= c.N; ++n)
      out << j << "," << n << "," << format_full(c.at(j, n)) << "\n";
}

}  // namespace flatheat
