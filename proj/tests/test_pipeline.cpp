#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "flatheat/errors.hpp"
#include "flatheat/pipeline.hpp"

using namespace flatheat;
namespace fs = std::filesystem;

namespace {

// Desk-scale configuration for fast pipeline tests.
ExperimentConfig small_config(const std::string& outdir) {
  ExperimentConfig cfg;
  cfg.J = 9;
  cfg.N = 80;
  cfg.I = 15;
  cfg.n1 = 41;
  cfg.n2 = 41;
  cfg.dt = 5e-4;
  cfg.snapshot_times = {0.0, 0.05, 0.15, 0.3};
  cfg.output_dir = (fs::temp_directory_path() / outdir).string();
  return cfg;
}

}  // namespace

TEST_CASE("config file parsing") {
  const fs::path path = fs::temp_directory_path() / "flatheat_cfg_test.txt";
  {
    std::ofstream out(path);
    out << "# comment\n"
        << "L = 1.0\n"
        << "tau = 0.07\n"
        << "initial_condition = single_mode:1,2\n"
        << "snapshot_times = 0.0, 0.1, 0.3\n";
  }
  const ExperimentConfig cfg = ExperimentConfig::from_file(path.string());
  CHECK(cfg.tau == 0.07);
  CHECK(cfg.initial_condition.kind == InitialConditionKind::SingleMode);
  CHECK(cfg.initial_condition.mode_j == 1);
  CHECK(cfg.initial_condition.mode_n == 2);
  REQUIRE(cfg.snapshot_times.size() == 3);
  CHECK(cfg.snapshot_times[1] == 0.1);
  fs::remove(path);
}

TEST_CASE("unknown config keys are rejected") {
  ExperimentConfig cfg;
  CHECK_THROWS_AS(cfg.set_key("taau", "0.05"), ConfigError);
  CHECK_THROWS_AS(cfg.apply_override("no_equals_sign"), ConfigError);
}

TEST_CASE("config validation names the violated invariant") {
  ExperimentConfig cfg;
  cfg.tau = 0.5;
  cfg.T = 0.3;
  CHECK_THROWS_WITH_AS(cfg.validate_and_finalize(), doctest::Contains("tau"), ConfigError);
  cfg = ExperimentConfig{};
  cfg.s = 2.5;
  CHECK_THROWS_WITH_AS(cfg.validate_and_finalize(), doctest::Contains("s"), ConfigError);
  cfg = ExperimentConfig{};
  cfg.snapshot_times = {0.2, 0.1};
  CHECK_THROWS_WITH_AS(cfg.validate_and_finalize(), doctest::Contains("sorted"), ConfigError);
}

TEST_CASE("config serialize round trip") {
  ExperimentConfig cfg = small_config("flatheat_cfg_rt");
  cfg.validate_and_finalize();
  const fs::path path = fs::temp_directory_path() / "flatheat_cfg_rt.txt";
  std::ofstream(path) << cfg.serialize();
  const ExperimentConfig back = ExperimentConfig::from_file(path.string());
  CHECK(back.serialize() == cfg.serialize());
  fs::remove(path);
}

TEST_CASE("initial coefficients per kind") {
  SUBCASE("constant value v maps to c[0][0] = v sqrt(L)") {
    ExperimentConfig cfg;
    cfg.L = 2.25;
    cfg.initial_condition = InitialCondition::parse("constant:3");
    const auto c = initial_coefficients(cfg);
    CHECK(c.at(0, 0) == doctest::Approx(3.0 * 1.5).epsilon(1e-14));
  }
  SUBCASE("single mode") {
    ExperimentConfig cfg;
    cfg.initial_condition = InitialCondition::parse("single_mode:2,3");
    const auto c = initial_coefficients(cfg);
    CHECK(c.at(2, 3) == 1.0);
    CHECK(c.parseval_sum() == 1.0);
  }
  SUBCASE("double step requires L = 1") {
    ExperimentConfig cfg;
    cfg.L = 2.0;
    CHECK_THROWS_AS(initial_coefficients(cfg), ConfigError);
  }
}

TEST_CASE("snapshot export round trip") {
  Grid2D g(1.0, 7, 5);
  Field2D f(g, 0.125);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    f.values[i] = std::sin(static_cast<double>(i)) * 1.0e-3 + 1.0 / 3.0;
  const fs::path path = fs::temp_directory_path() / "flatheat_snap_rt.csv";
  export_snapshot(f, path.string());
  const Field2D back = import_snapshot(path.string());
  REQUIRE(back.values.size() == f.values.size());
  CHECK(back.grid.n1 == 7);
  CHECK(back.grid.n2 == 5);
  for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(back.values[i] == f.values[i]);
  fs::remove(path);
}

TEST_CASE("control export round trip and effort recomputation") {
  ControlSurface s;
  s.times = {0.0, 0.1, 0.2};
  s.x1 = {0.0, 0.5, 1.0};
  s.u = {0, 0, 0, 1, -2, 3, 0.5, 0.25, -0.125};
  const fs::path path = fs::temp_directory_path() / "flatheat_ctrl_rt.csv";
  export_control(s, path.string());
  const ControlSurface back = import_control(path.string());
  REQUIRE(back.u.size() == s.u.size());
  for (std::size_t i = 0; i < s.u.size(); ++i) CHECK(back.u[i] == s.u[i]);
  CHECK(back.l2_effort() == s.l2_effort());
  CHECK(back.max_abs() == 3.0);
  fs::remove(path);
}

TEST_CASE("report serialize/parse round trip") {
  RunReport r;
  r.config = small_config("flatheat_rep_rt");
  r.config.validate_and_finalize();
  r.snapshot_norms = {{0.0, 1.0}, {0.05, 1.0 / 7.0}};
  r.initial_norm = 1.0;
  r.final_norm = 1.23456789012345e-3;
  r.final_relative_norm = r.final_norm;
  r.max_abs_u = 17.25;
  r.control_effort = 0.3333333333333333;
  r.compat_k0_max_abs = 1e-10;
  r.compat_k1_max_abs = 2e-8;
  r.gevrey_fit_defined = true;
  r.gevrey_M = 12.5;
  r.gevrey_R = 0.07;
  r.derivative_bound_constant = 2.5;
  const RunReport back = RunReport::parse(r.serialize());
  CHECK(back.serialize() == r.serialize());
}

TEST_CASE("zero initial condition: all norms and the control vanish") {
  ExperimentConfig cfg = small_config("flatheat_run_zero");
  cfg.initial_condition = InitialCondition::parse("constant:0");
  const RunReport r = run_experiment(cfg);
  CHECK(r.initial_norm == 0.0);
  CHECK(r.final_norm == 0.0);
  CHECK(r.max_abs_u == 0.0);
  CHECK(r.control_effort == 0.0);
  fs::remove_all(cfg.output_dir);
}

TEST_CASE("constant initial condition is steered to near zero") {
  // Free phase leaves a constant unchanged (lambda_0 = 0); the active phase
  // must still drive it down via the j = 0, n = 0 path.
  ExperimentConfig cfg = small_config("flatheat_run_const");
  cfg.initial_condition = InitialCondition::parse("constant:1");
  const RunReport r = run_experiment(cfg);
  CHECK(r.initial_norm == doctest::Approx(1.0).epsilon(1e-12));
  const double norm_at_tau = [&] {
    for (const auto& [t, n] : r.snapshot_norms)
      if (t == 0.05) return n;
    return -1.0;
  }();
  CHECK(norm_at_tau == doctest::Approx(1.0).epsilon(1e-9));  // no decay in the free phase
  CHECK(r.final_relative_norm <= 1e-3);
  fs::remove_all(cfg.output_dir);
}

TEST_CASE("full run writes consistent artifacts") {
  ExperimentConfig cfg = small_config("flatheat_run_ds");
  const RunReport r = run_experiment(cfg);

  SUBCASE("deterministic: a second run reproduces the report bitwise") {
    const RunReport r2 = run_experiment(cfg);
    RunReport a = r, b = r2;
    // Wall-clock timings are the only legitimately varying fields.
    a.seconds_decompose = b.seconds_decompose = 0;
    a.seconds_synthesis = b.seconds_synthesis = 0;
    a.seconds_simulation = b.seconds_simulation = 0;
    CHECK(a.serialize() == b.serialize());
  }

  SUBCASE("snapshot at t=0 contains only -1, 0, 1") {
    const Field2D s0 = import_snapshot((fs::path(cfg.output_dir) / "snapshot_t0.000000.csv").string());
    for (double v : s0.values) CHECK((v == -1.0 || v == 0.0 || v == 1.0));
  }

  SUBCASE("control rows with t <= tau carry u = 0, and the final row is zero") {
    const ControlSurface s = import_control((fs::path(cfg.output_dir) / "control.csv").string());
    for (std::size_t k = 0; k < s.times.size(); ++k)
      for (std::size_t m = 0; m < s.x1.size(); ++m) {
        if (s.times[k] <= cfg.tau + 1e-12) CHECK(s.at(k, m) == 0.0);
        if (k == s.times.size() - 1) CHECK(s.at(k, m) == 0.0);
      }
  }

  SUBCASE("report round trip from disk") {
    const RunReport back = import_report((fs::path(cfg.output_dir) / "report.txt").string());
    CHECK(back.serialize() == r.serialize());
  }

  SUBCASE("report effort recomputable from the control file alone") {
    const ControlSurface s = import_control((fs::path(cfg.output_dir) / "control.csv").string());
    CHECK(s.l2_effort() == doctest::Approx(r.control_effort).epsilon(1e-12));
  }

  SUBCASE("phase boundary matches the spectral field") {
    CHECK(r.phase_boundary_rel_error <= 5e-3 * (101.0 / 41.0) * (101.0 / 41.0));
  }

  fs::remove_all(cfg.output_dir);
}

TEST_CASE("sweep over tau") {
  ExperimentConfig cfg = small_config("flatheat_sweep");
  cfg.J = 5;
  cfg.N = 60;
  cfg.I = 12;
  cfg.n1 = cfg.n2 = 21;
  cfg.dt = 1e-3;
  cfg.snapshot_times = {0.0, 0.3};
  SUBCASE("invalid entries fail per-entry, valid ones still run") {
    const auto entries = sweep_tau(cfg, {0.05, 0.5});
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].ok);
    CHECK(!entries[1].ok);
    CHECK(entries[1].error.find("tau") != std::string::npos);
  }
  SUBCASE("singleton sweep equals run_experiment") {
    const auto entries = sweep_tau(cfg, {0.1});
    REQUIRE(entries.size() == 1);
    REQUIRE(entries[0].ok);
    ExperimentConfig solo = cfg;
    solo.tau = 0.1;
    solo.output_dir = entries[0].report.config.output_dir;
    const RunReport direct = run_experiment(solo);
    CHECK(direct.final_relative_norm == entries[0].report.final_relative_norm);
    CHECK(direct.control_effort == entries[0].report.control_effort);
  }
  fs::remove_all(cfg.output_dir);
}
