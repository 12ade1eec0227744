#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace flatheat {

enum class InitialConditionKind { DoubleStep, Constant, SingleMode, SampledFile };

struct InitialCondition {
  InitialConditionKind kind = InitialConditionKind::DoubleStep;
  double constant_value = 0.0;                 // Constant
  std::size_t mode_j = 0, mode_n = 0;          // SingleMode
  std::string file_path;                       // SampledFile

  static InitialCondition parse(const std::string& text);
  std::string to_string() const;
};

/// All run parameters of one experiment.
struct ExperimentConfig {
  double L = 1.0;
  double T = 0.3;
  double tau = 0.05;
  double s = 1.65;
  std::size_t J = 21;
  std::size_t N = 200;
  std::size_t I = 25;
  std::size_t n1 = 101;
  std::size_t n2 = 101;
  double dt = 1.25e-4;
  std::vector<double> snapshot_times;  // defaulted in validate() if empty
  InitialCondition initial_condition;
  std::string output_dir = "out";
  std::size_t quadrature_cells = 1024;  // per direction, for decompose

  /// Throws ConfigError naming the first violated invariant; fills the
  /// default snapshot schedule when none was given.
  void validate_and_finalize();

  static ExperimentConfig from_file(const std::string& path);
  /// Apply one "key=value" override (same keys as the config file).
  void apply_override(const std::string& key_equals_value);
  void set_key(const std::string& key, const std::string& value);

  std::string serialize() const;
};

}  // namespace flatheat
