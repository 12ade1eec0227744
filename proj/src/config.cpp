#include "flatheat/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "flatheat/errors.hpp"

namespace flatheat {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse real value '" + v + "'");
  }
}

std::size_t parse_uint(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size() || x < 0) throw std::invalid_argument(v);
    return static_cast<std::size_t>(x);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse integer value '" + v + "'");
  }
}

std::vector<double> parse_real_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_real(key, item));
  }
  return out;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

InitialCondition InitialCondition::parse(const std::string& text) {
  InitialCondition ic;
  const auto colon = text.find(':');
  const std::string head = trim(colon == std::string::npos ? text : text.substr(0, colon));
  const std::string arg = colon == std::string::npos ? "" : trim(text.substr(colon + 1));
  if (head == "double_step") {
    ic.kind = InitialConditionKind::DoubleStep;
  } else if (head == "constant") {
    ic.kind = InitialConditionKind::Constant;
    ic.constant_value = parse_real("initial_condition", arg);
  } else if (head == "single_mode") {
    ic.kind = InitialConditionKind::SingleMode;
    const auto comma = arg.find(',');
    if (comma == std::string::npos)
      throw ConfigError("initial_condition single_mode needs 'single_mode:j,n'");
    ic.mode_j = parse_uint("initial_condition", trim(arg.substr(0, comma)));
    ic.mode_n = parse_uint("initial_condition", trim(arg.substr(comma + 1)));
  } else if (head == "sampled_file") {
    if (arg.empty()) throw ConfigError("initial_condition sampled_file needs a path");
    ic.kind = InitialConditionKind::SampledFile;
    ic.file_path = arg;
  } else {
    throw ConfigError("unknown initial_condition '" + text + "'");
  }
  return ic;
}

std::string InitialCondition::to_string() const {
  switch (kind) {
    case InitialConditionKind::DoubleStep: return "double_step";
    case InitialConditionKind::Constant: return "constant:" + format_real(constant_value);
    case InitialConditionKind::SingleMode:
      return "single_mode:" + std::to_string(mode_j) + "," + std::to_string(mode_n);
    case InitialConditionKind::SampledFile: return "sampled_file:" + file_path;
  }
  return "double_step";
}

void ExperimentConfig::validate_and_finalize() {
  if (!(L > 0.0)) throw ConfigError("invalid config: L must be positive");
  if (!(T > 0.0)) throw ConfigError("invalid config: T must be positive");
  if (!(tau > 0.0 && tau < T)) throw ConfigError("invalid config: need 0 < tau < T");
  if (!(s > 1.0 && s < 2.0)) throw ConfigError("invalid config: need 1 < s < 2");
  if (J < 1 || N < 1 || I < 1) throw ConfigError("invalid config: truncations J, N, I must be >= 1");
  if (n1 < 3 || n2 < 3) throw ConfigError("invalid config: grid sizes must be >= 3");
  if (!(dt > 0.0)) throw ConfigError("invalid config: dt must be positive");
  if (snapshot_times.empty()) {
    for (double t = 0.0; t < T - 1e-12; t += 0.025)
      if (t < T) snapshot_times.push_back(t);
    snapshot_times.push_back(T);
  }
  double prev = -1.0;
  for (double t : snapshot_times) {
    if (t < 0.0 || t > T)
      throw ConfigError("invalid config: snapshot time " + format_real(t) + " outside [0, T]");
    if (t < prev) throw ConfigError("invalid config: snapshot times must be sorted");
    prev = t;
  }
  if (quadrature_cells < 2) throw ConfigError("invalid config: quadrature_cells must be >= 2");
}

void ExperimentConfig::set_key(const std::string& key, const std::string& value) {
  if (key == "L") L = parse_real(key, value);
  else if (key == "T") T = parse_real(key, value);
  else if (key == "tau") tau = parse_real(key, value);
  else if (key == "s") s = parse_real(key, value);
  else if (key == "J") J = parse_uint(key, value);
  else if (key == "N") N = parse_uint(key, value);
  else if (key == "I") I = parse_uint(key, value);
  else if (key == "n1") n1 = parse_uint(key, value);
  else if (key == "n2") n2 = parse_uint(key, value);
  else if (key == "dt") dt = parse_real(key, value);
  else if (key == "snapshot_times") snapshot_times = parse_real_list(key, value);
  else if (key == "initial_condition") initial_condition = InitialCondition::parse(value);
  else if (key == "output_dir") output_dir = value;
  else if (key == "quadrature_cells") quadrature_cells = parse_uint(key, value);
  else throw ConfigError("unknown config key '" + key + "'");
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    cfg.set_key(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void ExperimentConfig::apply_override(const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos) throw ConfigError("override must be key=value, got '" + kv + "'");
  set_key(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream out;
  out << "L = " << format_real(L) << "\n"
      << "T = " << format_real(T) << "\n"
      << "tau = " << format_real(tau) << "\n"
      << "s = " << format_real(s) << "\n"
      << "J = " << J << "\n"
      << "N = " << N << "\n"
      << "I = " << I << "\n"
      << "n1 = " << n1 << "\n"
      << "n2 = " << n2 << "\n"
      << "dt = " << format_real(dt) << "\n";
  out << "snapshot_times = ";
  for (std::size_t i = 0; i < snapshot_times.size(); ++i)
    out << (i ? "," : "") << format_real(snapshot_times[i]);
  out << "\n";
  out << "initial_condition = " << initial_condition.to_string() << "\n"
      << "output_dir = " << output_dir << "\n"
      << "quadrature_cells = " << quadrature_cells << "\n";
  return out.str();
}

}  // namespace flatheat
