#include "flatheat/report.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "flatheat/errors.hpp"

namespace flatheat {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

std::string RunReport::serialize() const {
  std::ostringstream out;
  out << "[config]\n";
  // Config keys re-use the config-file syntax, one per line.
  std::istringstream cfg(config.serialize());
  std::string line;
  while (std::getline(cfg, line)) out << line << "\n";

  out << "[snapshot_norms]\n";
  for (const auto& [t, norm] : snapshot_norms)
    out << "t " << format_full(t) << " = " << format_full(norm) << "\n";

  out << "[result]\n";
  out << "initial_norm = " << format_full(initial_norm) << "\n";
  out << "final_norm = " << format_full(final_norm) << "\n";
  out << "final_relative_norm = " << format_full(final_relative_norm) << "\n";
  out << "phase_boundary_rel_error = " << format_full(phase_boundary_rel_error) << "\n";

  out << "[control]\n";
  out << "max_abs_u = " << format_full(max_abs_u) << "\n";
  out << "control_effort = " << format_full(control_effort) << "\n";

  out << "[compatibility]\n";
  out << "k0_max_abs = " << format_full(compat_k0_max_abs) << "\n";
  out << "k1_max_abs = " << format_full(compat_k1_max_abs) << "\n";

  out << "[diagnostics]\n";
  out << "gevrey_fit_defined = " << (gevrey_fit_defined ? "true" : "false") << "\n";
  out << "gevrey_M = " << format_full(gevrey_M) << "\n";
  out << "gevrey_R = " << format_full(gevrey_R) << "\n";
  out << "derivative_bound_constant = " << format_full(derivative_bound_constant) << "\n";
  out << "tail_i_magnitude = " << format_full(tail_i_magnitude) << "\n";
  out << "tail_j_magnitude = " << format_full(tail_j_magnitude) << "\n";

  out << "[timings]\n";
  out << "seconds_decompose = " << format_full(seconds_decompose) << "\n";
  out << "seconds_synthesis = " << format_full(seconds_synthesis) << "\n";
  out << "seconds_simulation = " << format_full(seconds_simulation) << "\n";
  return out.str();
}

RunReport RunReport::parse(const std::string& text) {
  RunReport r;
  std::istringstream in(text);
  std::string line, section;
  auto to_double = [](const std::string& v) {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw ConfigError("report parse: bad number '" + v + "'");
    return x;
  };
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("report parse: expected 'key = value': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (section == "config") {
      r.config.set_key(key, val);
    } else if (section == "snapshot_norms") {
      if (key.rfind("t ", 0) != 0) throw ConfigError("report parse: bad snapshot line: " + line);
      r.snapshot_norms.emplace_back(to_double(trim(key.substr(2))), to_double(val));
    } else if (section == "result") {
      if (key == "initial_norm") r.initial_norm = to_double(val);
      else if (key == "final_norm") r.final_norm = to_double(val);
      else if (key == "final_relative_norm") r.final_relative_norm = to_double(val);
      else if (key == "phase_boundary_rel_error") r.phase_boundary_rel_error = to_double(val);
      else throw ConfigError("report parse: unknown result key '" + key + "'");
    } else if (section == "control") {
      if (key == "max_abs_u") r.max_abs_u = to_double(val);
      else if (key == "control_effort") r.control_effort = to_double(val);
      else throw ConfigError("report parse: unknown control key '" + key + "'");
    } else if (section == "compatibility") {
      if (key == "k0_max_abs") r.compat_k0_max_abs = to_double(val);
      else if (key == "k1_max_abs") r.compat_k1_max_abs = to_double(val);
      else throw ConfigError("report parse: unknown compatibility key '" + key + "'");
    } else if (section == "diagnostics") {
      if (key == "gevrey_fit_defined") r.gevrey_fit_defined = (val == "true");
      else if (key == "gevrey_M") r.gevrey_M = to_double(val);
      else if (key == "gevrey_R") r.gevrey_R = to_double(val);
      else if (key == "derivative_bound_constant") r.derivative_bound_constant = to_double(val);
      else if (key == "tail_i_magnitude") r.tail_i_magnitude = to_double(val);
      else if (key == "tail_j_magnitude") r.tail_j_magnitude = to_double(val);
      else throw ConfigError("report parse: unknown diagnostics key '" + key + "'");
    } else if (section == "timings") {
      if (key == "seconds_decompose") r.seconds_decompose = to_double(val);
      else if (key == "seconds_synthesis") r.seconds_synthesis = to_double(val);
      else if (key == "seconds_simulation") r.seconds_simulation = to_double(val);
      else throw ConfigError("report parse: unknown timings key '" + key + "'");
    } else {
      throw ConfigError("report parse: unknown section '" + section + "'");
    }
  }
  return r;
}

}  // namespace flatheat
