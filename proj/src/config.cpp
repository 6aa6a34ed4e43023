#include "so3track/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace so3track {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& s, int line, const std::string& key) {
  const std::string t = trim(s);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ParseError("line " + std::to_string(line) + ": key '" + key +
                     "': not a number: '" + t + "'");
  }
  if (!std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line) + ": key '" + key +
                     "': value must be finite");
  }
  return v;
}

long parse_integer(const std::string& s, int line, const std::string& key) {
  const std::string t = trim(s);
  long v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ParseError("line " + std::to_string(line) + ": key '" + key +
                     "': not an integer: '" + t + "'");
  }
  return v;
}

Vec3 parse_vec3(const std::string& s, int line, const std::string& key) {
  std::istringstream in(s);
  std::string a, b, c, rest;
  if (!(in >> a >> b >> c) || (in >> rest)) {
    throw ParseError("line " + std::to_string(line) + ": key '" + key +
                     "': expected exactly 3 numbers");
  }
  return Vec3(parse_number(a, line, key), parse_number(b, line, key),
              parse_number(c, line, key));
}

ControllerTag parse_controller_tag(const std::string& s, int line) {
  if (s == "asy_geo") return ControllerTag::asy_geo;
  if (s == "ftt_geo") return ControllerTag::ftt_geo;
  if (s == "asy_fro") return ControllerTag::asy_fro;
  if (s == "ftt_fro") return ControllerTag::ftt_fro;
  throw ParseError("line " + std::to_string(line) + ": unknown controller '" + s + "'");
}

}  // namespace

SimConfig parse_config_text(const std::string& text) {
  SimConfig config;
  bool have_controller = false;

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string entry = trim(raw);
    if (entry.empty()) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line) + ": expected 'key = value'");
    }
    const std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ParseError("line " + std::to_string(line) + ": empty key or value");
    }

    if (key == "controller") {
      config.controller.tag = parse_controller_tag(value, line);
      have_controller = true;
    } else if (key == "controller.eps_switch") {
      config.controller.eps_switch = parse_number(value, line, key);
    } else if (key == "reference") {
      if (value == "paper_sim") config.reference.tag = ReferenceTag::paper_sim;
      else if (value == "constant") config.reference.tag = ReferenceTag::constant;
      else if (value == "sinusoid") config.reference.tag = ReferenceTag::sinusoid;
      else if (value == "zero") config.reference.tag = ReferenceTag::zero;
      else throw ParseError("line " + std::to_string(line) + ": unknown reference '" + value + "'");
    } else if (key == "reference.amplitude") {
      config.reference.amplitude = parse_vec3(value, line, key);
    } else if (key == "reference.frequency") {
      config.reference.frequency = parse_vec3(value, line, key);
    } else if (key == "reference.phase") {
      config.reference.phase = parse_vec3(value, line, key);
    } else if (key == "init") {
      if (value == "random") config.init.random = true;
      else if (value == "explicit") config.init.random = false;
      else throw ParseError("line " + std::to_string(line) + ": init must be 'random' or 'explicit'");
    } else if (key == "init.seed") {
      const long v = parse_integer(value, line, key);
      if (v < 0) throw ParseError("line " + std::to_string(line) + ": init.seed must be non-negative");
      config.init.seed = static_cast<std::uint64_t>(v);
    } else if (key == "init.theta_max") {
      config.init.theta_max = parse_number(value, line, key);
    } else if (key == "init.rr") {
      config.init.Rr_axis_angle = parse_vec3(value, line, key);
    } else if (key == "init.r1") {
      config.init.R1_axis_angle = parse_vec3(value, line, key);
    } else if (key == "integrator.method") {
      if (value == "lie_euler") config.integrator.method = IntegratorMethod::lie_euler;
      else if (value == "lie_rk4") config.integrator.method = IntegratorMethod::lie_rk4;
      else throw ParseError("line " + std::to_string(line) + ": unknown integrator.method '" + value + "'");
    } else if (key == "integrator.h") {
      config.integrator.h = parse_number(value, line, key);
    } else if (key == "integrator.reproject_every") {
      config.integrator.reproject_every = static_cast<int>(parse_integer(value, line, key));
    } else if (key == "t_final") {
      config.t_final = parse_number(value, line, key);
    } else if (key == "sample_every") {
      config.sample_every = static_cast<int>(parse_integer(value, line, key));
    } else if (key == "analysis.threshold") {
      config.threshold = parse_number(value, line, key);
    } else {
      throw ParseError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }

  if (!have_controller) {
    throw ParseError("missing required key 'controller'");
  }
  validate_config(config);
  return config;
}

SimConfig parse_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config_text(buf.str());
}

void validate_config(const SimConfig& config) {
  if (!(config.controller.eps_switch > 0.0)) {
    throw ValidationError("controller.eps_switch must be positive");
  }
  if (!config.reference.amplitude.allFinite() ||
      !config.reference.frequency.allFinite() || !config.reference.phase.allFinite()) {
    throw ValidationError("reference parameters must be finite");
  }
  if ((config.reference.frequency.array() < 0.0).any()) {
    throw ValidationError("reference.frequency must be non-negative");
  }
  if (!(config.integrator.h > 0.0)) {
    throw ValidationError("integrator.h must be positive");
  }
  if (config.integrator.reproject_every < 1) {
    throw ValidationError("integrator.reproject_every must be >= 1");
  }
  if (!(config.t_final > 0.0)) {
    throw ValidationError("t_final must be positive");
  }
  if (config.sample_every < 1) {
    throw ValidationError("sample_every must be >= 1");
  }
  if (!(config.threshold > 10.0 * config.controller.eps_switch)) {
    throw ValidationError("analysis.threshold must exceed 10x controller.eps_switch");
  }
  if (config.init.random) {
    if (!(config.init.theta_max > 0.0) || config.init.theta_max >= M_PI) {
      throw ValidationError("init.theta_max must lie in (0, pi)");
    }
  } else {
    if (!config.init.Rr_axis_angle.allFinite() || !config.init.R1_axis_angle.allFinite()) {
      throw ValidationError("explicit init axis-angle vectors must be finite");
    }
    const Mat3 Rr0 = exp_so3(config.init.Rr_axis_angle);
    const Mat3 R10 = exp_so3(config.init.R1_axis_angle);
    if (rotation_angle(R10.transpose() * Rr0) >= M_PI - 1e-3) {
      throw ValidationError("explicit init relative angle too close to pi");
    }
  }
}

}  // namespace so3track
