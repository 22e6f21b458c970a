#include "magnomech/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <utility>

#include "magnomech/errors.hpp"

namespace magnomech {

namespace {

constexpr std::array<std::pair<std::string_view, Observable>, 15> kObservables{{
    {"n_b", Observable::n_b},
    {"dx2", Observable::dx2},
    {"dx2_min", Observable::dx2_min},
    {"e_bm", Observable::e_bm},
    {"e_bc", Observable::e_bc},
    {"e_mc", Observable::e_mc},
    {"e_b_mc", Observable::e_b_mc},
    {"e_m_bc", Observable::e_m_bc},
    {"e_c_bm", Observable::e_c_bm},
    {"r_min", Observable::r_min},
    {"g_ratio", Observable::g_ratio},
    {"chi", Observable::chi},
    {"stable", Observable::stable},
    {"n_b_reduced", Observable::n_b_reduced},
    {"dx2_reduced", Observable::dx2_reduced},
}};

double* real_field(PhysicalParams& p, std::string_view name) {
  if (name == "omega_b") return &p.omega_b;
  if (name == "delta_c") return &p.delta_c;
  if (name == "delta_m") return &p.delta_m;
  if (name == "gamma_b") return &p.gamma_b;
  if (name == "gamma_c") return &p.gamma_c;
  if (name == "gamma_m") return &p.gamma_m;
  if (name == "g_bc") return &p.g_bc;
  if (name == "g_bm") return &p.g_bm;
  if (name == "nbar0") return &p.nbar0;
  return nullptr;
}

Complex* complex_field(PhysicalParams& p, std::string_view name) {
  if (name == "omega_cap_c") return &p.omega_cap_c;
  if (name == "omega_cap_m") return &p.omega_cap_m;
  return nullptr;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& text, int line, const std::string& key) {
  std::istringstream is(text);
  double v = 0.0;
  if (!(is >> v) || !(is >> std::ws).eof() || !std::isfinite(v)) {
    throw ConfigError("line " + std::to_string(line) + ": '" + key + "' expects a real number, got '" +
                          text + "'",
                      line, key);
  }
  return v;
}

int parse_int(const std::string& text, int line, const std::string& key) {
  std::istringstream is(text);
  int v = 0;
  if (!(is >> v) || !(is >> std::ws).eof()) {
    throw ConfigError("line " + std::to_string(line) + ": '" + key + "' expects an integer, got '" +
                          text + "'",
                      line, key);
  }
  return v;
}

// Accepts "300" or "(300,20)".
Complex parse_complex(const std::string& text, int line, const std::string& key) {
  std::istringstream is(text);
  Complex v;
  if (!(is >> v) || !(is >> std::ws).eof() || !std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw ConfigError("line " + std::to_string(line) + ": '" + key +
                          "' expects a real or (re,im) pair, got '" + text + "'",
                      line, key);
  }
  return v;
}

[[noreturn]] void fail(int line, const std::string& key, const std::string& msg) {
  const std::string where = line > 0 ? "line " + std::to_string(line) + ": " : std::string();
  throw ConfigError(where + msg, line, key);
}

}  // namespace

std::vector<double> AxisSpec::values() const {
  std::vector<double> v(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    const double f = count > 1 ? static_cast<double>(i) / (count - 1) : 0.0;
    if (spacing == Spacing::log) {
      v[static_cast<std::size_t>(i)] = start * std::pow(stop / start, f);
    } else {
      v[static_cast<std::size_t>(i)] = start + (stop - start) * f;
    }
  }
  if (count > 1) v.back() = stop;
  return v;
}

std::string_view observable_name(Observable o) {
  for (const auto& [name, value] : kObservables) {
    if (value == o) return name;
  }
  return "?";
}

std::optional<Observable> parse_observable(std::string_view name) {
  for (const auto& [n, value] : kObservables) {
    if (n == name) return value;
  }
  return std::nullopt;
}

bool is_sweepable(std::string_view name) {
  PhysicalParams p;
  return real_field(p, name) || complex_field(p, name) || name == "temperature";
}

PhysicalParams with_parameter(const PhysicalParams& base, std::string_view name, double value,
                              std::optional<double> omega_b_hz) {
  PhysicalParams p = base;
  if (double* f = real_field(p, name)) {
    *f = value;
  } else if (Complex* c = complex_field(p, name)) {
    const double phase = std::abs(*c) > 0.0 ? std::arg(*c) : 0.0;
    *c = std::polar(value, phase);
  } else if (name == "temperature") {
    if (!omega_b_hz) throw InvalidParameter("temperature axis needs omega_b_hz");
    p.nbar0 = thermal_occupation(2.0 * std::numbers::pi * *omega_b_hz, value);
  } else {
    throw InvalidParameter("unknown parameter '" + std::string(name) + "'");
  }
  return p;
}

void SweepConfig::validate() const {
  if (axes.empty() || axes.size() > 2) fail(0, "axis", "a sweep needs one or two [axis] sections");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const AxisSpec& a = axes[i];
    if (!is_sweepable(a.name)) fail(0, "name", "unknown axis parameter '" + a.name + "'");
    if (a.count < 2) fail(0, "count", "axis '" + a.name + "' needs count >= 2");
    if (a.spacing == Spacing::log && !(a.start > 0.0 && a.stop > 0.0)) {
      fail(0, "spacing", "log axis '" + a.name + "' needs positive start and stop");
    }
    if (a.name == "temperature" && !omega_b_hz) {
      fail(0, "omega_b_hz", "temperature axis needs omega_b_hz in [base]");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (axes[j].name == a.name) fail(0, "name", "axis '" + a.name + "' given twice");
    }
  }
  if (observables.empty()) fail(0, "observables", "no observables requested");
  if (out_path.empty()) fail(0, "path", "empty output path");
}

SweepConfig parse_config(std::istream& in) {
  enum class Section { none, base, axis, output };
  SweepConfig cfg;
  Section section = Section::none;
  std::vector<std::vector<std::string>> axis_seen;

  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(std::string_view(raw).substr(0, hash));
    if (text.empty()) continue;

    if (text.front() == '[') {
      if (text.back() != ']') fail(line, text, "malformed section header");
      const std::string name = trim(std::string_view(text).substr(1, text.size() - 2));
      if (name == "base") {
        section = Section::base;
      } else if (name == "axis") {
        section = Section::axis;
        cfg.axes.emplace_back();
        cfg.axes.back().name.clear();
        axis_seen.emplace_back();
      } else if (name == "output") {
        section = Section::output;
      } else {
        fail(line, name, "unknown section [" + name + "]");
      }
      continue;
    }

    const auto eq = text.find('=');
    if (eq == std::string::npos) fail(line, text, "expected 'key = value'");
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    if (key.empty()) fail(line, key, "missing key");
    if (value.empty()) fail(line, key, "missing value for '" + key + "'");

    switch (section) {
      case Section::none:
        fail(line, key, "'" + key + "' outside of a section");
      case Section::base: {
        if (double* f = real_field(cfg.base, key)) {
          *f = parse_real(value, line, key);
        } else if (Complex* c = complex_field(cfg.base, key)) {
          *c = parse_complex(value, line, key);
        } else if (key == "omega_b_hz") {
          cfg.omega_b_hz = parse_real(value, line, key);
          if (!(*cfg.omega_b_hz > 0.0)) fail(line, key, "omega_b_hz must be > 0");
        } else {
          fail(line, key, "unknown parameter '" + key + "'");
        }
        break;
      }
      case Section::axis: {
        AxisSpec& a = cfg.axes.back();
        auto& seen = axis_seen.back();
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
          fail(line, key, "'" + key + "' repeated in one [axis] section");
        }
        seen.push_back(key);
        if (key == "name") {
          if (!is_sweepable(value)) fail(line, key, "unknown axis parameter '" + value + "'");
          a.name = value;
        } else if (key == "start") {
          a.start = parse_real(value, line, key);
        } else if (key == "stop") {
          a.stop = parse_real(value, line, key);
        } else if (key == "count") {
          a.count = parse_int(value, line, key);
          if (a.count < 2) fail(line, key, "count must be >= 2");
        } else if (key == "spacing") {
          if (value == "linear") {
            a.spacing = Spacing::linear;
          } else if (value == "log") {
            a.spacing = Spacing::log;
          } else {
            fail(line, key, "spacing must be 'linear' or 'log'");
          }
        } else {
          fail(line, key, "unknown axis key '" + key + "'");
        }
        break;
      }
      case Section::output: {
        if (key == "observables") {
          cfg.observables.clear();
          std::istringstream is(value);
          std::string item;
          while (std::getline(is, item, ',')) {
            const std::string name = trim(item);
            const auto o = parse_observable(name);
            if (!o) fail(line, key, "unknown observable '" + name + "'");
            if (std::find(cfg.observables.begin(), cfg.observables.end(), *o) == cfg.observables.end()) {
              cfg.observables.push_back(*o);
            }
          }
        } else if (key == "path") {
          cfg.out_path = value;
        } else if (key == "format") {
          if (value == "csv") {
            cfg.format = OutputFormat::csv;
          } else if (value == "json") {
            cfg.format = OutputFormat::json;
          } else {
            fail(line, key, "format must be 'csv' or 'json'");
          }
        } else if (key == "diffusion_variant") {
          if (value == "standard") {
            cfg.diffusion_variant = DiffusionVariant::standard;
          } else if (value == "supplement") {
            cfg.diffusion_variant = DiffusionVariant::supplement;
          } else {
            fail(line, key, "diffusion_variant must be 'standard' or 'supplement'");
          }
        } else {
          fail(line, key, "unknown output key '" + key + "'");
        }
        break;
      }
    }
  }

  for (std::size_t i = 0; i < cfg.axes.size(); ++i) {
    for (const char* required : {"name", "start", "stop", "count"}) {
      const auto& seen = axis_seen[i];
      if (std::find(seen.begin(), seen.end(), required) == seen.end()) {
        fail(0, required, "axis " + std::to_string(i + 1) + " is missing '" + required + "'");
      }
    }
  }
  cfg.validate();
  return cfg;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", 0, "");
  return parse_config(in);
}

}  // namespace magnomech
