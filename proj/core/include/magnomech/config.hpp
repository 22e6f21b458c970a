#pragma once

// Sweep configuration: flat "key = value" text grouped under [base], [axis]
// (repeatable) and [output] sections. The grammar is documented in
// docs/config_format.md.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "magnomech/gaussian.hpp"
#include "magnomech/model.hpp"

namespace magnomech {

enum class Spacing { linear, log };

struct AxisSpec {
  std::string name;
  double start = 0.0;
  double stop = 1.0;
  int count = 2;
  Spacing spacing = Spacing::linear;

  std::vector<double> values() const;
};

enum class Observable {
  n_b,
  dx2,
  dx2_min,
  e_bm,
  e_bc,
  e_mc,
  e_b_mc,
  e_m_bc,
  e_c_bm,
  r_min,
  g_ratio,
  chi,
  stable,
  n_b_reduced,
  dx2_reduced,
};

enum class OutputFormat { csv, json };

struct SweepConfig {
  PhysicalParams base;
  /// Phonon frequency in Hz; required only for a `temperature` axis.
  std::optional<double> omega_b_hz;
  std::vector<AxisSpec> axes;
  std::vector<Observable> observables;
  std::string out_path = "sweep.csv";
  OutputFormat format = OutputFormat::csv;
  DiffusionVariant diffusion_variant = DiffusionVariant::standard;

  /// Throws ConfigError (line 0) on 0 or > 2 axes, count < 2, bad log range,
  /// duplicate axes, unknown axis names or an empty observable list.
  void validate() const;
};

std::string_view observable_name(Observable o);
std::optional<Observable> parse_observable(std::string_view name);

/// Parameters an axis may sweep: every real field of PhysicalParams, the two
/// drive amplitudes (phase kept from the base value) and `temperature`.
bool is_sweepable(std::string_view name);

/// Sets `name` to `value` on a copy of `base`. `temperature` (kelvin) sets
/// nbar0 from omega_b_hz.
PhysicalParams with_parameter(const PhysicalParams& base, std::string_view name, double value,
                              std::optional<double> omega_b_hz = std::nullopt);

/// Parses and validates a configuration; errors carry the offending line and key.
SweepConfig parse_config(std::istream& in);
SweepConfig load_config(const std::string& path);

}  // namespace magnomech
