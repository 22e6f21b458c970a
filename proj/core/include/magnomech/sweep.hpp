#pragma once

// Grid sweeps over the physical parameters, the tabular writers and the
// analytic overlay loci that accompany a two-axis sweep.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "magnomech/config.hpp"

namespace magnomech {

struct PointResult {
  std::vector<double> values;  ///< one per requested observable, NaN when not available
  bool stable = false;
  std::string error;           ///< non-empty when the point failed numerically
};

/// Evaluates every observable at one parameter point. A working point without
/// a real phonon spectrum or a non-Hurwitz drift gives stable = false and NaN
/// for every observable that needs the steady state (chi and g_ratio are still
/// reported when a working point exists). Numeric failures are caught and
/// recorded in `error`; nothing is thrown.
PointResult evaluate_point(const PhysicalParams& p, DiffusionVariant variant,
                           const std::vector<Observable>& observables);

struct SweepRow {
  std::vector<double> coords;
  PointResult result;
};

struct SweepResult {
  std::vector<AxisSpec> axes;
  std::vector<Observable> observables;
  std::vector<SweepRow> rows;  ///< row-major: the first axis varies slowest

  bool has_errors() const;
  /// Axis names, observable names and, if any point failed, "error".
  std::vector<std::string> header() const;
};

/// MAGNOMECH_THREADS when set to a positive integer, else the hardware concurrency.
unsigned default_thread_count();

/// threads = 0 selects default_thread_count(). Output is independent of the thread count.
SweepResult run_sweep(const SweepConfig& cfg, unsigned threads = 0);

void write_csv(const SweepResult& result, std::ostream& out);
void write_json(const SweepResult& result, std::ostream& out);

enum class Locus {
  delta_c_zero,       ///< Delta_c = 0
  delta_c_resonance,  ///< Delta'_c = omega_bar
  delta_m_resonance,  ///< Delta'_m = omega_bar
};

inline constexpr Locus kAllLoci[] = {Locus::delta_c_zero, Locus::delta_c_resonance,
                                     Locus::delta_m_resonance};

std::string_view locus_name(Locus l);

/// Signed distance from the locus at one parameter point; NaN when the
/// working point does not exist.
double locus_function(Locus l, const PhysicalParams& p);

/// Roots of locus_function along one parameter over [lo, hi], bracketed on
/// `samples` uniform subintervals and polished with TOMS 748.
std::vector<double> locus_roots(Locus l, const PhysicalParams& base, std::string_view axis,
                                double lo, double hi, int samples,
                                std::optional<double> omega_b_hz = std::nullopt);

struct LocusPoint {
  int branch = 0;  ///< root index along the scan line
  double x = 0.0;  ///< first-axis coordinate
  double y = 0.0;  ///< second-axis coordinate (NaN for a one-axis sweep)
};

struct Polyline {
  Locus locus = Locus::delta_c_zero;
  /// Axis index held fixed on each scan line (0 or 1); the other axis is root-solved.
  int fixed_axis = 0;
  std::vector<LocusPoint> points;
};

/// For a two-axis sweep, each locus is root-solved along every grid line in
/// both orientations and the orientation with more crossings is kept. For a
/// single axis the roots along it are returned.
std::vector<Polyline> overlay_loci(const SweepConfig& cfg);

void write_polyline_csv(const Polyline& line, const SweepConfig& cfg, std::ostream& out);

struct WrittenFiles {
  std::string data;
  std::string manifest;
  std::vector<std::string> loci;
};

/// Writes the table to cfg.out_path, one "<stem>.<locus>.csv" per non-empty
/// locus, and "<out_path>.manifest.json" with base parameters, axes, version
/// and the locus file list.
WrittenFiles write_outputs(const SweepConfig& cfg, const SweepResult& result);

}  // namespace magnomech
