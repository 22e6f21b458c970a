#include "magnomech/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <thread>

#include <boost/math/tools/roots.hpp>
#include <json.hpp>

#include "magnomech/entanglement.hpp"
#include "magnomech/errors.hpp"
#include "magnomech/format.hpp"
#include "magnomech/reduced.hpp"
#include "magnomech/version.hpp"

namespace magnomech {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool wants(const std::vector<Observable>& obs, std::initializer_list<Observable> any) {
  return std::any_of(obs.begin(), obs.end(), [&](Observable o) {
    return std::find(any.begin(), any.end(), o) != any.end();
  });
}

void set(PointResult& r, const std::vector<Observable>& obs, Observable o, double v) {
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (obs[i] == o) r.values[i] = v;
  }
}

std::string_view variant_name(DiffusionVariant v) {
  return v == DiffusionVariant::supplement ? "supplement" : "standard";
}

nlohmann::json params_json(const PhysicalParams& p) {
  auto cplx = [](Complex c) { return nlohmann::json::array({c.real(), c.imag()}); };
  return {{"omega_b", p.omega_b},         {"delta_c", p.delta_c},
          {"delta_m", p.delta_m},         {"gamma_b", p.gamma_b},
          {"gamma_c", p.gamma_c},         {"gamma_m", p.gamma_m},
          {"g_bc", p.g_bc},               {"g_bm", p.g_bm},
          {"omega_cap_c", cplx(p.omega_cap_c)}, {"omega_cap_m", cplx(p.omega_cap_m)},
          {"nbar0", p.nbar0}};
}

nlohmann::json number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return format_double(x);
  return rounded(x);
}

}  // namespace

PointResult evaluate_point(const PhysicalParams& p, DiffusionVariant variant,
                           const std::vector<Observable>& obs) {
  PointResult r;
  r.values.assign(obs.size(), kNaN);
  try {
    WorkingPoint wp;
    try {
      wp = derive_working_point(p);
    } catch (const UnstableWorkingPoint&) {
      r.stable = false;
      set(r, obs, Observable::stable, 0.0);
      return r;
    }
    set(r, obs, Observable::chi, wp.chi);
    set(r, obs, Observable::g_ratio, std::abs(wp.g_cap_bm) / std::abs(wp.g_cap_bc));

    const GaussianModel model = build_model(wp, p, variant);
    r.stable = is_stable(model).stable;
    set(r, obs, Observable::stable, r.stable ? 1.0 : 0.0);
    if (!r.stable) return r;

    using O = Observable;
    if (wants(obs, {O::n_b, O::dx2, O::dx2_min, O::e_bm, O::e_bc, O::e_mc, O::e_b_mc, O::e_m_bc,
                    O::e_c_bm, O::r_min})) {
      const CovarianceMatrix v = steady_covariance(model);
      const PhononObservables ph = phonon_observables(v);
      set(r, obs, O::n_b, ph.n_b);
      set(r, obs, O::dx2, ph.dx2);
      set(r, obs, O::dx2_min, ph.dx2_min);
      if (wants(obs, {O::e_bm, O::e_bc, O::e_mc, O::e_b_mc, O::e_m_bc, O::e_c_bm, O::r_min})) {
        const EntanglementReport e = residual_contangle(v);
        set(r, obs, O::e_bm, e.e_bm);
        set(r, obs, O::e_bc, e.e_bc);
        set(r, obs, O::e_mc, e.e_mc);
        set(r, obs, O::e_b_mc, e.e_1v2[0]);
        set(r, obs, O::e_m_bc, e.e_1v2[1]);
        set(r, obs, O::e_c_bm, e.e_1v2[2]);
        set(r, obs, O::r_min, e.r_min);
      }
    }
    if (wants(obs, {O::n_b_reduced, O::dx2_reduced})) {
      try {
        const ReducedPhononResult red = solve_reduced_phonon(wp, p);
        set(r, obs, O::n_b_reduced, red.n_b_ss);
        set(r, obs, O::dx2_reduced, red.dx2);
      } catch (const ReducedModelUnstable&) {
      }
    }
  } catch (const std::exception& e) {
    r.values.assign(obs.size(), kNaN);
    r.error = e.what();
  }
  return r;
}

bool SweepResult::has_errors() const {
  return std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.result.error.empty(); });
}

std::vector<std::string> SweepResult::header() const {
  std::vector<std::string> h;
  for (const auto& a : axes) h.push_back(a.name);
  for (Observable o : observables) h.emplace_back(observable_name(o));
  if (has_errors()) h.emplace_back("error");
  return h;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("MAGNOMECH_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepResult run_sweep(const SweepConfig& cfg, unsigned threads) {
  cfg.validate();
  SweepResult res;
  res.axes = cfg.axes;
  res.observables = cfg.observables;

  std::vector<std::vector<double>> grid;
  for (const auto& a : cfg.axes) grid.push_back(a.values());
  std::size_t total = 1;
  for (const auto& g : grid) total *= g.size();
  res.rows.resize(total);

  const auto evaluate = [&](std::size_t idx) {
    SweepRow& row = res.rows[idx];
    PhysicalParams p = cfg.base;
    std::size_t rem = idx;
    row.coords.assign(grid.size(), 0.0);
    for (std::size_t k = grid.size(); k-- > 0;) {
      row.coords[k] = grid[k][rem % grid[k].size()];
      rem /= grid[k].size();
    }
    try {
      for (std::size_t k = 0; k < grid.size(); ++k) {
        p = with_parameter(p, cfg.axes[k].name, row.coords[k], cfg.omega_b_hz);
      }
    } catch (const std::exception& e) {
      row.result.values.assign(cfg.observables.size(), kNaN);
      row.result.error = e.what();
      return;
    }
    row.result = evaluate_point(p, cfg.diffusion_variant, cfg.observables);
  };

  const unsigned n_threads =
      static_cast<unsigned>(std::min<std::size_t>(threads ? threads : default_thread_count(), total));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < total; ++i) evaluate(i);
    return res;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < total; i = next++) evaluate(i);
      });
    }
  }
  return res;
}

void write_csv(const SweepResult& result, std::ostream& out) {
  const auto header = result.header();
  const bool with_error = result.has_errors();
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : result.rows) {
    bool first = true;
    for (double c : row.coords) {
      out << (first ? "" : ",") << format_double(c);
      first = false;
    }
    for (double v : row.result.values) out << ',' << format_double(v);
    if (with_error) {
      std::string msg = row.result.error;
      std::replace(msg.begin(), msg.end(), '"', '\'');
      out << ",\"" << msg << '"';
    }
    out << '\n';
  }
}

void write_json(const SweepResult& result, std::ostream& out) {
  nlohmann::json doc;
  doc["columns"] = result.header();
  nlohmann::json rows = nlohmann::json::array();
  const bool with_error = result.has_errors();
  for (const auto& row : result.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (double c : row.coords) r.push_back(number(c));
    for (double v : row.result.values) r.push_back(number(v));
    if (with_error) r.push_back(row.result.error);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(1) << '\n';
}

std::string_view locus_name(Locus l) {
  switch (l) {
    case Locus::delta_c_zero: return "delta_c_zero";
    case Locus::delta_c_resonance: return "delta_c_prime_eq_omega_bar";
    case Locus::delta_m_resonance: return "delta_m_prime_eq_omega_bar";
  }
  return "?";
}

double locus_function(Locus l, const PhysicalParams& p) {
  if (l == Locus::delta_c_zero) return p.delta_c;
  try {
    const WorkingPoint wp = derive_working_point(p);
    return l == Locus::delta_c_resonance ? wp.delta_c_prime - wp.omega_bar
                                         : wp.delta_m_prime - wp.omega_bar;
  } catch (const Error&) {
    return kNaN;
  }
}

std::vector<double> locus_roots(Locus l, const PhysicalParams& base, std::string_view axis,
                                double lo, double hi, int samples, std::optional<double> omega_b_hz) {
  std::vector<double> roots;
  if (samples < 1 || !(hi > lo)) return roots;
  const auto f = [&](double x) { return locus_function(l, with_parameter(base, axis, x, omega_b_hz)); };
  double x0 = lo;
  double f0 = f(x0);
  for (int i = 1; i <= samples; ++i) {
    const double x1 = i == samples ? hi : lo + (hi - lo) * i / samples;
    const double f1 = f(x1);
    if (f0 == 0.0) {
      roots.push_back(x0);
    } else if (std::isfinite(f0) && std::isfinite(f1) && f1 != 0.0 && (f0 < 0.0) != (f1 < 0.0)) {
      std::uintmax_t iters = 200;
      const auto [a, b] = boost::math::tools::toms748_solve(
          f, x0, x1, f0, f1, boost::math::tools::eps_tolerance<double>(50), iters);
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  if (f0 == 0.0) roots.push_back(x0);
  return roots;
}

std::vector<Polyline> overlay_loci(const SweepConfig& cfg) {
  std::vector<Polyline> out;
  if (cfg.axes.empty()) return out;
  if (cfg.axes.size() == 1) {
    const AxisSpec& a = cfg.axes[0];
    const double lo = std::min(a.start, a.stop), hi = std::max(a.start, a.stop);
    for (Locus l : kAllLoci) {
      Polyline pl{l, 0, {}};
      int branch = 0;
      for (double x : locus_roots(l, cfg.base, a.name, lo, hi, 8 * a.count, cfg.omega_b_hz)) {
        pl.points.push_back({branch++, x, kNaN});
      }
      out.push_back(std::move(pl));
    }
    return out;
  }

  for (Locus l : kAllLoci) {
    Polyline best{l, 0, {}};
    for (int fixed = 0; fixed < 2; ++fixed) {
      const AxisSpec& held = cfg.axes[static_cast<std::size_t>(fixed)];
      const AxisSpec& scan = cfg.axes[static_cast<std::size_t>(1 - fixed)];
      const double lo = std::min(scan.start, scan.stop), hi = std::max(scan.start, scan.stop);
      Polyline pl{l, fixed, {}};
      for (double h : held.values()) {
        const PhysicalParams p = with_parameter(cfg.base, held.name, h, cfg.omega_b_hz);
        int branch = 0;
        for (double x : locus_roots(l, p, scan.name, lo, hi, 8 * scan.count, cfg.omega_b_hz)) {
          pl.points.push_back(fixed == 0 ? LocusPoint{branch, h, x} : LocusPoint{branch, x, h});
          ++branch;
        }
      }
      if (pl.points.size() > best.points.size()) best = std::move(pl);
    }
    out.push_back(std::move(best));
  }
  return out;
}

void write_polyline_csv(const Polyline& line, const SweepConfig& cfg, std::ostream& out) {
  out << "branch," << cfg.axes.at(0).name;
  if (cfg.axes.size() > 1) out << ',' << cfg.axes[1].name;
  out << '\n';
  for (const auto& pt : line.points) {
    out << pt.branch << ',' << format_double(pt.x);
    if (cfg.axes.size() > 1) out << ',' << format_double(pt.y);
    out << '\n';
  }
}

WrittenFiles write_outputs(const SweepConfig& cfg, const SweepResult& result) {
  namespace fs = std::filesystem;
  WrittenFiles files;
  files.data = cfg.out_path;
  const fs::path data_path(cfg.out_path);
  if (data_path.has_parent_path()) fs::create_directories(data_path.parent_path());

  {
    std::ofstream out(data_path, std::ios::binary);
    if (!out) throw Error("cannot write '" + cfg.out_path + "'");
    if (cfg.format == OutputFormat::json) {
      write_json(result, out);
    } else {
      write_csv(result, out);
    }
  }

  nlohmann::json loci = nlohmann::json::array();
  for (const Polyline& pl : overlay_loci(cfg)) {
    if (pl.points.empty()) continue;
    fs::path p = data_path;
    p.replace_extension();
    const std::string path = p.string() + "." + std::string(locus_name(pl.locus)) + ".csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    write_polyline_csv(pl, cfg, out);
    files.loci.push_back(path);
    loci.push_back({{"locus", locus_name(pl.locus)},
                    {"file", fs::path(path).filename().string()},
                    {"points", pl.points.size()},
                    {"solved_along", cfg.axes[static_cast<std::size_t>(1 - pl.fixed_axis) % cfg.axes.size()].name}});
  }

  nlohmann::json axes = nlohmann::json::array();
  for (const auto& a : cfg.axes) {
    axes.push_back({{"name", a.name},
                    {"start", a.start},
                    {"stop", a.stop},
                    {"count", a.count},
                    {"spacing", a.spacing == Spacing::log ? "log" : "linear"}});
  }
  std::size_t failed = 0, unstable = 0;
  for (const auto& r : result.rows) {
    failed += !r.result.error.empty();
    unstable += r.result.error.empty() && !r.result.stable;
  }
  nlohmann::json manifest{{"version", kVersion},
                          {"data", data_path.filename().string()},
                          {"format", cfg.format == OutputFormat::json ? "json" : "csv"},
                          {"diffusion_variant", variant_name(cfg.diffusion_variant)},
                          {"base", params_json(cfg.base)},
                          {"axes", axes},
                          {"columns", result.header()},
                          {"rows", result.rows.size()},
                          {"unstable_points", unstable},
                          {"failed_points", failed},
                          {"loci", loci}};
  if (cfg.omega_b_hz) manifest["omega_b_hz"] = *cfg.omega_b_hz;

  files.manifest = cfg.out_path + ".manifest.json";
  std::ofstream out(files.manifest, std::ios::binary);
  if (!out) throw Error("cannot write '" + files.manifest + "'");
  out << manifest.dump(1) << '\n';
  return files;
}

}  // namespace magnomech
