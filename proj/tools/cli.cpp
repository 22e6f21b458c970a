#include "cli.hpp"

#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "magnomech/config.hpp"
#include "magnomech/entanglement.hpp"
#include "magnomech/errors.hpp"
#include "magnomech/format.hpp"
#include "magnomech/gaussian.hpp"
#include "magnomech/model.hpp"
#include "magnomech/oracle_suite.hpp"
#include "magnomech/reduced.hpp"
#include "magnomech/sweep.hpp"
#include "magnomech/version.hpp"

namespace magnomech {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

struct PointOptions {
  PhysicalParams p = reference_params();
  double omega_c = 300.0;
  double omega_m = 400.0;
  std::string variant = "standard";
  bool json = false;

  PhysicalParams params() const {
    PhysicalParams q = p;
    q.omega_cap_c = omega_c;
    q.omega_cap_m = omega_m;
    return q;
  }
  DiffusionVariant diffusion() const {
    return variant == "supplement" ? DiffusionVariant::supplement : DiffusionVariant::standard;
  }
};

void add_point_options(CLI::App* app, PointOptions& o) {
  app->add_option("--omega-b", o.p.omega_b, "phonon frequency")->capture_default_str();
  app->add_option("--delta-c", o.p.delta_c, "photon detuning")->capture_default_str();
  app->add_option("--delta-m", o.p.delta_m, "magnon detuning")->capture_default_str();
  app->add_option("--gamma-b", o.p.gamma_b, "phonon damping")->capture_default_str();
  app->add_option("--gamma-c", o.p.gamma_c, "photon damping")->capture_default_str();
  app->add_option("--gamma-m", o.p.gamma_m, "magnon damping")->capture_default_str();
  app->add_option("--g-bc", o.p.g_bc, "photon-phonon single-quantum coupling")->capture_default_str();
  app->add_option("--g-bm", o.p.g_bm, "magnon-phonon single-quantum coupling")->capture_default_str();
  app->add_option("--omega-c", o.omega_c, "photon drive amplitude")->capture_default_str();
  app->add_option("--omega-m", o.omega_m, "magnon drive amplitude")->capture_default_str();
  app->add_option("--nbar0", o.p.nbar0, "thermal phonon occupation")->capture_default_str();
  app->add_option("--diffusion", o.variant, "diffusion matrix variant")
      ->check(CLI::IsMember({"standard", "supplement"}))
      ->capture_default_str();
  app->add_flag("--json", o.json, "print a JSON document instead of text");
}

std::string cplx(Complex c) {
  return "(" + format_double(c.real()) + ", " + format_double(c.imag()) + ")";
}

nlohmann::json cplx_json(Complex c) { return nlohmann::json::array({c.real(), c.imag()}); }

nlohmann::json working_point_json(const WorkingPoint& wp) {
  return {{"c_bar", cplx_json(wp.c_bar)},
          {"m_bar", cplx_json(wp.m_bar)},
          {"b_bar", cplx_json(wp.b_bar)},
          {"chi", wp.chi},
          {"G_bc", cplx_json(wp.g_cap_bc)},
          {"G_bm", cplx_json(wp.g_cap_bm)},
          {"delta_c_prime", wp.delta_c_prime},
          {"delta_m_prime", wp.delta_m_prime},
          {"omega_b_prime", wp.omega_b_prime},
          {"omega_bar", wp.omega_bar},
          {"r", wp.r}};
}

void print_working_point(const WorkingPoint& wp, std::ostream& out) {
  out << "working point\n"
      << "  c_bar         " << cplx(wp.c_bar) << '\n'
      << "  m_bar         " << cplx(wp.m_bar) << '\n'
      << "  b_bar         " << cplx(wp.b_bar) << '\n'
      << "  chi           " << format_double(wp.chi) << '\n'
      << "  G_bc          " << cplx(wp.g_cap_bc) << "  |G_bc| = " << format_double(std::abs(wp.g_cap_bc)) << '\n'
      << "  G_bm          " << cplx(wp.g_cap_bm) << "  |G_bm| = " << format_double(std::abs(wp.g_cap_bm)) << '\n'
      << "  delta_c'      " << format_double(wp.delta_c_prime) << '\n'
      << "  delta_m'      " << format_double(wp.delta_m_prime) << '\n'
      << "  omega_b'      " << format_double(wp.omega_b_prime) << '\n'
      << "  omega_bar     " << format_double(wp.omega_bar) << '\n'
      << "  r             " << format_double(wp.r) << '\n';
}

int run_steady(const PointOptions& o, std::ostream& out, std::ostream& err) {
  const PhysicalParams p = o.params();
  nlohmann::json doc;
  try {
    const WorkingPoint wp = derive_working_point(p);
    const GaussianModel model = build_model(wp, p, o.diffusion());
    const StabilityReport st = is_stable(model);
    doc["working_point"] = working_point_json(wp);
    doc["stable"] = st.stable;
    doc["abscissa"] = st.abscissa;
    if (!o.json) {
      print_working_point(wp, out);
      out << "stability       " << (st.stable ? "stable" : "UNSTABLE") << " (max Re eig = "
          << format_double(st.abscissa) << ")\n";
    }
    if (!st.stable) {
      if (o.json) out << doc.dump(1) << '\n';
      err << "error: drift matrix is not Hurwitz\n";
      return kExitNumeric;
    }
    const CovarianceMatrix v = steady_covariance(model);
    const PhononObservables ph = phonon_observables(v);
    const EntanglementReport e = residual_contangle(v);
    const double boundary = wp.chi / (p.omega_b * ph.n_b);
    if (o.json) {
      doc["phonon"] = {{"n_b", ph.n_b}, {"dx2", ph.dx2}, {"dy2", ph.dy2}, {"dx2_min", ph.dx2_min},
                       {"chi_over_omega_b_n_b", boundary}};
      doc["entanglement"] = {{"e_bm", e.e_bm},         {"e_bc", e.e_bc},
                             {"e_mc", e.e_mc},         {"e_b_mc", e.e_1v2[0]},
                             {"e_m_bc", e.e_1v2[1]},   {"e_c_bm", e.e_1v2[2]},
                             {"residual", e.residual}, {"r_min", e.r_min}};
      out << doc.dump(1) << '\n';
      return kExitOk;
    }
    out << "phonon\n"
        << "  n_b           " << format_double(ph.n_b) << '\n'
        << "  dx2           " << format_double(ph.dx2) << (ph.dx2 < 0.25 ? "  (squeezed)" : "") << '\n'
        << "  dy2           " << format_double(ph.dy2) << '\n'
        << "  dx2_min       " << format_double(ph.dx2_min) << '\n'
        << "  chi/(w_b n_b) " << format_double(boundary) << '\n'
        << "entanglement\n"
        << "  E_bm          " << format_double(e.e_bm) << '\n'
        << "  E_bc          " << format_double(e.e_bc) << '\n'
        << "  E_mc          " << format_double(e.e_mc) << '\n'
        << "  E_b|mc        " << format_double(e.e_1v2[0]) << '\n'
        << "  E_m|bc        " << format_double(e.e_1v2[1]) << '\n'
        << "  E_c|bm        " << format_double(e.e_1v2[2]) << '\n'
        << "  R b|mc m|bc c|bm  " << format_double(e.residual[0]) << ' ' << format_double(e.residual[1])
        << ' ' << format_double(e.residual[2]) << '\n'
        << "  r_min         " << format_double(e.r_min) << '\n';
    return kExitOk;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

int run_reduced(const PointOptions& o, bool bare, std::ostream& out, std::ostream& err) {
  const PhysicalParams p = o.params();
  try {
    const WorkingPoint wp = derive_working_point(p);
    const ReducedPhononResult r = solve_reduced_phonon(wp, p, ReducedOptions{bare});
    if (o.json) {
      nlohmann::json doc{{"working_point", working_point_json(wp)},
                         {"zeta_plus_c", cplx_json(r.zeta.plus_c)},
                         {"zeta_minus_c", cplx_json(r.zeta.minus_c)},
                         {"zeta_plus_m", cplx_json(r.zeta.plus_m)},
                         {"zeta_minus_m", cplx_json(r.zeta.minus_m)},
                         {"omega_b_tilde", r.omega_b_tilde},
                         {"n_b", r.n_b_ss},
                         {"b2", cplx_json(r.b2_ss)},
                         {"dx2", r.dx2},
                         {"squeezed", r.squeezed}};
      out << doc.dump(1) << '\n';
      return kExitOk;
    }
    print_working_point(wp, out);
    out << "reduced phonon model\n"
        << "  zeta_+c       " << cplx(r.zeta.plus_c) << '\n'
        << "  zeta_-c       " << cplx(r.zeta.minus_c) << '\n'
        << "  zeta_+m       " << cplx(r.zeta.plus_m) << '\n'
        << "  zeta_-m       " << cplx(r.zeta.minus_m) << '\n'
        << "  cooling rate  " << format_double(r.zeta.cooling_rate()) << '\n'
        << "  omega_b~      " << format_double(r.omega_b_tilde) << '\n'
        << "  n_b           " << format_double(r.n_b_ss) << '\n'
        << "  <b^2>         " << cplx(r.b2_ss) << '\n'
        << "  dx2           " << format_double(r.dx2) << (r.squeezed ? "  (squeezed)" : "") << '\n';
    return kExitOk;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

struct SweepOptions {
  std::string config;
  std::string out;
  std::string format;
  std::string variant;
  unsigned threads = 0;
};

void report_config_error(const ConfigError& e, const std::string& path, std::ostream& err) {
  err << "config error in " << path;
  if (e.line() > 0) err << " (line " << e.line() << ")";
  if (!e.key().empty()) err << " [" << e.key() << "]";
  err << ": " << e.what() << '\n';
}

bool load(const SweepOptions& o, SweepConfig& cfg, std::ostream& err) {
  try {
    cfg = load_config(o.config);
  } catch (const ConfigError& e) {
    report_config_error(e, o.config, err);
    return false;
  }
  if (!o.out.empty()) cfg.out_path = o.out;
  if (o.format == "csv") cfg.format = OutputFormat::csv;
  if (o.format == "json") cfg.format = OutputFormat::json;
  if (o.variant == "standard") cfg.diffusion_variant = DiffusionVariant::standard;
  if (o.variant == "supplement") cfg.diffusion_variant = DiffusionVariant::supplement;
  return true;
}

int run_sweep_command(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  SweepConfig cfg;
  if (!load(o, cfg, err)) return kExitUsage;
  try {
    const SweepResult res = run_sweep(cfg, o.threads);
    const WrittenFiles files = write_outputs(cfg, res);
    std::size_t unstable = 0, failed = 0;
    for (const auto& r : res.rows) {
      failed += !r.result.error.empty();
      unstable += r.result.error.empty() && !r.result.stable;
    }
    out << "points    " << res.rows.size() << " (" << unstable << " unstable, " << failed << " failed)\n"
        << "data      " << files.data << '\n'
        << "manifest  " << files.manifest << '\n';
    for (const auto& f : files.loci) out << "locus     " << f << '\n';
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

int run_stability_command(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  SweepConfig cfg;
  if (!load(o, cfg, err)) return kExitUsage;
  cfg.observables = {Observable::stable, Observable::chi};
  try {
    const SweepResult res = run_sweep(cfg, o.threads);
    if (!o.out.empty()) write_outputs(cfg, res);
    const std::size_t inner = cfg.axes.size() == 2 ? static_cast<std::size_t>(cfg.axes[1].count) : res.rows.size();
    std::size_t stable = 0;
    out << "stability map: rows = " << cfg.axes[0].name;
    if (cfg.axes.size() == 2) out << ", columns = " << cfg.axes[1].name;
    out << " ('#' stable, '.' unstable, '!' failed)\n";
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
      const auto& r = res.rows[i].result;
      stable += r.stable;
      out << (!r.error.empty() ? '!' : r.stable ? '#' : '.');
      if ((i + 1) % inner == 0) out << '\n';
    }
    out << "stable " << stable << " / " << res.rows.size() << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

int run_oracle_command(const std::string& suite, std::ostream& out, std::ostream& err) {
  try {
    const auto checks = run_oracle_suite(suite);
    bool all = true;
    double total = 0.0;
    for (const auto& c : checks) {
      all = all && c.pass;
      total += c.seconds;
      out << (c.pass ? "PASS" : "FAIL") << "  [" << c.suite << "] " << c.name << "\n      error "
          << format_double(c.error) << " (tol " << format_double(c.tolerance) << "), "
          << std::fixed << std::setprecision(2) << c.seconds << std::defaultfloat << " s\n      " << c.detail
          << '\n';
    }
    out << (all ? "all oracle checks passed" : "some oracle checks FAILED") << " (" << std::fixed
        << std::setprecision(1) << total << std::defaultfloat << " s)\n";
    return all ? kExitOk : kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steady-state phonon squeezing and entanglement in a driven photon-phonon-magnon system",
               "magnomech"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  PointOptions steady_opts;
  auto* steady = app.add_subcommand("steady", "single working point: full Gaussian steady-state report");
  add_point_options(steady, steady_opts);

  PointOptions reduced_opts;
  bool bare = false;
  auto* reduced = app.add_subcommand("reduced", "single working point: reduced phonon model only");
  add_point_options(reduced, reduced_opts);
  reduced->add_flag("--bare-detunings", bare, "use Delta_x instead of Delta'_x in the bath rates");

  SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "evaluate a parameter grid described by a config file");
  sweep->add_option("config", sweep_opts.config, "configuration file")->required()->check(CLI::ExistingFile);
  sweep->add_option("-o,--out", sweep_opts.out, "override the output path");
  sweep->add_option("--format", sweep_opts.format, "override the output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--diffusion", sweep_opts.variant, "override the diffusion variant")
      ->check(CLI::IsMember({"standard", "supplement"}));
  sweep->add_option("-j,--threads", sweep_opts.threads, "worker threads (0 = MAGNOMECH_THREADS or all cores)");

  SweepOptions stab_opts;
  auto* stability = app.add_subcommand("stability", "print the stability map of a config's grid");
  stability->add_option("config", stab_opts.config, "configuration file")->required()->check(CLI::ExistingFile);
  stability->add_option("-o,--out", stab_opts.out, "also write the map as a table");
  stability->add_option("-j,--threads", stab_opts.threads, "worker threads");

  std::string suite = "all";
  auto* oracle = app.add_subcommand("oracle", "run the truncated master-equation validation suite");
  std::vector<std::string> names;
  for (auto n : oracle_suite_names()) names.emplace_back(n);
  oracle->add_option("--suite", suite, "which checks to run")->check(CLI::IsMember(names))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*steady) return run_steady(steady_opts, out, err);
  if (*reduced) return run_reduced(reduced_opts, bare, out, err);
  if (*sweep) return run_sweep_command(sweep_opts, out, err);
  if (*stability) return run_stability_command(stab_opts, out, err);
  if (*oracle) return run_oracle_command(suite, out, err);
  return kExitUsage;
}

int cli_main(int argc, const char* const* argv) { return cli_main(argc, argv, std::cout, std::cerr); }

}  // namespace magnomech
