#include <sstream>

#include <doctest.h>

#include "magnomech/config.hpp"
#include "magnomech/errors.hpp"

using namespace magnomech;

namespace {

SweepConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ConfigError parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected ConfigError");
  return ConfigError("", 0, "");
}

const char* kMinimal = R"(# comment
[base]
omega_cap_c = (300, 20)
delta_m = 1.69   # trailing comment

[axis]
name = delta_c
start = -1
stop = 3
count = 5

[axis]
name = nbar0
start = 0.01
stop = 100
count = 5
spacing = log

[output]
observables = n_b, dx2 ,stable
path = out/a.csv
format = json
diffusion_variant = supplement
)";

}  // namespace

TEST_CASE("full grammar") {
  const SweepConfig c = parse(kMinimal);
  CHECK(c.base.omega_cap_c == Complex{300, 20});
  CHECK(c.base.omega_cap_m == Complex{400, 0});
  CHECK(c.base.delta_m == 1.69);
  REQUIRE(c.axes.size() == 2);
  CHECK(c.axes[0].name == "delta_c");
  CHECK(c.axes[1].spacing == Spacing::log);
  CHECK(c.observables == std::vector<Observable>{Observable::n_b, Observable::dx2, Observable::stable});
  CHECK(c.out_path == "out/a.csv");
  CHECK(c.format == OutputFormat::json);
  CHECK(c.diffusion_variant == DiffusionVariant::supplement);
}

TEST_CASE("axis values") {
  AxisSpec lin{"delta_c", -1, 3, 5};
  CHECK(lin.values() == std::vector<double>{-1, 0, 1, 2, 3});
  AxisSpec lg{"nbar0", 0.01, 100, 5, Spacing::log};
  const auto v = lg.values();
  CHECK(v.front() == doctest::Approx(0.01));
  CHECK(v[2] == doctest::Approx(1.0));
  CHECK(v.back() == doctest::Approx(100.0));
}

TEST_CASE("errors carry the line and key") {
  {
    const ConfigError e = parse_error("[base]\n\ngamma_b = fast\n[axis]\nname = delta_c\n[output]\nobservables = n_b\n");
    CHECK(e.line() == 3);
    CHECK(e.key() == "gamma_b");
  }
  {
    const ConfigError e = parse_error("[base]\nbogus = 1\n");
    CHECK(e.line() == 2);
    CHECK(e.key() == "bogus");
  }
  {
    const ConfigError e = parse_error("[axis]\nname = delta_c\ncount = 1\n");
    CHECK(e.line() == 3);
    CHECK(e.key() == "count");
  }
  {
    const ConfigError e = parse_error("[output]\nobservables = n_b, entropy\n");
    CHECK(e.line() == 2);
    CHECK(e.key() == "observables");
  }
  {
    const ConfigError e = parse_error("delta_c = 1\n");
    CHECK(e.line() == 1);
  }
  {
    const ConfigError e = parse_error("[wrong]\n");
    CHECK(e.line() == 1);
  }
  {
    const ConfigError e = parse_error("[axis]\nname = omega_c\n");
    CHECK(e.line() == 2);
    CHECK(e.key() == "name");
  }
}

TEST_CASE("whole-config validation") {
  {
    const ConfigError e = parse_error("[axis]\nname = delta_c\nstart = 0\ncount = 3\n[output]\nobservables = n_b\n");
    CHECK(e.key() == "stop");
  }
  CHECK_THROWS_AS(parse("[output]\nobservables = n_b\n"), ConfigError);
  CHECK_THROWS_AS(parse("[axis]\nname = delta_c\nstart = 0\nstop = 1\ncount = 3\n[output]\n"), ConfigError);
  CHECK_THROWS_AS(parse("[axis]\nname = delta_c\nstart = 0\nstop = 1\ncount = 3\n[axis]\nname = delta_c\nstart = 0\nstop = 1\ncount = 3\n[output]\nobservables = n_b\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse("[axis]\nname = nbar0\nstart = 0\nstop = 1\ncount = 3\nspacing = log\n[output]\nobservables = n_b\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse("[axis]\nname = temperature\nstart = 0\nstop = 1\ncount = 3\n[output]\nobservables = n_b\n"), ConfigError);
  const SweepConfig t =
      parse("[base]\nomega_b_hz = 1e7\n[axis]\nname = temperature\nstart = 0\nstop = 1\ncount = 3\n[output]\nobservables = n_b\n");
  CHECK(*t.omega_b_hz == 1e7);
}

TEST_CASE("parameter substitution") {
  const PhysicalParams base = reference_params();
  CHECK(with_parameter(base, "delta_c", 0.7).delta_c == 0.7);
  PhysicalParams b2 = base;
  b2.omega_cap_m = Complex{0, 400};
  const Complex om = with_parameter(b2, "omega_cap_m", 100).omega_cap_m;
  CHECK(std::abs(om - Complex{0, 100}) <= 1e-12);
  CHECK(with_parameter(base, "temperature", 0.0, 1e7).nbar0 == 0.0);
  CHECK(with_parameter(base, "temperature", 1.0, 1e7).nbar0 > 1000);
  CHECK_THROWS_AS(with_parameter(base, "temperature", 1.0), InvalidParameter);
  CHECK_THROWS_AS(with_parameter(base, "nope", 1.0), InvalidParameter);
  CHECK(is_sweepable("g_bm"));
  CHECK_FALSE(is_sweepable("omega_c"));
}

TEST_CASE("observable names round-trip") {
  for (int i = 0; i <= static_cast<int>(Observable::dx2_reduced); ++i) {
    const auto o = static_cast<Observable>(i);
    CHECK(parse_observable(observable_name(o)) == o);
  }
  CHECK_FALSE(parse_observable("nb").has_value());
}

TEST_CASE("shipped configs load") {
  for (const char* f : {"fig1c", "fig2a", "fig2b", "fig2c", "fig3a", "fig3d"}) {
    CAPTURE(f);
    CHECK_NOTHROW(load_config(std::string(MAGNOMECH_CONFIG_DIR) + "/" + f + ".cfg"));
  }
  CHECK_THROWS_AS(load_config("/nonexistent/x.cfg"), ConfigError);
}
