#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "analytic.hpp"
#include "compare.hpp"
#include "config.hpp"
#include "presets.hpp"
#include "series.hpp"

using namespace zenocoll;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::filesystem::path temp_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("zenocoll_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("defaults fill in around the required keys") {
    const ExperimentConfig cfg = parse_config(
        "engine = reduced-master\n"
        "tau_inv = 800 TR\n");
    CHECK(cfg.engine == Engine::ReducedMaster);
    CHECK(cfg.params.n_left == 40);
    CHECK(cfg.params.n_right == 40);
    CHECK(cfg.params.omega_left == doctest::Approx(1.3e10));
    CHECK(cfg.params.omega_right == doctest::Approx(9.7e9));
    CHECK(cfg.params.rabi == doctest::Approx(935.0));
    CHECK(cfg.particles == 5000);
    CHECK(cfg.params.tau == doctest::Approx(cfg.params.rabi_period() / 800.0));
  }
  SUBCASE("comments, blank lines, unit suffixes") {
    const ExperimentConfig cfg = parse_config(
        "# a comment\n"
        "engine = monte-carlo\n"
        "\n"
        "tau = 2.5e-6 s   # inline comment\n"
        "t_max = 0.75 TR\n"
        "alpha_left = 0.2\n"
        "alpha_right = 0\n"
        "seed = 99\n");
    CHECK(cfg.params.tau == doctest::Approx(2.5e-6));
    CHECK(cfg.t_max_tr == doctest::Approx(0.75));
    CHECK(cfg.params.alpha_right == 0.0);  // a one-sided configuration
    CHECK(cfg.seed == 99);
  }
  SUBCASE("times in seconds convert through the Rabi period") {
    const ExperimentConfig cfg = parse_config(
        "engine = reduced-master\n"
        "tau = 0.002 TR\n"
        "t_max = 0.0201834 s\n");
    CHECK(cfg.t_max_tr ==
          doctest::Approx(0.0201834 / cfg.params.rabi_period()));
  }
  SUBCASE("non-physical values carry the offending line") {
    try {
      parse_config("engine = monte-carlo\ntau_inv = -1\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line == 2);
      CHECK(e.field == "tau_inv");
      CHECK(std::string(e.what()).find("non-physical") != std::string::npos);
    }
  }
  SUBCASE("unknown keys are rejected with their line") {
    try {
      parse_config("engine = monte-carlo\ntau_inv = 500 TR\nbogus = 1\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line == 3);
      CHECK(e.field == "bogus");
    }
  }
  SUBCASE("missing required keys") {
    CHECK_THROWS_AS(parse_config("tau_inv = 500 TR\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("engine = monte-carlo\n"), ConfigError);
  }
  SUBCASE("times demand an explicit unit") {
    CHECK_THROWS_AS(parse_config("engine = monte-carlo\ntau = 1e-6\n"),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_config("engine = monte-carlo\ntau_inv = 500 TR\nt_max = 2\n"),
        ConfigError);
  }
  SUBCASE("duplicates, malformed lines, bad engine") {
    CHECK_THROWS_AS(parse_config("engine = monte-carlo\nseed = 1\nseed = 2\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("engine monte-carlo\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("engine = warp-drive\ntau = 1 s\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("engine = analytic:\ntau = 1 s\n"), ConfigError);
  }
  SUBCASE("render/parse round trip") {
    ExperimentConfig cfg = parse_config(
        "engine = analytic:case-a-exact\n"
        "tau_inv = 1200 TR\n"
        "samples = 33\n"
        "label = roundtrip\n");
    const ExperimentConfig back = parse_config(render_config(cfg));
    CHECK(back.engine == Engine::Analytic);
    CHECK(back.analytic_curve == "case-a-exact");
    CHECK(back.samples == 33);
    CHECK(back.label == "roundtrip");
    CHECK(back.params.tau == doctest::Approx(cfg.params.tau).epsilon(1e-15));
  }
}

TEST_CASE("preset table") {
  CHECK(is_preset("fig8"));
  CHECK(is_preset("appendix-desk"));
  CHECK_FALSE(is_preset("fig99"));
  CHECK_THROWS_AS(resolve_preset("fig99"), std::invalid_argument);

  SUBCASE("fig8 resolves to the symmetric sweep") {
    const auto curves = resolve_preset("fig8");
    REQUIRE(curves.size() == 10);  // Monte Carlo plus reduced twins
    const double rates[] = {300.0, 425.0, 550.0, 675.0, 800.0};
    for (std::size_t i = 0; i < 5; ++i) {
      const ExperimentConfig& mc = curves[2 * i];
      CHECK(mc.engine == Engine::MonteCarlo);
      CHECK(mc.params.alpha_left == 0.2);
      CHECK(mc.params.alpha_right == 0.2);
      CHECK(mc.params.rabi_period() / mc.params.tau ==
            doctest::Approx(rates[i]).epsilon(1e-12));
      CHECK(curves[2 * i + 1].engine == Engine::ReducedMaster);
    }
  }
  SUBCASE("fig2 is the one-sided configuration") {
    for (const auto& cfg : resolve_preset("fig2")) {
      CHECK(cfg.params.alpha_left == 0.2);
      CHECK(cfg.params.alpha_right == 0.0);
    }
  }
  SUBCASE("fig10 bundles share x across (alpha, tau) realizations") {
    const auto curves = resolve_preset("fig10");
    REQUIRE(curves.size() == 9);
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const double x =
          scaling_parameter(curves[i].params, ScalingCase::Symmetric);
      const double expected = i < 3 ? 32.0 : i < 6 ? 48.0 : 56.0;
      CHECK(x == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("analytic curve dispatch") {
  const std::vector<double> grid = linspace(0.0, 1.0, 5);
  const auto mu = analytic_curve("mu", 32.0, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(mu[i] == doctest::Approx(moments(32.0 * grid[i]).mu).epsilon(1e-14));
  const auto stretched = analytic_curve("case-a-stretched", 48.0, grid);
  CHECK(stretched[4] ==
        doctest::Approx(case_a_pl(1.0, 48.0, CaseAVariant::Stretched)));
  const std::vector<double> small_grid{0.0, 0.001};
  const auto short_time = analytic_curve("short-time", 0.0, small_grid);
  CHECK(short_time[0] == 1.0);
  CHECK(short_time[1] ==
        doctest::Approx(1.0 - std::pow(2.0 * std::numbers::pi * 0.001, 2)));
  CHECK_THROWS_AS(analytic_curve("no-such-curve", 1.0, grid),
                  std::invalid_argument);
  // The pendulum family reduces to the first-order forms at large x.
  const std::vector<double> tg = linspace(0.0, 1.5, 61);
  const auto pend = analytic_curve("pendulum-a", 48.0, tg);
  for (std::size_t i = 0; i < tg.size(); ++i)
    CHECK(pend[i] == doctest::Approx(case_a_pl(tg[i], 48.0,
                                               CaseAVariant::ExactAnsatz))
                         .epsilon(0.05)
                         .scale(1.0));
}

TEST_CASE("series CSV round trip") {
  const auto dir = temp_dir("csv");
  const std::vector<double> t{0.0, 0.5, 1.0};
  const std::vector<double> v{1.0, 0.25, 1.0 / 3.0};
  const std::vector<double> e{0.0, 0.01, 0.02};
  const std::string path = (dir / "roundtrip.csv").string();
  write_csv_raw(t, v, e, path);
  const CsvData back = read_csv(path);
  REQUIRE(back.t_tr.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back.t_tr[i] == t[i]);  // exact: %.17g round-trips doubles
    CHECK(back.value[i] == v[i]);
    CHECK(back.stderr_[i] == e[i]);
  }
  CHECK_THROWS(read_csv((dir / "missing.csv").string()));
}

TEST_CASE("tolerance spec parsing") {
  const ToleranceSpec tol =
      ToleranceSpec::parse("maxabs=0.05,zmax=3,resample,window=0.1:1.5,"
                           "rescale=x3,xa=32,xb=48,equilibrium=0.5,exponent");
  CHECK(tol.max_abs == doctest::Approx(0.05));
  CHECK(tol.z_max == doctest::Approx(3.0));
  CHECK(tol.resample);
  CHECK(tol.rescale_x3);
  CHECK(tol.x_a == 32.0);
  CHECK(tol.window->first == doctest::Approx(0.1));
  CHECK(tol.fit_exponent);
  CHECK_THROWS_AS(ToleranceSpec::parse("nonsense=1"), std::invalid_argument);
}

TEST_CASE("series comparison") {
  std::vector<double> t = linspace(0.0, 2.0, 101);
  std::vector<double> a(t.size()), b(t.size()), err(t.size(), 0.01);
  for (std::size_t i = 0; i < t.size(); ++i) {
    a[i] = case_a_pl(t[i], 32.0, CaseAVariant::ExactAnsatz);
    b[i] = a[i];
  }

  SUBCASE("identical series give zero metrics") {
    const ComparisonReport r = compare_series({t, a, {}}, {t, b, {}},
                                              ToleranceSpec::parse("maxabs=1e-12"));
    CHECK(r.max_abs_dev == 0.0);
    CHECK(r.max_rel_dev == 0.0);
    CHECK(r.passed);
  }
  SUBCASE("deviation gates") {
    b[50] += 0.02;
    ComparisonReport r = compare_series({t, a, err}, {t, b, err},
                                        ToleranceSpec::parse("maxabs=0.01"));
    CHECK_FALSE(r.passed);
    CHECK(r.max_abs_dev == doctest::Approx(0.02));
    // z = 0.02 / sqrt(2*0.01^2) = sqrt(2)
    r = compare_series({t, a, err}, {t, b, err}, ToleranceSpec::parse("zmax=3"));
    CHECK(r.passed);
    CHECK(r.max_z == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  }
  SUBCASE("grid mismatch demands resampling") {
    std::vector<double> t2 = linspace(0.0, 2.0, 773);
    std::vector<double> b2(t2.size());
    for (std::size_t i = 0; i < t2.size(); ++i)
      b2[i] = case_a_pl(t2[i], 32.0, CaseAVariant::ExactAnsatz);
    CHECK_THROWS_AS(
        compare_series({t, a, {}}, {t2, b2, {}}, ToleranceSpec::parse("maxabs=1")),
        std::invalid_argument);
    const ComparisonReport r =
        compare_series({t, a, {}}, {t2, b2, {}},
                       ToleranceSpec::parse("maxabs=1e-3,resample"));
    CHECK(r.passed);  // linear interpolation error only
  }
  SUBCASE("relaxation time via the 1/e crossing") {
    // T_relax(32) = 32^3/(1024 pi^3) ~ 1.03 Rabi periods.
    std::vector<double> dense_t = linspace(0.0, 2.5, 25001);
    std::vector<double> dense_v(dense_t.size());
    for (std::size_t i = 0; i < dense_t.size(); ++i)
      dense_v[i] = case_a_pl(dense_t[i], 32.0, CaseAVariant::Stretched);
    const auto t_relax = relaxation_time(dense_t, dense_v, 0.5);
    REQUIRE(t_relax.has_value());
    CHECK(*t_relax == doctest::Approx(case_a_relaxation_tr(32.0)).epsilon(1e-4));
  }
  SUBCASE("stretched exponent recovery on synthetic data") {
    std::vector<double> ts = linspace(1e-3, 3.0, 400);
    std::vector<double> vs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
      vs[i] = 0.5 + 0.4 * std::exp(-1.7 * std::pow(ts[i], 0.5));
    const auto beta = stretched_exponent_fit(ts, vs, 0.5, 0.0, 3.0);
    REQUIRE(beta.has_value());
    CHECK(*beta == doctest::Approx(0.5).epsilon(1e-3));
  }
}

TEST_CASE("run_config writes reproducible outputs") {
  const auto dir = temp_dir("run");
  ExperimentConfig cfg = parse_config(
      "engine = monte-carlo\n"
      "tau_inv = 500 TR\n"
      "t_max = 0.4 TR\n"
      "samples = 21\n"
      "particles = 24\n"
      "seed = 31\n"
      "label = tiny\n");
  RunOverrides ov;
  ov.out_dir = (dir / "a").string();
  const RunOutput out_a = run_config(cfg, ov);
  REQUIRE(out_a.curves.size() == 1);
  CHECK(out_a.curves[0].data_path == (dir / "a" / "tiny.csv").string());

  ov.out_dir = (dir / "b").string();
  const RunOutput out_b = run_config(cfg, ov);
  CHECK(slurp(out_a.curves[0].data_path) == slurp(out_b.curves[0].data_path));

  SUBCASE("the manifest reproduces the data file byte for byte") {
    std::ifstream mi(out_a.curves[0].manifest_path);
    std::stringstream buffer;
    buffer << mi.rdbuf();
    const std::string manifest = buffer.str();
    // Pull the embedded config text back out (crude but format-stable).
    const auto key = manifest.find("\"config\"");
    REQUIRE(key != std::string::npos);
    const auto start = manifest.find('"', manifest.find(':', key)) + 1;
    const auto stop = manifest.find("\",", start);
    std::string doc = manifest.substr(start, stop - start);
    std::string text;
    for (std::size_t i = 0; i < doc.size(); ++i) {
      if (doc[i] == '\\' && i + 1 < doc.size() && doc[i + 1] == 'n') {
        text += '\n';
        ++i;
      } else {
        text += doc[i];
      }
    }
    const ExperimentConfig resolved = parse_config(text);
    RunOverrides ov2;
    ov2.out_dir = (dir / "c").string();
    const RunOutput out_c = run_config(resolved, ov2);
    CHECK(slurp(out_a.curves[0].data_path) == slurp(out_c.curves[0].data_path));
  }
}

TEST_CASE("preset runs are reproducible and labelled") {
  const auto dir = temp_dir("preset");
  RunOverrides ov;
  ov.particles = 6;
  ov.out_dir = (dir / "x").string();
  const RunOutput first = run_preset("fig9", ov);
  REQUIRE(first.curves.size() == 3);
  CHECK(first.curves[0].label == "fig9_alpha0p2");
  for (const auto& curve : first.curves) {
    CHECK(std::filesystem::exists(curve.data_path));
    CHECK(std::filesystem::exists(curve.manifest_path));
  }
  ov.out_dir = (dir / "y").string();
  const RunOutput second = run_preset("fig9", ov);
  for (std::size_t i = 0; i < first.curves.size(); ++i)
    CHECK(slurp(first.curves[i].data_path) == slurp(second.curves[i].data_path));
}
