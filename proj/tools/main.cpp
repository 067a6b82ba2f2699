// zenocoll command-line runner: executes experiment presets and configs,
// generates closed-form curves, validates timescale separation and compares
// result files.  Talks to the core exclusively through the C API.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zenocoll.h"

namespace {

[[noreturn]] void fail(zc_status status) {
  std::fprintf(stderr, "error (%d): %s\n", static_cast<int>(status),
               zc_last_error());
  std::exit(1);
}

std::vector<double> parse_grid(const std::string& spec) {
  // "start:stop:count"
  double start = 0.0, stop = 0.0;
  long count = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%ld", &start, &stop, &count) != 3 ||
      count < 2 || !(stop > start)) {
    std::fprintf(stderr, "bad grid spec '%s' (want start:stop:count)\n",
                 spec.c_str());
    std::exit(1);
  }
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i)
    grid[static_cast<std::size_t>(i)] =
        start + (stop - start) * static_cast<double>(i) / (count - 1);
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zenocoll - collision-driven Zeno dynamics simulator"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string out_dir = ".";
  long particles = 0;
  std::int64_t seed = -1;
  std::string format = "csv";
  app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
  app.add_option("--particles", particles, "override trajectory count");
  app.add_option("--seed", seed, "override random seed");
  app.add_option("--format", format, "data file format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  // run ----------------------------------------------------------------
  auto* run = app.add_subcommand("run", "run a preset id, config file or manifest");
  std::string target;
  run->add_option("target", target, "preset id, config path or manifest.json")
      ->required();

  // validate -----------------------------------------------------------
  auto* validate = app.add_subcommand("validate", "timescale-separation report");
  std::string validate_path;
  validate->add_option("config", validate_path, "config file")->required();

  // curves -------------------------------------------------------------
  auto* curves = app.add_subcommand("curves", "closed-form curve generator");
  std::string curve_name, grid_spec = "0:2:201", curve_out;
  double scaling_x = 0.0;
  curves->add_option("name", curve_name, "curve name (see README)")->required();
  curves->add_option("--x", grid_spec, "t/T_R grid as start:stop:count")
      ->capture_default_str();
  curves->add_option("--scaling-x", scaling_x, "case-local scaling parameter x");
  curves->add_option("--out", curve_out, "output CSV (default: <name>.csv)");

  // compare ------------------------------------------------------------
  auto* compare = app.add_subcommand("compare", "compare two result files");
  std::string file_a, file_b, tol;
  compare->add_option("a", file_a, "first file")->required();
  compare->add_option("b", file_b, "second file")->required();
  compare->add_option("--tol", tol,
                      "tolerance spec, e.g. maxabs=0.05,zmax=3,resample");

  CLI11_PARSE(app, argc, argv);

  static char buffer[1 << 16];

  if (*run) {
    const bool preset = !std::filesystem::exists(target);
    zc_status status;
    if (preset) {
      status = zc_run_preset(target.c_str(), out_dir.c_str(), particles, seed,
                             format.c_str(), buffer, sizeof buffer);
    } else {
      zc_config* config = nullptr;
      status = zc_config_load(target.c_str(), &config);
      if (status != ZC_OK) fail(status);
      status = zc_run_to_files(config, out_dir.c_str(), particles, seed,
                               format.c_str(), buffer, sizeof buffer);
      zc_config_free(config);
    }
    if (status != ZC_OK) fail(status);
    std::printf("%s", buffer);
    return 0;
  }

  if (*validate) {
    zc_config* config = nullptr;
    zc_status status = zc_config_load(validate_path.c_str(), &config);
    if (status != ZC_OK) fail(status);
    int passed = 0;
    status = zc_validate(config, buffer, sizeof buffer, &passed);
    zc_config_free(config);
    if (status != ZC_OK) fail(status);
    std::printf("%s\n", buffer);
    return passed ? 0 : 1;
  }

  if (*curves) {
    const std::vector<double> grid = parse_grid(grid_spec);
    zc_series* series = nullptr;
    zc_status status =
        zc_curve(curve_name.c_str(), scaling_x, grid.data(), grid.size(), &series);
    if (status != ZC_OK) fail(status);
    const std::string path =
        curve_out.empty() ? out_dir + "/" + curve_name + ".csv" : curve_out;
    status = zc_series_write_csv(series, "p_left", path.c_str());
    zc_series_free(series);
    if (status != ZC_OK) fail(status);
    std::printf("%s\n", path.c_str());
    return 0;
  }

  if (*compare) {
    int passed = 0;
    const zc_status status = zc_compare_files(
        file_a.c_str(), file_b.c_str(), tol.c_str(), buffer, sizeof buffer, &passed);
    if (status != ZC_OK) fail(status);
    std::printf("%s\n", buffer);
    return passed ? 0 : 1;
  }
  return 0;
}
