// Exercises the shared library strictly through the C header.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "zenocoll.h"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

std::filesystem::path temp_dir(const std::string& tag) {
  const auto dir =
      std::filesystem::temp_directory_path() / ("zenocoll_capi_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

constexpr const char* kReducedDoc =
    "engine = reduced-master\n"
    "tau_inv = 800 TR\n"
    "t_max = 0.5 TR\n"
    "samples = 11\n";

}  // namespace

TEST_CASE("version and error state") {
  CHECK(zc_version() != nullptr);
  CHECK(std::strlen(zc_version()) > 0);
  CHECK(zc_last_error() != nullptr);
}

TEST_CASE("config lifecycle and validation") {
  zc_config* config = nullptr;
  REQUIRE(zc_config_parse(kReducedDoc, &config) == ZC_OK);
  REQUIRE(config != nullptr);

  char report[2048] = {0};
  int passed = -1;
  CHECK(zc_validate(config, report, sizeof report, &passed) == ZC_OK);
  CHECK(passed == 1);
  CHECK(std::string(report).find("shifted-ground") != std::string::npos);
  CHECK(std::string(report).find("raw-rotational") != std::string::npos);

  // Overriding a key re-parses the document.
  CHECK(zc_config_set(config, "samples", "7") == ZC_OK);
  CHECK(zc_config_set(config, "samples", "-3") == ZC_ERR_PARSE);
  zc_config_free(config);
}

TEST_CASE("parse failures surface messages and codes") {
  zc_config* config = nullptr;
  CHECK(zc_config_parse("engine = monte-carlo\ntau_inv = -1\n", &config) ==
        ZC_ERR_PARSE);
  CHECK(config == nullptr);
  CHECK(std::string(zc_last_error()).find("non-physical") != std::string::npos);
  CHECK(zc_config_parse(nullptr, &config) == ZC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("run and series access") {
  zc_config* config = nullptr;
  REQUIRE(zc_config_parse(kReducedDoc, &config) == ZC_OK);
  zc_series* series = nullptr;
  REQUIRE(zc_run(config, &series) == ZC_OK);
  REQUIRE(series != nullptr);
  CHECK(zc_series_size(series) == 11);
  const double* t = zc_series_time_tr(series);
  REQUIRE(t != nullptr);
  CHECK(t[0] == 0.0);
  CHECK(t[10] == doctest::Approx(0.5));

  const double* values = nullptr;
  const double* errors = nullptr;
  REQUIRE(zc_series_track(series, "p_left", &values, &errors) == ZC_OK);
  CHECK(values[0] == doctest::Approx(1.0));
  CHECK(values[10] < 1.0);
  CHECK(errors == nullptr);  // deterministic engine, no error bars

  const double* coh = nullptr;
  CHECK(zc_series_track(series, "coherence", &coh, nullptr) == ZC_OK);
  CHECK(zc_series_track(series, "bogus", &values, nullptr) ==
        ZC_ERR_INVALID_ARGUMENT);

  const auto dir = temp_dir("series");
  const std::string csv = (dir / "out.csv").string();
  CHECK(zc_series_write_csv(series, "p_left", csv.c_str()) == ZC_OK);
  CHECK(std::filesystem::exists(csv));

  int passed = 0;
  char report[1024] = {0};
  CHECK(zc_compare_files(csv.c_str(), csv.c_str(), "maxabs=1e-15", report,
                         sizeof report, &passed) == ZC_OK);
  CHECK(passed == 1);
  CHECK(std::string(report).find("PASS") != std::string::npos);

  zc_series_free(series);
  zc_config_free(config);
}

TEST_CASE("stiffness refusal is reported as such") {
  zc_config* config = nullptr;
  REQUIRE(zc_config_parse(
              "engine = full-master\n"
              "tau_inv = 800 TR\n"
              "t_max = 2 TR\n"
              "samples = 5\n",
              &config) == ZC_OK);
  zc_series* series = nullptr;
  CHECK(zc_run(config, &series) == ZC_ERR_STIFFNESS);
  CHECK(series == nullptr);
  CHECK(std::string(zc_last_error()).find("estimated step count") !=
        std::string::npos);
  zc_config_free(config);
}

TEST_CASE("curve generator") {
  const double grid[] = {0.0, 0.25, 0.5, 1.0};
  zc_series* series = nullptr;
  REQUIRE(zc_curve("mu", 32.0, grid, 4, &series) == ZC_OK);
  const double* values = nullptr;
  REQUIRE(zc_series_track(series, "p_left", &values, nullptr) == ZC_OK);
  CHECK(values[0] == doctest::Approx(1.0));  // mu(0) = 1
  CHECK(values[3] > values[1]);              // the mean climbs
  zc_series_free(series);
  CHECK(zc_curve("definitely-not-a-curve", 1.0, grid, 4, &series) ==
        ZC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("files, presets and manifest replay") {
  const auto dir = temp_dir("files");
  zc_config* config = nullptr;
  REQUIRE(zc_config_parse(
              "engine = monte-carlo\n"
              "tau_inv = 500 TR\n"
              "t_max = 0.3 TR\n"
              "samples = 7\n"
              "particles = 12\n"
              "seed = 5\n"
              "label = capi\n",
              &config) == ZC_OK);
  char files[4096] = {0};
  REQUIRE(zc_run_to_files(config, (dir / "a").string().c_str(), 0, -1, "csv",
                          files, sizeof files) == ZC_OK);
  zc_config_free(config);
  const std::string csv = (dir / "a" / "capi.csv").string();
  const std::string manifest = (dir / "a" / "capi.manifest.json").string();
  CHECK(std::string(files).find("capi.csv") != std::string::npos);
  REQUIRE(std::filesystem::exists(csv));
  REQUIRE(std::filesystem::exists(manifest));

  // Loading the manifest replays the run bit for bit.
  zc_config* replay = nullptr;
  REQUIRE(zc_config_load(manifest.c_str(), &replay) == ZC_OK);
  REQUIRE(zc_run_to_files(replay, (dir / "b").string().c_str(), 0, -1, "csv",
                          files, sizeof files) == ZC_OK);
  zc_config_free(replay);
  CHECK(slurp(csv) == slurp((dir / "b" / "capi.csv").string()));

  CHECK(zc_run_preset("fig99", dir.string().c_str(), 4, -1, "csv", files,
                      sizeof files) == ZC_ERR_INVALID_ARGUMENT);
}
