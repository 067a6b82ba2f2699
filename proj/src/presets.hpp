#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "config.hpp"
#include "series.hpp"

namespace zenocoll {

struct RunOverrides {
  std::optional<long> particles;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::string format = "csv";  // csv | json (value table; manifest always json)
  int max_threads = 0;
};

struct CurveOutput {
  std::string label;
  std::string observable;
  std::string data_path;
  std::string manifest_path;
};

struct RunOutput {
  std::vector<CurveOutput> curves;
};

const std::vector<std::string>& preset_ids();
bool is_preset(const std::string& id);

// Executes one resolved configuration in memory (engine dispatch).
SeriesResult run_single(const ExperimentConfig& config, int max_threads = 0);

// Closed-form curve generators, parameterized by the scaling variable alone.
// Names: case-a-exact, case-a-stretched, case-b, case-b-matched,
// case-b-tail, case-c, case-c-matched, case-c-tail, p1, mu, sigma,
// short-time, pendulum-a, pendulum-b, pendulum-c.
std::vector<double> analytic_curve(const std::string& name, double x,
                                   std::span<const double> t_tr);

// Runs a configuration and writes data plus manifest into out_dir.
RunOutput run_config(const ExperimentConfig& config, const RunOverrides& overrides);

// Runs every curve of a preset.  Preset ids: fig2, fig3, fig4-5, fig6, fig7,
// fig8, fig9, fig10, appendix-desk.
RunOutput run_preset(const std::string& id, const RunOverrides& overrides);

// Desk-scale parameters (4+4 levels, compressed spectrum) on which the full
// generator is integrable while the slow/fast separation still holds with a
// ratio >= 100.
ModelParams appendix_desk_params();

struct DeskReport {
  // max |p_full - p_reduced| over all levels and samples, 2 T_R window
  double max_population_gap = 0.0;
  std::vector<double> t_tr;
  std::vector<double> population_gap;
  SeriesResult full;
  SeriesResult reduced;
  // density-matrix health along the full run
  double max_trace_error = 0.0;
  double min_eigenvalue = 0.0;
  double max_reduced_total_error = 0.0;
  // dominant line of rho_{1L,2L} from a coherence-seeded full run
  double peak_omega = 0.0;
  double expected_omega = 0.0;
  double bin_width = 0.0;
};

DeskReport run_desk_validation(int samples = 1025, int fft_samples = 32768);

// The curve configurations a preset resolves to (appendix-desk reports its
// two engine runs).  Exposed for tests and the CLI listing.
std::vector<ExperimentConfig> resolve_preset(const std::string& id);

}  // namespace zenocoll
