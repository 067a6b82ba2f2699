#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace zenocoll {

// Time grid plus observable tracks.  Times are stored in seconds; the Rabi
// frequency is carried along so writers can emit t/T_R.
struct SeriesResult {
  std::vector<double> t;  // seconds
  double rabi = 0.0;

  std::vector<double> p_left;
  std::vector<double> p_left_err;   // empty when undefined (e.g. M = 1)
  std::vector<double> mu_left;      // conditional moments of the left ladder
  std::vector<double> sigma_left;
  std::vector<double> coherence;    // p^c; filled by the deterministic engines

  // Mean level populations, (n_left+n_right) x samples; may be 0x0.
  Eigen::MatrixXd populations;
  int n_left = 0;
  int n_right = 0;

  long particles = 0;
  std::uint64_t seed = 0;
  // Largest |‖psi‖^2 - 1| seen across all trajectories (Monte Carlo only).
  double max_norm_error = 0.0;

  std::vector<double> t_tr() const;  // t / T_R
  // Track by name: p_left | mu_left | sigma_left | coherence.
  const std::vector<double>& track(const std::string& name) const;
  bool has_stderr(const std::string& name) const { return name == "p_left" && !p_left_err.empty(); }
};

// One observable per file, header "t_TR,value[,stderr]", written atomically
// (temp file + rename).
void write_csv(const SeriesResult& series, const std::string& observable,
               const std::string& path);

void write_csv_raw(const std::vector<double>& t_tr,
                   const std::vector<double>& value,
                   const std::vector<double>& stderr_,  // may be empty
                   const std::string& path);

std::vector<double> linspace(double lo, double hi, int count);

struct CsvData {
  std::vector<double> t_tr;
  std::vector<double> value;
  std::vector<double> stderr_;  // empty when the file has two columns
};

CsvData read_csv(const std::string& path);

// Shared formatting for all writers: shortest text that round-trips exactly.
std::string format_double(double v);

}  // namespace zenocoll
