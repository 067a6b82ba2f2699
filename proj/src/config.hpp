#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "model.hpp"

namespace zenocoll {

struct ConfigError : std::runtime_error {
  int line;
  std::string field;
  ConfigError(int line_in, std::string field_in, const std::string& message)
      : std::runtime_error("config line " + std::to_string(line_in) + " ('" +
                           field_in + "'): " + message),
        line(line_in),
        field(std::move(field_in)) {}
};

enum class Engine { MonteCarlo, ReducedMaster, FullMaster, Analytic };

struct ExperimentConfig {
  ModelParams params;
  EnergyConvention convention = EnergyConvention::ShiftedGround;
  Engine engine = Engine::MonteCarlo;
  std::string analytic_curve;  // set when engine == Analytic

  long particles = 5000;
  std::uint64_t seed = 1;
  double t_max_tr = 1.5;
  int samples = 151;
  std::string observable = "p_left";
  double threshold = 100.0;  // timescale-validation ratio

  std::string preset;   // non-empty when the document names a preset
  std::string out_dir = ".";
  std::string label;    // filename stem; derived from engine when empty

  double t_max_seconds() const { return t_max_tr * params.rabi_period(); }
};

// Flat UTF-8 key-value document: one `key = value` per line, `#` comments.
// Times carry an explicit unit suffix (`s` or `TR`); `tau_inv` is in 1/s
// when bare, or collisions per Rabi period with the `TR` suffix.
// Unknown keys, missing required keys and non-physical values raise
// ConfigError with the offending line.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config(const std::string& path);

// The exact flat document that reproduces `config` (used in manifests).
std::string render_config(const ExperimentConfig& config);

}  // namespace zenocoll
