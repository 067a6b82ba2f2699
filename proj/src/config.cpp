#include "config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "series.hpp"

namespace zenocoll {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct Entry {
  std::string value;
  int line;
  bool used = false;
};

double parse_number(const Entry& e, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(e.value, &pos);
    if (trim(e.value.substr(pos)) != "")
      throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(e.line, key, "not a number: '" + e.value + "'");
  }
}

// "<number> <unit>" with unit in {s, TR}.
std::pair<double, std::string> parse_with_unit(const Entry& e,
                                               const std::string& key) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(e.value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(e.line, key, "not a number: '" + e.value + "'");
  }
  return {v, trim(e.value.substr(pos))};
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  std::map<std::string, Entry> entries;
  {
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
      ++line;
      const auto hash = raw.find('#');
      if (hash != std::string::npos) raw = raw.substr(0, hash);
      raw = trim(raw);
      if (raw.empty()) continue;
      const auto eq = raw.find('=');
      if (eq == std::string::npos)
        throw ConfigError(line, raw, "expected 'key = value'");
      const std::string key = trim(raw.substr(0, eq));
      const std::string value = trim(raw.substr(eq + 1));
      if (key.empty()) throw ConfigError(line, raw, "empty key");
      if (entries.count(key))
        throw ConfigError(line, key, "duplicate key (first on line " +
                                         std::to_string(entries[key].line) + ")");
      entries[key] = Entry{value, line};
    }
  }

  auto take = [&](const std::string& key) -> Entry* {
    auto it = entries.find(key);
    if (it == entries.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  };

  ExperimentConfig cfg;

  if (Entry* e = take("preset")) cfg.preset = e->value;

  if (Entry* e = take("engine")) {
    const std::string v = e->value;
    if (v == "monte-carlo") cfg.engine = Engine::MonteCarlo;
    else if (v == "reduced-master") cfg.engine = Engine::ReducedMaster;
    else if (v == "full-master") cfg.engine = Engine::FullMaster;
    else if (v.rfind("analytic:", 0) == 0) {
      cfg.engine = Engine::Analytic;
      cfg.analytic_curve = v.substr(9);
      if (cfg.analytic_curve.empty())
        throw ConfigError(e->line, "engine", "analytic:<curve> wants a curve name");
    } else
      throw ConfigError(e->line, "engine", "unknown engine '" + v + "'");
  } else if (cfg.preset.empty()) {
    throw ConfigError(0, "engine", "missing required key (or name a preset)");
  }

  auto take_int = [&](const std::string& key, auto& dest, long min_value) {
    if (Entry* e = take(key)) {
      const double v = parse_number(*e, key);
      if (v != std::floor(v))
        throw ConfigError(e->line, key, "expected an integer");
      if (v < static_cast<double>(min_value))
        throw ConfigError(e->line, key, "non-physical value " + e->value);
      dest = static_cast<std::remove_reference_t<decltype(dest)>>(v);
    }
  };
  auto take_positive = [&](const std::string& key, double& dest) {
    if (Entry* e = take(key)) {
      const double v = parse_number(*e, key);
      if (!(v > 0.0))
        throw ConfigError(e->line, key, "non-physical value " + e->value);
      dest = v;
    }
  };
  auto take_nonneg = [&](const std::string& key, double& dest) {
    if (Entry* e = take(key)) {
      const double v = parse_number(*e, key);
      if (v < 0.0)
        throw ConfigError(e->line, key, "non-physical value " + e->value);
      dest = v;
    }
  };

  take_int("n_left", cfg.params.n_left, 1);
  take_int("n_right", cfg.params.n_right, 1);
  take_nonneg("omega_left", cfg.params.omega_left);
  take_nonneg("omega_right", cfg.params.omega_right);
  take_positive("rabi", cfg.params.rabi);
  take_nonneg("alpha_left", cfg.params.alpha_left);
  take_nonneg("alpha_right", cfg.params.alpha_right);

  const double rabi_period = 2.0 * std::numbers::pi / cfg.params.rabi;

  bool have_tau = false;
  if (Entry* e = take("tau")) {
    auto [v, unit] = parse_with_unit(*e, "tau");
    if (!(v > 0.0)) throw ConfigError(e->line, "tau", "non-physical value " + e->value);
    if (unit == "s") cfg.params.tau = v;
    else if (unit == "TR") cfg.params.tau = v * rabi_period;
    else throw ConfigError(e->line, "tau", "time wants a unit suffix 's' or 'TR'");
    have_tau = true;
  }
  if (Entry* e = take("tau_inv")) {
    if (have_tau)
      throw ConfigError(e->line, "tau_inv", "tau was already given");
    auto [v, unit] = parse_with_unit(*e, "tau_inv");
    if (!(v > 0.0))
      throw ConfigError(e->line, "tau_inv", "non-physical value " + e->value);
    if (unit.empty()) cfg.params.tau = 1.0 / v;                 // 1/s
    else if (unit == "TR") cfg.params.tau = rabi_period / v;    // per Rabi period
    else throw ConfigError(e->line, "tau_inv", "unit must be empty (1/s) or 'TR'");
    have_tau = true;
  }
  if (!have_tau && cfg.preset.empty())
    throw ConfigError(0, "tau", "missing required key 'tau' or 'tau_inv'");

  if (Entry* e = take("t_max")) {
    auto [v, unit] = parse_with_unit(*e, "t_max");
    if (!(v > 0.0)) throw ConfigError(e->line, "t_max", "non-physical value " + e->value);
    if (unit == "s") cfg.t_max_tr = v / rabi_period;
    else if (unit == "TR") cfg.t_max_tr = v;
    else throw ConfigError(e->line, "t_max", "time wants a unit suffix 's' or 'TR'");
  }

  take_int("samples", cfg.samples, 2);
  take_int("particles", cfg.particles, 1);
  take_int("seed", cfg.seed, 0);
  take_positive("threshold", cfg.threshold);

  if (Entry* e = take("convention")) {
    if (e->value == "shifted-ground") cfg.convention = EnergyConvention::ShiftedGround;
    else if (e->value == "raw-rotational") cfg.convention = EnergyConvention::RawRotational;
    else throw ConfigError(e->line, "convention", "unknown convention '" + e->value + "'");
  }
  if (Entry* e = take("observable")) {
    static const char* known[] = {"p_left", "mu_left", "sigma_left", "coherence"};
    bool ok = false;
    for (const char* k : known) ok = ok || e->value == k;
    if (!ok) throw ConfigError(e->line, "observable", "unknown observable '" + e->value + "'");
    cfg.observable = e->value;
  }
  if (Entry* e = take("out")) cfg.out_dir = e->value;
  if (Entry* e = take("label")) cfg.label = e->value;

  for (const auto& [key, entry] : entries)
    if (!entry.used)
      throw ConfigError(entry.line, key, "unknown key");

  if (cfg.preset.empty()) cfg.params.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_config(buf.str());
}

std::string render_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  switch (cfg.engine) {
    case Engine::MonteCarlo: os << "engine = monte-carlo\n"; break;
    case Engine::ReducedMaster: os << "engine = reduced-master\n"; break;
    case Engine::FullMaster: os << "engine = full-master\n"; break;
    case Engine::Analytic: os << "engine = analytic:" << cfg.analytic_curve << "\n"; break;
  }
  os << "n_left = " << cfg.params.n_left << "\n"
     << "n_right = " << cfg.params.n_right << "\n"
     << "omega_left = " << format_double(cfg.params.omega_left) << "\n"
     << "omega_right = " << format_double(cfg.params.omega_right) << "\n"
     << "rabi = " << format_double(cfg.params.rabi) << "\n"
     << "alpha_left = " << format_double(cfg.params.alpha_left) << "\n"
     << "alpha_right = " << format_double(cfg.params.alpha_right) << "\n"
     << "tau = " << format_double(cfg.params.tau) << " s\n"
     << "t_max = " << format_double(cfg.t_max_tr) << " TR\n"
     << "samples = " << cfg.samples << "\n"
     << "particles = " << cfg.particles << "\n"
     << "seed = " << cfg.seed << "\n"
     << "observable = " << cfg.observable << "\n"
     << "convention = "
     << (cfg.convention == EnergyConvention::ShiftedGround ? "shifted-ground"
                                                           : "raw-rotational")
     << "\n";
  if (!cfg.label.empty()) os << "label = " << cfg.label << "\n";
  return os.str();
}

}  // namespace zenocoll
