#include "zenocoll.h"

#include <cstring>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <string>

#include "compare.hpp"
#include "config.hpp"
#include "model.hpp"
#include "presets.hpp"
#include "series.hpp"

#include <json.hpp>

namespace {

thread_local std::string g_last_error;

void copy_out(const std::string& text, char* buffer, size_t size) {
  if (!buffer || size == 0) return;
  const size_t n = std::min(text.size(), size - 1);
  std::memcpy(buffer, text.data(), n);
  buffer[n] = '\0';
}

template <class Fn>
zc_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return ZC_OK;
  } catch (const zenocoll::ConfigError& e) {
    g_last_error = e.what();
    return ZC_ERR_PARSE;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return ZC_ERR_INVALID_ARGUMENT;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return ZC_ERR_INVALID_ARGUMENT;
  } catch (const std::runtime_error& e) {
    g_last_error = e.what();
    const std::string what = e.what();
    if (what.find("stiff") != std::string::npos ||
        what.find("step") != std::string::npos)
      return ZC_ERR_STIFFNESS;
    if (what.find("open") != std::string::npos ||
        what.find("rename") != std::string::npos ||
        what.find("write") != std::string::npos)
      return ZC_ERR_IO;
    return ZC_ERR_UNKNOWN;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ZC_ERR_UNKNOWN;
  }
}

zc_status run_and_list(const std::function<zenocoll::RunOutput()>& fn,
                       char* file_list, size_t file_list_size) {
  return guarded([&] {
    const zenocoll::RunOutput result = fn();
    std::ostringstream os;
    for (const auto& curve : result.curves)
      os << curve.data_path << "\n" << curve.manifest_path << "\n";
    copy_out(os.str(), file_list, file_list_size);
  });
}

}  // namespace

struct zc_config {
  zenocoll::ExperimentConfig cfg;
  std::string document;  // the flat text this config was parsed from
};

struct zc_series {
  zenocoll::SeriesResult series;
  std::vector<double> t_tr;
};

extern "C" {

const char* zc_version(void) {
#ifdef ZENOCOLL_VERSION
  return ZENOCOLL_VERSION;
#else
  return "0.0.0";
#endif
}

const char* zc_last_error(void) { return g_last_error.c_str(); }

zc_status zc_config_parse(const char* text, zc_config** out) {
  if (!text || !out) {
    g_last_error = "null argument";
    return ZC_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<zc_config>();
    handle->document = text;
    handle->cfg = zenocoll::parse_config(handle->document);
    *out = handle.release();
  });
}

zc_status zc_config_load(const char* path, zc_config** out) {
  if (!path || !out) {
    g_last_error = "null argument";
    return ZC_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] {
    std::ifstream is(path);
    if (!is) throw std::runtime_error(std::string("cannot open '") + path + "'");
    std::ostringstream buf;
    buf << is.rdbuf();
    std::string text = buf.str();
    const std::string p(path);
    if (p.size() > 5 && p.substr(p.size() - 5) == ".json") {
      // A result manifest: re-run from its embedded configuration.
      const nlohmann::json manifest = nlohmann::json::parse(text);
      if (!manifest.contains("config"))
        throw std::invalid_argument("manifest lacks a 'config' field");
      text = manifest["config"].get<std::string>();
    }
    auto handle = std::make_unique<zc_config>();
    handle->document = text;
    handle->cfg = zenocoll::parse_config(handle->document);
    *out = handle.release();
  });
}

void zc_config_free(zc_config* config) { delete config; }

zc_status zc_config_set(zc_config* config, const char* key, const char* value) {
  if (!config || !key || !value) {
    g_last_error = "null argument";
    return ZC_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    std::ostringstream doc;
    std::istringstream is(config->document);
    std::string line;
    const std::string prefix = std::string(key);
    bool replaced = false;
    while (std::getline(is, line)) {
      const auto eq = line.find('=');
      std::string k = eq == std::string::npos ? "" : line.substr(0, eq);
      while (!k.empty() && (k.back() == ' ' || k.back() == '\t')) k.pop_back();
      if (k == prefix) {
        doc << key << " = " << value << "\n";
        replaced = true;
      } else {
        doc << line << "\n";
      }
    }
    if (!replaced) doc << key << " = " << value << "\n";
    const std::string text = doc.str();
    zenocoll::ExperimentConfig cfg = zenocoll::parse_config(text);
    config->document = text;
    config->cfg = cfg;
  });
}

zc_status zc_validate(const zc_config* config, char* buffer, size_t buffer_size,
                      int* passed) {
  if (!config) {
    g_last_error = "null argument";
    return ZC_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    using namespace zenocoll;
    const ModelParams& p = config->cfg.params;
    p.validate();
    std::ostringstream os;
    bool ok = true;
    for (EnergyConvention conv :
         {EnergyConvention::ShiftedGround, EnergyConvention::RawRotational}) {
      const LevelScheme scheme = build_level_scheme(p, conv);
      const TimescaleReport report =
          validate_timescales(p, scheme, config->cfg.threshold);
      os << (conv == EnergyConvention::ShiftedGround ? "[shifted-ground]"
                                                     : "[raw-rotational]")
         << "\n" << report.summary() << "\n";
      if (conv == config->cfg.convention) ok = report.passed();
    }
    copy_out(os.str(), buffer, buffer_size);
    if (passed) *passed = ok ? 1 : 0;
  });
}

zc_status zc_run(const zc_config* config, zc_series** out) {
  if (!config || !out) {
    g_last_error = "null argument";
    return ZC_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<zc_series>();
    handle->series = zenocoll::run_single(config->cfg);
    handle->t_tr = handle->series.t_tr();
    *out = handle.release();
  });
}

zc_status zc_run_to_files(const zc_config* config, const char* out_dir,
                          long particles_override, int64_t seed_override,
                          const char* format, char* file_list,
                          size_t file_list_size) {
  if (!config) {
    g_last_error = "null argument";
    return ZC_ERR_INVALID_ARGUMENT;
  }
  zenocoll::RunOverrides ov;
  if (particles_override > 0) ov.particles = particles_override;
  if (seed_override >= 0) ov.seed = static_cast<std::uint64_t>(seed_override);
  if (out_dir && *out_dir) ov.out_dir = out_dir;
  if (format && *format) ov.format = format;
  return run_and_list([&] { return zenocoll::run_config(config->cfg, ov); },
                      file_list, file_list_size);
}

zc_status zc_run_preset(const char* preset_id, const char* out_dir,
                        long particles_override, int64_t seed_override,
                        const char* format, char* file_list,
                        size_t file_list_size) {
  if (!preset_id) {
    g_last_error = "null argument";
    return ZC_ERR_INVALID_ARGUMENT;
  }
  zenocoll::RunOverrides ov;
  if (particles_override > 0) ov.particles = particles_override;
  if (seed_override >= 0) ov.seed = static_cast<std::uint64_t>(seed_override);
  if (out_dir && *out_dir) ov.out_dir = out_dir;
  if (format && *format) ov.format = format;
  return run_and_list([&] { return zenocoll::run_preset(preset_id, ov); },
                      file_list, file_list_size);
}

zc_status zc_curve(const char* name, double x, const double* t_tr, size_t n,
                   zc_series** out) {
  if (!name || !t_tr || !out) {
    g_last_error = "null argument";
    return ZC_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<zc_series>();
    handle->t_tr.assign(t_tr, t_tr + n);
    handle->series.rabi = 2.0 * 3.14159265358979323846;  // T_R = 1 s
    handle->series.t = handle->t_tr;
    handle->series.p_left =
        zenocoll::analytic_curve(name, x, handle->t_tr);
    *out = handle.release();
  });
}

size_t zc_series_size(const zc_series* series) {
  return series ? series->series.t.size() : 0;
}

const double* zc_series_time_tr(const zc_series* series) {
  return series ? series->t_tr.data() : nullptr;
}

zc_status zc_series_track(const zc_series* series, const char* track,
                          const double** values, const double** stderr_out) {
  if (!series || !track || !values) {
    g_last_error = "null argument";
    return ZC_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const std::vector<double>& v = series->series.track(track);
    if (v.size() != series->series.t.size())
      throw std::invalid_argument(std::string("track '") + track +
                                  "' is not populated");
    *values = v.data();
    if (stderr_out)
      *stderr_out = series->series.has_stderr(track)
                        ? series->series.p_left_err.data()
                        : nullptr;
  });
}

zc_status zc_series_write_csv(const zc_series* series, const char* track,
                              const char* path) {
  if (!series || !track || !path) {
    g_last_error = "null argument";
    return ZC_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { zenocoll::write_csv(series->series, track, path); });
}

void zc_series_free(zc_series* series) { delete series; }

zc_status zc_compare_files(const char* path_a, const char* path_b,
                           const char* tolerance_spec, char* report,
                           size_t report_size, int* passed) {
  if (!path_a || !path_b) {
    g_last_error = "null argument";
    return ZC_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    using namespace zenocoll;
    const CsvData a = read_csv(path_a);
    const CsvData b = read_csv(path_b);
    const ToleranceSpec tol =
        ToleranceSpec::parse(tolerance_spec ? tolerance_spec : "");
    SeriesView va{a.t_tr, a.value, a.stderr_};
    SeriesView vb{b.t_tr, b.value, b.stderr_};
    const ComparisonReport result = compare_series(va, vb, tol);
    copy_out(result.text(), report, report_size);
    if (passed) *passed = result.passed ? 1 : 0;
  });
}

}  // extern "C"
