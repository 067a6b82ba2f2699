#include "series.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace zenocoll {

std::vector<double> SeriesResult::t_tr() const {
  const double tr = 2.0 * std::numbers::pi / rabi;
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[i] / tr;
  return out;
}

const std::vector<double>& SeriesResult::track(const std::string& name) const {
  if (name == "p_left") return p_left;
  if (name == "mu_left") return mu_left;
  if (name == "sigma_left") return sigma_left;
  if (name == "coherence") return coherence;
  throw std::invalid_argument("unknown observable '" + name + "'");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv_raw(const std::vector<double>& t_tr,
                   const std::vector<double>& value,
                   const std::vector<double>& stderr_,
                   const std::string& path) {
  if (value.size() != t_tr.size() ||
      (!stderr_.empty() && stderr_.size() != t_tr.size()))
    throw std::invalid_argument("write_csv_raw: ragged columns");
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    os << (stderr_.empty() ? "t_TR,value\n" : "t_TR,value,stderr\n");
    for (std::size_t i = 0; i < value.size(); ++i) {
      os << format_double(t_tr[i]) << ',' << format_double(value[i]);
      if (!stderr_.empty()) os << ',' << format_double(stderr_[i]);
      os << '\n';
    }
    if (!os) throw std::runtime_error("write failed for '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename '" + tmp + "' -> '" + path +
                             "' failed: " + std::strerror(errno));
}

void write_csv(const SeriesResult& series, const std::string& observable,
               const std::string& path) {
  const std::vector<double>& values = series.track(observable);
  if (values.size() != series.t.size())
    throw std::invalid_argument("observable '" + observable +
                                "' is not populated in this series");
  write_csv_raw(series.t_tr(), values,
                series.has_stderr(observable) ? series.p_left_err
                                              : std::vector<double>{},
                path);
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 2) throw std::invalid_argument("linspace: count must be >= 2");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + step * i;
  out.back() = hi;
  return out;
}

CsvData read_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  CsvData data;
  std::string line;
  bool header = true;
  std::size_t columns = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
      if (columns != 2 && columns != 3)
        throw std::runtime_error("'" + path + "': expected 2 or 3 columns");
      continue;
    }
    std::istringstream ls(line);
    std::string cell;
    double row[3] = {0, 0, 0};
    std::size_t c = 0;
    while (std::getline(ls, cell, ',') && c < 3) row[c++] = std::stod(cell);
    if (c != columns)
      throw std::runtime_error("'" + path + "': ragged row '" + line + "'");
    data.t_tr.push_back(row[0]);
    data.value.push_back(row[1]);
    if (columns == 3) data.stderr_.push_back(row[2]);
  }
  return data;
}

}  // namespace zenocoll
