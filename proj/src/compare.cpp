#include "compare.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "series.hpp"

namespace zenocoll {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

ToleranceSpec ToleranceSpec::parse(const std::string& text) {
  ToleranceSpec tol;
  for (const std::string& item : split(text, ',')) {
    const auto eq = item.find('=');
    const std::string key = item.substr(0, eq);
    const std::string value = eq == std::string::npos ? "" : item.substr(eq + 1);
    if (key == "maxabs") tol.max_abs = std::stod(value);
    else if (key == "rel") tol.max_rel = std::stod(value);
    else if (key == "zmax") tol.z_max = std::stod(value);
    else if (key == "resample") tol.resample = true;
    else if (key == "rescale" && value == "x3") tol.rescale_x3 = true;
    else if (key == "xa") tol.x_a = std::stod(value);
    else if (key == "xb") tol.x_b = std::stod(value);
    else if (key == "window") {
      const auto colon = value.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("tolerance spec: window wants lo:hi");
      tol.window = std::make_pair(std::stod(value.substr(0, colon)),
                                  std::stod(value.substr(colon + 1)));
    } else if (key == "exponent") tol.fit_exponent = true;
    else if (key == "equilibrium") tol.equilibrium = std::stod(value);
    else throw std::invalid_argument("tolerance spec: unknown key '" + key + "'");
  }
  return tol;
}

std::string ComparisonReport::text() const {
  std::ostringstream os;
  os << "points compared: " << n_points << '\n'
     << "max |a-b|:       " << max_abs_dev << '\n'
     << "max rel dev:     " << max_rel_dev << '\n';
  if (max_z > 0.0) os << "max z-score:     " << max_z << '\n';
  if (exponent_a) os << "fitted exponent (a): " << *exponent_a << '\n';
  if (exponent_b) os << "fitted exponent (b): " << *exponent_b << '\n';
  if (t_relax_a) os << "T_relax (a): " << *t_relax_a << '\n';
  if (t_relax_b) os << "T_relax (b): " << *t_relax_b << '\n';
  os << "verdict: " << (passed ? "PASS" : "FAIL");
  return os.str();
}

std::string ComparisonReport::json() const {
  std::ostringstream os;
  os << "{\"points\":" << n_points << ",\"max_abs_dev\":" << format_double(max_abs_dev)
     << ",\"max_rel_dev\":" << format_double(max_rel_dev)
     << ",\"max_z\":" << format_double(max_z);
  if (exponent_a) os << ",\"exponent_a\":" << format_double(*exponent_a);
  if (exponent_b) os << ",\"exponent_b\":" << format_double(*exponent_b);
  if (t_relax_a) os << ",\"t_relax_a\":" << format_double(*t_relax_a);
  if (t_relax_b) os << ",\"t_relax_b\":" << format_double(*t_relax_b);
  os << ",\"passed\":" << (passed ? "true" : "false") << "}";
  return os.str();
}

double linear_interp(std::span<const double> xs, std::span<const double> ys,
                     double x) {
  if (xs.size() < 2) throw std::invalid_argument("linear_interp: need >= 2 points");
  if (x < xs.front() || x > xs.back())
    throw std::invalid_argument("linear_interp: x outside the grid");
  const auto it = std::lower_bound(xs.begin(), xs.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  if (hi == 0) return ys[0];
  if (hi >= xs.size()) hi = xs.size() - 1;
  const std::size_t lo = hi - 1;
  const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return (1.0 - w) * ys[lo] + w * ys[hi];
}

std::optional<double> relaxation_time(std::span<const double> t,
                                      std::span<const double> v,
                                      double equilibrium) {
  if (t.size() != v.size() || t.size() < 2)
    throw std::invalid_argument("relaxation_time: bad series");
  const double excess0 = v.front() - equilibrium;
  if (excess0 == 0.0) return std::nullopt;
  const double target = 1.0 / std::numbers::e;
  double prev = 1.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double e = (v[i] - equilibrium) / excess0;
    if (e <= 0.0) return t[i];  // crossed all the way through zero excess
    if (e <= target && prev > target) {
      // interpolate in (t, log e)
      const double w = (std::log(prev) - std::log(target)) /
                       (std::log(prev) - std::log(e));
      return t[i - 1] + w * (t[i] - t[i - 1]);
    }
    prev = e;
  }
  return std::nullopt;
}

std::optional<double> stretched_exponent_fit(std::span<const double> t,
                                             std::span<const double> v,
                                             double equilibrium,
                                             double t_min, double t_max) {
  // Collect log-excess samples on the window.
  std::vector<double> ts, ys;  // y = log(v - equilibrium)
  const double sign = v.front() >= equilibrium ? 1.0 : -1.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_min || t[i] > t_max || t[i] <= 0.0) continue;
    const double excess = sign * (v[i] - equilibrium);
    if (excess <= 0.0) continue;
    ts.push_back(t[i]);
    ys.push_back(std::log(excess));
  }
  if (ts.size() < 8) return std::nullopt;

  // y = a - c t^beta; for each beta solve the 2x2 normal equations.
  auto sse_for = [&](double beta) {
    double s1 = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double xb = std::pow(ts[i], beta);
      s1 += 1.0;
      sx += xb;
      sy += ys[i];
      sxx += xb * xb;
      sxy += xb * ys[i];
    }
    const double det = s1 * sxx - sx * sx;
    if (det == 0.0) return std::make_pair(1e300, 0.0);
    const double c = -(s1 * sxy - sx * sy) / det;
    const double a = (sy + c * sx) / s1;
    double sse = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double r = ys[i] - (a - c * std::pow(ts[i], beta));
      sse += r * r;
    }
    return std::make_pair(sse, c);
  };

  // Golden-section search over beta in (0.05, 1.5).
  double lo = 0.05, hi = 1.5;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double m1 = hi - phi * (hi - lo);
  double m2 = lo + phi * (hi - lo);
  double f1 = sse_for(m1).first;
  double f2 = sse_for(m2).first;
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = m2; m2 = m1; f2 = f1;
      m1 = hi - phi * (hi - lo);
      f1 = sse_for(m1).first;
    } else {
      lo = m1; m1 = m2; f1 = f2;
      m2 = lo + phi * (hi - lo);
      f2 = sse_for(m2).first;
    }
  }
  return 0.5 * (lo + hi);
}

ComparisonReport compare_series(const SeriesView& a, const SeriesView& b,
                                const ToleranceSpec& tol) {
  if (a.t.size() != a.value.size() || b.t.size() != b.value.size())
    throw std::invalid_argument("compare_series: ragged input");

  std::vector<double> ta(a.t.begin(), a.t.end());
  std::vector<double> tb(b.t.begin(), b.t.end());
  if (tol.rescale_x3) {
    if (tol.x_a <= 0.0 || tol.x_b <= 0.0)
      throw std::invalid_argument("compare_series: rescale=x3 needs xa and xb");
    for (double& v : ta) v /= tol.x_a * tol.x_a * tol.x_a;
    for (double& v : tb) v /= tol.x_b * tol.x_b * tol.x_b;
  }

  ComparisonReport report;
  const double lo = std::max({ta.front(), tb.front(),
                              tol.window ? tol.window->first : -1e300});
  const double hi = std::min({ta.back(), tb.back(),
                              tol.window ? tol.window->second : 1e300});

  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (ta[i] < lo || ta[i] > hi) continue;
    double vb, eb = 0.0;
    if (tol.resample || tol.rescale_x3) {
      vb = linear_interp(tb, b.value, ta[i]);
      if (!b.stderr_.empty()) eb = linear_interp(tb, b.stderr_, ta[i]);
    } else {
      // grids must agree exactly
      if (i >= tb.size() || std::abs(tb[i] - ta[i]) > 1e-9 * std::max(1.0, std::abs(ta[i])))
        throw std::invalid_argument(
            "compare_series: grids differ; pass resample to interpolate");
      vb = b.value[i];
      if (!b.stderr_.empty()) eb = b.stderr_[i];
    }
    const double va = a.value[i];
    const double ea = a.stderr_.empty() ? 0.0 : a.stderr_[i];
    const double dev = std::abs(va - vb);
    report.max_abs_dev = std::max(report.max_abs_dev, dev);
    const double denom = std::max(std::abs(va), std::abs(vb));
    if (denom > 0.0)
      report.max_rel_dev = std::max(report.max_rel_dev, dev / denom);
    const double sigma = std::sqrt(ea * ea + eb * eb);
    if (sigma > 0.0 || dev == 0.0) {
      const double z = dev == 0.0 ? 0.0 : dev / std::max(sigma, 1e-300);
      report.max_z = std::max(report.max_z, z);
    } else if (tol.z_max) {
      throw std::invalid_argument(
          "compare_series: z-score tolerance requires error bars");
    }
    ++report.n_points;
  }
  if (report.n_points == 0)
    throw std::invalid_argument("compare_series: no overlapping samples");

  if (tol.fit_exponent && tol.equilibrium) {
    report.exponent_a = stretched_exponent_fit(ta, a.value, *tol.equilibrium, lo, hi);
    report.exponent_b = stretched_exponent_fit(tb, b.value, *tol.equilibrium, lo, hi);
  }
  if (tol.equilibrium) {
    report.t_relax_a = relaxation_time(ta, a.value, *tol.equilibrium);
    report.t_relax_b = relaxation_time(tb, b.value, *tol.equilibrium);
  }

  if (tol.max_abs && report.max_abs_dev > *tol.max_abs) report.passed = false;
  if (tol.max_rel && report.max_rel_dev > *tol.max_rel) report.passed = false;
  if (tol.z_max && report.max_z > *tol.z_max) report.passed = false;
  return report;
}

}  // namespace zenocoll
