#include "bkv/satotate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bkv/errors.hpp"

namespace bkv {

namespace {

// antiderivative of the density up to the 1/pi factor
double primitive(double v) {
  return v * std::sqrt(std::max(0.0, 1.0 - v * v)) + std::asin(v);
}

}  // namespace

SatoTateSample make_sample(const LiftRecord& L, const PrimeTable& pt,
                           long long x_max) {
  if (x_max < 2) throw InvalidArgument("make_sample: x_max must be >= 2");
  if (pt.limit < x_max)
    throw InvalidArgument("make_sample: prime table too small");
  if (x_max > L.n_max())
    throw PrecisionExceeded("make_sample: x_max beyond lifted precision");
  SatoTateSample s;
  for (long long p : pt.primes) {
    if (p > x_max) break;
    if (L.level % p == 0) continue;
    s.entries.push_back(normalize_bp(L, p));
  }
  s.sorted_values.reserve(s.entries.size());
  for (const auto& e : s.entries) s.sorted_values.push_back(e.value);
  std::sort(s.sorted_values.begin(), s.sorted_values.end());
  return s;
}

double st_measure(double a, double b) {
  if (!(a >= -1.0 && a <= b && b <= 1.0))
    throw InvalidArgument("st_measure: need -1 <= a <= b <= 1");
  return (primitive(b) - primitive(a)) / std::numbers::pi;
}

double st_cdf(double v) {
  if (v <= -1.0) return 0.0;
  if (v >= 1.0) return 1.0;
  return 0.5 + primitive(v) / std::numbers::pi;
}

double interval_density(const SatoTateSample& s, double a, double b) {
  if (s.sorted_values.empty())
    throw InvalidArgument("interval_density: empty sample");
  if (!(a <= b)) throw InvalidArgument("interval_density: need a <= b");
  auto lo = std::lower_bound(s.sorted_values.begin(), s.sorted_values.end(), a);
  auto hi = std::upper_bound(s.sorted_values.begin(), s.sorted_values.end(), b);
  return static_cast<double>(hi - lo) /
         static_cast<double>(s.sorted_values.size());
}

double discrepancy_of_sorted(std::span<const double> sorted_values) {
  size_t n = sorted_values.size();
  if (n == 0) throw InvalidArgument("discrepancy: empty sample");
  double d = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double f = st_cdf(sorted_values[i]);
    double hi = static_cast<double>(i + 1) / static_cast<double>(n) - f;
    double lo = f - static_cast<double>(i) / static_cast<double>(n);
    d = std::max({d, hi, lo});
  }
  return d;
}

double discrepancy(const SatoTateSample& s) {
  return discrepancy_of_sorted(s.sorted_values);
}

PowerFit fit_error_exponent(
    std::span<const std::pair<double, double>> points) {
  if (points.size() < 3)
    throw InvalidArgument("fit_error_exponent: need at least 3 points");
  double prev_x = 0.0;
  for (const auto& [x, d] : points) {
    if (!(x > prev_x))
      throw InvalidArgument("fit_error_exponent: x must be strictly increasing");
    if (!(d > 0.0))
      throw InvalidArgument("fit_error_exponent: all D values must be > 0");
    prev_x = x;
  }
  size_t n = points.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> lx(n), ly(n);
  for (size_t i = 0; i < n; ++i) {
    lx[i] = std::log(points[i].first);
    ly[i] = std::log(points[i].second);
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  double slope = sxy / sxx;
  PowerFit fit;
  fit.alpha = -slope;
  fit.c = std::exp(my - slope * mx);
  return fit;
}

DiscrepancyReport discrepancy_report(const SatoTateSample& s,
                                     std::span<const long long> checkpoints) {
  if (s.entries.empty())
    throw InvalidArgument("discrepancy_report: empty sample");
  long long prev = 0;
  for (long long x : checkpoints)
    if (x <= prev)
      throw InvalidArgument("discrepancy_report: checkpoints must increase");
    else
      prev = x;

  DiscrepancyReport rep;
  std::vector<std::pair<double, double>> fit_pts;
  for (long long x : checkpoints) {
    size_t n = 0;
    while (n < s.entries.size() && s.entries[n].prime <= x) ++n;
    if (n == 0)
      throw InvalidArgument("discrepancy_report: checkpoint below first prime");
    std::vector<double> vals(n);
    for (size_t i = 0; i < n; ++i) vals[i] = s.entries[i].value;
    std::sort(vals.begin(), vals.end());
    double d = discrepancy_of_sorted(vals);
    rep.rows.push_back({x, static_cast<long long>(n), d});
    if (d > 0.0)
      fit_pts.emplace_back(static_cast<double>(x), d);
  }
  if (fit_pts.size() >= 3) {
    PowerFit f = fit_error_exponent(fit_pts);
    rep.fitted_c = f.c;
    rep.fitted_alpha = f.alpha;
  } else {
    throw InvalidArgument(
        "discrepancy_report: fewer than 3 checkpoints with positive "
        "discrepancy; cannot fit");
  }
  return rep;
}

}  // namespace bkv
