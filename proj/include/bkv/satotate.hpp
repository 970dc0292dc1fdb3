#pragma once

#include <span>
#include <utility>
#include <vector>

#include "bkv/numtheory.hpp"
#include "bkv/shimura.hpp"

namespace bkv {

// Normalized Hecke angle samples for all primes p <= x_max, p not dividing
// the level, sorted by prime, plus the same values sorted ascending.
struct SatoTateSample {
  std::vector<NormalizedSample> entries;
  std::vector<double> sorted_values;
};

SatoTateSample make_sample(const LiftRecord& L, const PrimeTable& pt,
                           long long x_max);

// Semicircle measure of [a, b] in [-1, 1], closed form:
// (1/pi) [ b sqrt(1-b^2) + asin b - a sqrt(1-a^2) - asin a ].
double st_measure(double a, double b);

// F_mu(v) = st_measure(-1, v).
double st_cdf(double v);

// Fraction of sample values in [a, b].
double interval_density(const SatoTateSample& s, double a, double b);

// Kolmogorov-Smirnov statistic of the sample against F_mu: the supremum of
// |empirical([a,b]) - mu([a,b])| over one-sided intervals. The two-sided
// interval discrepancy is bounded by twice this value.
double discrepancy(const SatoTateSample& s);
double discrepancy_of_sorted(std::span<const double> sorted_values);

struct PowerFit {
  double c = 0.0;
  double alpha = 0.0;
};

// Least squares for log D = log C - alpha log x. Needs >= 3 points with
// strictly increasing x and D > 0.
PowerFit fit_error_exponent(std::span<const std::pair<double, double>> points);

struct DiscrepancyReport {
  struct Row {
    long long x = 0;       // checkpoint
    long long samples = 0; // primes <= x in the sample
    double d = 0.0;        // discrepancy of that prefix
  };
  std::vector<Row> rows;
  double fitted_c = 0.0;
  double fitted_alpha = 0.0;
};

// Discrepancy at each checkpoint (strictly increasing) plus the power-law
// fit over the checkpoints with D > 0.
DiscrepancyReport discrepancy_report(const SatoTateSample& s,
                                     std::span<const long long> checkpoints);

}  // namespace bkv
