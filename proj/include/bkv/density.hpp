#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bkv/numtheory.hpp"
#include "bkv/shimura.hpp"

namespace bkv {

// Sign classification of a(t p^2) over primes p <= x_max, p not dividing the
// level, with cumulative counts at each checkpoint. Every sign comes from
// exact integer arithmetic.
struct SignPartition {
  long long t = 1;
  long long x_max = 0;
  std::vector<long long> excluded_primes;  // p | N, p <= x_max
  struct Checkpoint {
    long long x = 0;
    long long pi = 0;  // all primes <= x, including excluded ones
    long long pos = 0;
    long long neg = 0;
    long long zero = 0;
  };
  std::vector<Checkpoint> checkpoints;
  std::vector<std::pair<long long, int>> prime_signs;  // (p, sign), p not | N
};

// a(t p^2) = A_t(p) - chi(p) p^{k-1} a(t), sign taken exactly. Requires
// a(t) > 0 (negate the source first otherwise).
SignPartition sign_partition(const LiftRecord& L, long long x_max,
                             std::span<const long long> checkpoints,
                             const PrimeTable& pt);

// Error-function diagnostic for a prime set S against a target density d:
// E(x) = pi_S(x)/pi(x) - d at each checkpoint, a log-log fit of |E| (zero
// values skipped), and the partial sums sum_{p in S, p <= x} 1/p.
struct DensityReport {
  double target_density = 0.0;
  struct Row {
    long long x = 0;
    long long pi_s = 0;
    long long pi = 0;
    double ratio = 0.0;
    double err = 0.0;             // ratio - d, exactly as computed
    double recip_partial = 0.0;   // sum of 1/p over S up to x
  };
  std::vector<Row> rows;
  double fitted_c = 0.0;
  double fitted_alpha = 0.0;
  int zero_err_skipped = 0;
  bool fit_degenerate = false;  // all E(x) = 0: density exact, no fit
};

DensityReport regularity_diagnostic(std::span<const long long> s_primes,
                                    const PrimeTable& pt, double d,
                                    std::span<const long long> checkpoints);

// Same diagnostic from precomputed counts (x, pi_S(x), pi(x)).
struct CountRow {
  long long x = 0;
  long long pi_s = 0;
  long long pi = 0;
  double recip_partial = 0.0;
};
DensityReport regularity_from_counts(std::span<const CountRow> counts,
                                     double d);

// s(n) = sign a(t n^2) for n = 1..n_max, via the inverse lift; multiplicative
// on coprime arguments when a(t) > 0.
struct SignSeries {
  long long t = 1;
  std::vector<int8_t> values;  // values[n-1] = s(n)
  int s(long long n) const { return values[static_cast<size_t>(n - 1)]; }
  long long n_max() const { return static_cast<long long>(values.size()); }
};

SignSeries sign_series(const LiftRecord& L, long long n_max);

// sum_{n <= n_max} s(n) / n^z, ascending with compensated summation. z > 1.
double dirichlet_partial(std::span<const int8_t> s, double z);

// Truncated sum vs truncated Euler product of the sign Dirichlet series.
// tail_bound is a documented upper bound for the gap assembled from the
// per-prime tail bound |sum_{m>=2} s(p^m) p^{-mz}| <= 1/(p^z(p^z-1)), the
// zeta tail of the sum truncation, and an integral bound for the primes
// beyond p_max.
struct EulerProductCheck {
  double sum = 0.0;
  double product = 0.0;
  double gap = 0.0;
  double tail_bound = 0.0;
};

EulerProductCheck euler_product_check(const SignSeries& s, double z,
                                      long long p_max, const PrimeTable& pt);

// (z-1) * sum_{n in A, n <= n_max} n^{-z} for each z, raw and with the tail
// sum_{n > n_max} d_hat / n^z added, where d_hat is the empirical natural
// density of A at n_max. The raw value alone degenerates to 0 as z -> 1+ for
// any finite n_max; the tail-completed column is the meaningful estimate and
// the extrapolation is by the stated density assumption.
struct DedekindRow {
  double z = 0.0;
  double raw = 0.0;
  double tail_completed = 0.0;
};

std::vector<DedekindRow> dedekind_dirichlet_estimate(
    std::span<const uint8_t> indicator, std::span<const double> zs);

// (z-1) T(z) with t(n) = s(n)^2, plus the positive-part split; a1_estimate
// is the tail-completed nonzero-set estimate at the z closest to 1 (the last
// entry of the decreasing z sequence).
struct NonzeroDensityReport {
  struct Row {
    double z = 0.0;
    double nonzero_raw = 0.0;
    double nonzero_tail = 0.0;
    double positive_raw = 0.0;
    double positive_tail = 0.0;
  };
  std::vector<Row> rows;
  double a1_estimate = 0.0;
};

NonzeroDensityReport nonzero_density_estimate(const SignSeries& s,
                                              std::span<const double> zs);

// sum_{p in S1} p^{-z} - sum_{p in S2} p^{-z}; z >= 1.
double prime_sum_difference(std::span<const long long> s1,
                            std::span<const long long> s2, double z);

// sum_{n > m} n^{-z} by Euler-Maclaurin; z > 1, m >= 10.
double zeta_tail(double z, long long m);

}  // namespace bkv
