#include "bkv/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bkv/errors.hpp"
#include "bkv/satotate.hpp"

namespace bkv {

namespace {

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    double y = v - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

void check_checkpoints(std::span<const long long> xs, long long limit) {
  if (xs.empty()) throw InvalidArgument("checkpoints: empty grid");
  long long prev = 0;
  for (long long x : xs) {
    if (x <= prev)
      throw InvalidArgument("checkpoints: grid must be strictly increasing");
    prev = x;
  }
  if (limit > 0 && xs.back() > limit)
    throw InvalidArgument("checkpoints: beyond available range");
}

mpz_class pow_ll(long long base, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
  return r;
}

}  // namespace

SignPartition sign_partition(const LiftRecord& L, long long x_max,
                             std::span<const long long> checkpoints,
                             const PrimeTable& pt) {
  if (L.a_t <= 0)
    throw InvalidArgument(
        "sign_partition: a(t) must be positive (negate the source first)");
  if (x_max < 2) throw InvalidArgument("sign_partition: x_max must be >= 2");
  if (x_max > L.n_max())
    throw PrecisionExceeded("sign_partition: x_max beyond lifted precision");
  if (pt.limit < x_max)
    throw InvalidArgument("sign_partition: prime table too small");
  check_checkpoints(checkpoints, x_max);

  SignPartition part;
  part.t = L.t;
  part.x_max = x_max;

  size_t ci = 0;
  long long pos = 0, neg = 0, zero = 0;
  auto flush_checkpoints = [&](long long p_next) {
    while (ci < checkpoints.size() && checkpoints[ci] < p_next) {
      long long x = checkpoints[ci];
      part.checkpoints.push_back({x, pt.count_upto(x), pos, neg, zero});
      ++ci;
    }
  };

  for (long long p : pt.primes) {
    if (p > x_max) break;
    flush_checkpoints(p);
    if (L.level % p == 0) {
      part.excluded_primes.push_back(p);
      continue;
    }
    // a(t p^2) = A_t(p) - chi(p) p^{k-1} a(t), exact
    mpz_class v = L.lifted.coefficient(p);
    int chip = lift_character(p, L);
    if (chip != 0) {
      mpz_class shift = pow_ll(p, static_cast<unsigned long>(L.k - 1)) * L.a_t;
      if (chip > 0)
        v -= shift;
      else
        v += shift;
    }
    int sgn = mpz_sgn(v.get_mpz_t());
    part.prime_signs.emplace_back(p, sgn);
    if (sgn > 0)
      ++pos;
    else if (sgn < 0)
      ++neg;
    else
      ++zero;
  }
  flush_checkpoints(x_max + 1);
  return part;
}

DensityReport regularity_from_counts(std::span<const CountRow> counts,
                                     double d) {
  int with_data = 0;
  for (const auto& row : counts)
    if (row.pi_s > 0) ++with_data;
  if (with_data < 3)
    throw InvalidArgument(
        "regularity: need at least 3 checkpoints with pi_S > 0");

  DensityReport rep;
  rep.target_density = d;
  std::vector<std::pair<double, double>> fit_pts;
  for (const auto& row : counts) {
    DensityReport::Row r;
    r.x = row.x;
    r.pi_s = row.pi_s;
    r.pi = row.pi;
    r.ratio = static_cast<double>(row.pi_s) / static_cast<double>(row.pi);
    r.err = r.ratio - d;
    r.recip_partial = row.recip_partial;
    rep.rows.push_back(r);
    if (r.err == 0.0)
      ++rep.zero_err_skipped;
    else
      fit_pts.emplace_back(static_cast<double>(row.x), std::fabs(r.err));
  }
  if (fit_pts.size() >= 3) {
    PowerFit f = fit_error_exponent(fit_pts);
    rep.fitted_c = f.c;
    rep.fitted_alpha = f.alpha;
  } else {
    rep.fit_degenerate = true;
  }
  return rep;
}

DensityReport regularity_diagnostic(std::span<const long long> s_primes,
                                    const PrimeTable& pt, double d,
                                    std::span<const long long> checkpoints) {
  check_checkpoints(checkpoints, pt.limit);
  std::vector<long long> sorted(s_primes.begin(), s_primes.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<CountRow> counts;
  size_t i = 0;
  Kahan recip;
  for (long long x : checkpoints) {
    while (i < sorted.size() && sorted[i] <= x) {
      recip.add(1.0 / static_cast<double>(sorted[i]));
      ++i;
    }
    counts.push_back({x, static_cast<long long>(i), pt.count_upto(x),
                      recip.sum});
  }
  return regularity_from_counts(counts, d);
}

SignSeries sign_series(const LiftRecord& L, long long n_max) {
  if (L.a_t <= 0)
    throw InvalidArgument(
        "sign_series: a(t) must be positive (negate the source first)");
  auto g = inverse_lift(L, n_max);
  SignSeries s;
  s.t = L.t;
  s.values.resize(static_cast<size_t>(n_max));
  for (long long n = 1; n <= n_max; ++n)
    s.values[n - 1] = static_cast<int8_t>(mpz_sgn(g[n - 1].get_mpz_t()));
  return s;
}

double dirichlet_partial(std::span<const int8_t> s, double z) {
  if (!(z > 1.0)) throw InvalidArgument("dirichlet_partial: z must be > 1");
  Kahan acc;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 0) continue;
    double term = std::pow(static_cast<double>(i + 1), -z);
    acc.add(s[i] > 0 ? term : -term);
  }
  return acc.sum;
}

double zeta_tail(double z, long long m) {
  if (!(z > 1.0)) throw InvalidArgument("zeta_tail: z must be > 1");
  if (m < 10) throw InvalidArgument("zeta_tail: m must be >= 10");
  double md = static_cast<double>(m);
  // Euler-Maclaurin from m: sum_{n>m} n^{-z}
  double t = std::pow(md, 1.0 - z) / (z - 1.0);
  t -= 0.5 * std::pow(md, -z);
  t += z / 12.0 * std::pow(md, -z - 1.0);
  t -= z * (z + 1.0) * (z + 2.0) / 720.0 * std::pow(md, -z - 3.0);
  return t;
}

EulerProductCheck euler_product_check(const SignSeries& s, double z,
                                      long long p_max, const PrimeTable& pt) {
  if (!(z > 1.0))
    throw InvalidArgument("euler_product_check: z must be > 1");
  long long n_max = s.n_max();
  if (p_max > n_max)
    throw PrecisionExceeded("euler_product_check: p_max beyond series range");
  if (pt.limit < p_max)
    throw InvalidArgument("euler_product_check: prime table too small");

  EulerProductCheck out;
  out.sum = dirichlet_partial(s.values, z);

  double product = 1.0;
  double rel_tail = 0.0;
  bool tail_unbounded = false;
  for (long long p : pt.primes) {
    if (p > p_max) break;
    double pz = std::pow(static_cast<double>(p), -z);
    double factor = 1.0;
    double pkz = 1.0;
    long long pk = 1;
    bool truncated = false;
    for (int k = 1;; ++k) {
      if (pk > n_max / p) {
        truncated = true;
        break;
      }
      pk *= p;
      pkz *= pz;
      int sv = s.s(pk);
      if (sv != 0) factor += sv > 0 ? pkz : -pkz;
    }
    product *= factor;
    if (truncated) {
      // omitted tail for this prime, never larger than the m>=2 bound
      double pzv = std::pow(static_cast<double>(p), z);
      double bound = 1.0 / (pzv * (pzv - 1.0));
      double omitted = std::min(bound, pkz * pz / (1.0 - pz));
      double base = std::fabs(factor) - omitted;
      if (base <= 0.0)
        tail_unbounded = true;
      else
        rel_tail += omitted / base;
    }
  }
  out.product = product;

  // gap bound: sum truncation + product truncation + primes beyond p_max.
  // For p > p_max: |log factor_p| <= |x| + x^2 with x = s(p)p^{-z} + tail_p
  // and |x| <= 1.2 p^{-z}, so the sum over them is <= 1.3 * zeta_tail(z,P).
  double beyond = 1.3 * zeta_tail(z, p_max);
  if (tail_unbounded)
    out.tail_bound = std::numeric_limits<double>::infinity();
  else
    out.tail_bound = zeta_tail(z, n_max) +
                     std::fabs(product) * std::expm1(rel_tail + beyond);
  out.gap = std::fabs(out.sum - out.product);
  return out;
}

namespace {

std::vector<DedekindRow> dedekind_rows(std::span<const uint8_t> indicator,
                                       std::span<const double> zs) {
  if (indicator.empty())
    throw InvalidArgument("dedekind_dirichlet_estimate: empty range");
  double prev = std::numeric_limits<double>::infinity();
  for (double z : zs) {
    if (!(z > 1.0))
      throw InvalidArgument("dedekind_dirichlet_estimate: z must be > 1");
    if (!(z < prev))
      throw InvalidArgument(
          "dedekind_dirichlet_estimate: z grid must be strictly decreasing");
    prev = z;
  }
  long long n_max = static_cast<long long>(indicator.size());
  long long count = 0;
  for (uint8_t v : indicator) count += v ? 1 : 0;
  double density_hat =
      static_cast<double>(count) / static_cast<double>(n_max);

  std::vector<DedekindRow> rows;
  for (double z : zs) {
    Kahan acc;
    for (long long n = 1; n <= n_max; ++n)
      if (indicator[n - 1])
        acc.add(std::pow(static_cast<double>(n), -z));
    DedekindRow row;
    row.z = z;
    row.raw = (z - 1.0) * acc.sum;
    row.tail_completed =
        row.raw + (z - 1.0) * density_hat * zeta_tail(z, n_max);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<DedekindRow> dedekind_dirichlet_estimate(
    std::span<const uint8_t> indicator, std::span<const double> zs) {
  return dedekind_rows(indicator, zs);
}

NonzeroDensityReport nonzero_density_estimate(const SignSeries& s,
                                              std::span<const double> zs) {
  long long n_max = s.n_max();
  std::vector<uint8_t> nonzero(static_cast<size_t>(n_max));
  std::vector<uint8_t> positive(static_cast<size_t>(n_max));
  for (long long n = 1; n <= n_max; ++n) {
    nonzero[n - 1] = s.values[n - 1] != 0;
    positive[n - 1] = s.values[n - 1] > 0;
  }
  auto nz_rows = dedekind_rows(nonzero, zs);
  auto pos_rows = dedekind_rows(positive, zs);
  NonzeroDensityReport rep;
  for (size_t i = 0; i < nz_rows.size(); ++i) {
    rep.rows.push_back({nz_rows[i].z, nz_rows[i].raw, nz_rows[i].tail_completed,
                        pos_rows[i].raw, pos_rows[i].tail_completed});
  }
  rep.a1_estimate = nz_rows.back().tail_completed;
  return rep;
}

double prime_sum_difference(std::span<const long long> s1,
                            std::span<const long long> s2, double z) {
  if (!(z >= 1.0))
    throw InvalidArgument("prime_sum_difference: z must be >= 1");
  Kahan a, b;
  for (long long p : s1) a.add(std::pow(static_cast<double>(p), -z));
  for (long long p : s2) b.add(std::pow(static_cast<double>(p), -z));
  return a.sum - b.sum;
}

}  // namespace bkv
