#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "bkv/density.hpp"
#include "bkv/satotate.hpp"
#include "bkv/errors.hpp"

using namespace bkv;

namespace {

LiftRecord kz_lift(long long depth) {
  FormRecord f = build_catalog_form("kz13_2", 401);
  FormRecord d = build_catalog_form("delta", depth + 1);
  return lift_via_companion(f, 1, d, 20);
}

SignSeries const_series(long long n_max, int v) {
  SignSeries s;
  s.t = 1;
  s.values.assign(static_cast<size_t>(n_max), static_cast<int8_t>(v));
  return s;
}

}  // namespace

TEST_CASE("sign_partition on kz13_2, t = 1") {
  LiftRecord L = kz_lift(1000);
  PrimeTable pt = sieve_primes(1000);
  std::vector<long long> xs = {100, 1000};
  SignPartition part = sign_partition(L, 1000, xs, pt);

  CHECK(part.excluded_primes == std::vector<long long>{2});
  // p = 3: a(9) = 9 > 0
  CHECK(part.prime_signs.front().first == 3);
  CHECK(part.prime_signs.front().second == 1);

  // partition completeness at every checkpoint
  for (const auto& row : part.checkpoints) {
    long long excluded = 0;
    for (long long p : part.excluded_primes)
      if (p <= row.x) ++excluded;
    CHECK(row.pos + row.neg + row.zero + excluded == row.pi);
  }
  CHECK(part.checkpoints.back().pi == 168);

  // consistency with sign_series sampled at primes
  SignSeries s = sign_series(L, 1000);
  for (auto [p, sgn] : part.prime_signs) CHECK(s.s(p) == sgn);
}

TEST_CASE("sign_partition rejects a(t) <= 0") {
  LiftRecord L = kz_lift(100);
  L.a_t = -1;
  PrimeTable pt = sieve_primes(100);
  std::vector<long long> xs = {100};
  CHECK_THROWS_AS(sign_partition(L, 100, xs, pt), InvalidArgument);
}

TEST_CASE("regularity_diagnostic on primes 1 mod 4") {
  PrimeTable pt = sieve_primes(10000);
  std::vector<long long> s;
  for (long long p : pt.primes)
    if (p % 4 == 1) s.push_back(p);
  std::vector<long long> xs = {100, 1000, 10000};
  DensityReport rep = regularity_diagnostic(s, pt, 0.5, xs);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[0].pi_s == 11);  // 5, 13, ..., 97
  CHECK(rep.rows[0].pi == 25);
  CHECK(rep.rows[0].err == doctest::Approx(11.0 / 25.0 - 0.5).epsilon(1e-15));
  CHECK_FALSE(rep.fit_degenerate);
  CHECK(rep.fitted_alpha > 0.0);
  // reciprocal partial sums increase and start at 1/5 + ...
  CHECK(rep.rows[0].recip_partial > 0.2);
  CHECK(rep.rows[2].recip_partial > rep.rows[1].recip_partial);
}

TEST_CASE("regularity_diagnostic degenerate when S is all primes") {
  PrimeTable pt = sieve_primes(2000);
  std::vector<long long> xs = {100, 1000, 2000};
  DensityReport rep = regularity_diagnostic(pt.primes, pt, 1.0, xs);
  CHECK(rep.fit_degenerate);
  CHECK(rep.zero_err_skipped == 3);
  for (const auto& row : rep.rows) CHECK(row.err == 0.0);
}

TEST_CASE("regularity_from_counts recovers a planted power law") {
  // E(x) = x^{-1/2} exactly at x = 4^j with pi = x, pi_S = x/2 + sqrt(x)
  std::vector<CountRow> counts;
  for (int j = 3; j <= 8; ++j) {
    long long x = 1LL << (2 * j);
    counts.push_back({x, x / 2 + (1LL << j), x, 0.0});
  }
  DensityReport rep = regularity_from_counts(counts, 0.5);
  CHECK(std::fabs(rep.fitted_alpha - 0.5) <= 1e-12);
  CHECK(std::fabs(rep.fitted_c - 1.0) <= 1e-12);
  CHECK_THROWS_AS(regularity_from_counts(
                      std::vector<CountRow>{{10, 1, 4, 0.0}, {20, 2, 8, 0.0}},
                      0.5),
                  InvalidArgument);
}

TEST_CASE("sign_series basics and multiplicativity") {
  LiftRecord L = kz_lift(2000);
  SignSeries s = sign_series(L, 2000);
  CHECK(s.s(1) == 1);
  CHECK(s.s(3) == 1);               // a(9) = 9
  CHECK(s.s(2) == -1);              // a(4) = -56
  CHECK(s.s(6) == s.s(2) * s.s(3));
  for (long long m = 1; m <= 2000; ++m)
    for (long long n = m + 1; m * n <= 2000; ++n)
      if (std::gcd(m, n) == 1) CHECK(s.s(m * n) == s.s(m) * s.s(n));
}

TEST_CASE("interval_density of the real sample is near 1/2 on [0,1]") {
  LiftRecord L = kz_lift(20000);
  PrimeTable pt = sieve_primes(20000);
  SatoTateSample sample = make_sample(L, pt, 20000);
  CHECK(std::fabs(interval_density(sample, 0.0, 1.0) - 0.5) <= 0.05);
  CHECK(interval_density(sample, -1.0, 1.0) == 1.0);
}

TEST_CASE("dirichlet_partial of the sign series is dominated by zeta") {
  LiftRecord L = kz_lift(10000);
  SignSeries s = sign_series(L, 10000);
  double value = dirichlet_partial(s.values, 1.1);
  SignSeries ones = const_series(10000, 1);
  double zeta_partial = dirichlet_partial(ones.values, 1.1);
  CHECK(std::isfinite(value));
  CHECK(std::fabs(value) <= zeta_partial);
}

TEST_CASE("dirichlet_partial") {
  SignSeries ones = const_series(100000, 1);
  double zeta2 = dirichlet_partial(ones.values, 2.0);
  CHECK(std::fabs(zeta2 - std::numbers::pi * std::numbers::pi / 6.0) <
        1.0 / 100000.0);
  SignSeries zeros = const_series(1000, 0);
  CHECK(dirichlet_partial(zeros.values, 2.0) == 0.0);
  CHECK_THROWS_AS(dirichlet_partial(ones.values, 1.0), InvalidArgument);
}

TEST_CASE("zeta_tail matches closed forms") {
  double partial2 = 0.0, partial4 = 0.0;
  for (long long n = 1; n <= 50; ++n) {
    partial2 += 1.0 / (static_cast<double>(n) * n);
    partial4 += 1.0 / (static_cast<double>(n) * n * n * n);
  }
  double pi2 = std::numbers::pi * std::numbers::pi;
  CHECK(std::fabs(partial2 + zeta_tail(2.0, 50) - pi2 / 6.0) <= 1e-13);
  CHECK(std::fabs(partial4 + zeta_tail(4.0, 50) - pi2 * pi2 / 90.0) <= 1e-13);
  CHECK_THROWS_AS(zeta_tail(0.5, 100), InvalidArgument);
}

TEST_CASE("euler_product_check on the constant series (zeta)") {
  SignSeries ones = const_series(10000, 1);
  PrimeTable pt = sieve_primes(100);
  EulerProductCheck r = euler_product_check(ones, 2.0, 100, pt);
  CHECK(std::fabs(r.sum - r.product) < 0.01);
  CHECK(r.gap <= r.tail_bound);

  SignSeries unit = const_series(10000, 0);
  unit.values[0] = 1;
  EulerProductCheck r2 = euler_product_check(unit, 2.0, 100, pt);
  CHECK(r2.sum == 1.0);
  CHECK(r2.product == 1.0);
}

TEST_CASE("euler_product_check on the kz13_2 sign series") {
  LiftRecord L = kz_lift(10000);
  SignSeries s = sign_series(L, 10000);
  PrimeTable pt = sieve_primes(200);
  EulerProductCheck r = euler_product_check(s, 1.5, 200, pt);
  CHECK(r.gap <= r.tail_bound);
}

TEST_CASE("dedekind_dirichlet_estimate on N and on the evens") {
  long long n_max = 100000;
  std::vector<uint8_t> all(n_max, 1);
  std::vector<uint8_t> evens(n_max, 0);
  for (long long n = 2; n <= n_max; n += 2) evens[n - 1] = 1;
  std::vector<double> zs = {1.01, 1.001};
  auto rows_all = dedekind_dirichlet_estimate(all, zs);
  CHECK(std::fabs(rows_all[1].tail_completed - 1.0) <= 0.01);
  auto rows_even = dedekind_dirichlet_estimate(evens, zs);
  CHECK(std::fabs(rows_even[1].tail_completed - 0.5) <= 0.01);
  // raw truncations degenerate toward 0 as z -> 1+, tail restores the mass
  CHECK(rows_all[1].raw < rows_all[0].raw);
  CHECK(rows_all[1].tail_completed > rows_all[1].raw);

  // raw values reproduce direct summation
  double direct = 0.0;
  for (long long n = 1; n <= n_max; ++n)
    direct += std::pow(static_cast<double>(n), -1.01);
  CHECK(std::fabs(rows_all[0].raw - 0.01 * direct) <= 1e-9);

  std::vector<double> increasing = {1.001, 1.01};
  CHECK_THROWS_AS(dedekind_dirichlet_estimate(all, increasing),
                  InvalidArgument);
  std::vector<double> bad = {0.9};
  CHECK_THROWS_AS(dedekind_dirichlet_estimate(all, bad), InvalidArgument);
}

TEST_CASE("nonzero_density_estimate") {
  SignSeries ones = const_series(20000, 1);
  std::vector<double> zs = {1.1, 1.01};
  auto rep = nonzero_density_estimate(ones, zs);
  CHECK(std::fabs(rep.a1_estimate - 1.0) <= 0.01);
  CHECK(rep.rows[1].positive_tail ==
        doctest::Approx(rep.rows[1].nonzero_tail).epsilon(1e-12));

  SignSeries zeros = const_series(1000, 0);
  auto rep0 = nonzero_density_estimate(zeros, zs);
  CHECK(rep0.a1_estimate == 0.0);

  // the half-split shadow on real data at modest scale
  LiftRecord L = kz_lift(10000);
  SignSeries s = sign_series(L, 10000);
  auto repk = nonzero_density_estimate(s, zs);
  CHECK(std::fabs(repk.rows[1].positive_tail -
                  0.5 * repk.rows[1].nonzero_tail) <= 0.05);
}

TEST_CASE("cross-operation consistency: dedekind on the nonzero set") {
  LiftRecord L = kz_lift(10000);
  SignSeries s = sign_series(L, 10000);
  std::vector<uint8_t> ind(10000);
  for (long long n = 1; n <= 10000; ++n) ind[n - 1] = s.s(n) != 0;
  std::vector<double> zs = {1.01};
  auto dd = dedekind_dirichlet_estimate(ind, zs);
  auto nz = nonzero_density_estimate(s, zs);
  CHECK(dd[0].tail_completed ==
        doctest::Approx(nz.rows[0].nonzero_tail).epsilon(1e-12));
  CHECK(std::fabs(dd[0].tail_completed - nz.a1_estimate) <= 1e-12);
}

TEST_CASE("prime_sum_difference") {
  PrimeTable pt = sieve_primes(10000);
  std::vector<long long> s1, s2;
  for (long long p : pt.primes) {
    if (p % 4 == 1) s1.push_back(p);
    if (p % 4 == 3) s2.push_back(p);
  }
  CHECK(prime_sum_difference(s1, s1, 1.0) == 0.0);
  double diff = prime_sum_difference(s1, s2, 1.0);
  CHECK(diff > -0.5);
  CHECK(diff < 0.5);
  CHECK_THROWS_AS(prime_sum_difference(s1, s2, 0.5), InvalidArgument);
}

TEST_CASE("bounded prime-sum difference for the sign sets") {
  LiftRecord L = kz_lift(10000);
  PrimeTable pt = sieve_primes(10000);
  std::vector<long long> xs = {1000, 10000};
  SignPartition part = sign_partition(L, 10000, xs, pt);
  std::vector<long long> pos, neg;
  for (auto [p, sgn] : part.prime_signs) {
    if (sgn > 0) pos.push_back(p);
    if (sgn < 0) neg.push_back(p);
  }
  CHECK(std::fabs(prime_sum_difference(pos, neg, 1.0)) < 1.0);
}
