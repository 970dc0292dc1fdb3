#include "bkv/numtheory.hpp"

#include <algorithm>
#include <cmath>

#include "bkv/errors.hpp"

namespace bkv {

namespace {

constexpr long long kSegmentedThreshold = 10'000'000;

std::vector<long long> sieve_simple(long long limit) {
  std::vector<uint8_t> composite(static_cast<size_t>(limit) + 1, 0);
  std::vector<long long> primes;
  for (long long i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (long long j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return primes;
}

}  // namespace

namespace detail {

std::vector<long long> sieve_segmented(long long limit, long long segment_size) {
  long long root = static_cast<long long>(std::sqrt(static_cast<double>(limit)));
  while (root * root > limit) --root;
  while ((root + 1) * (root + 1) <= limit) ++root;
  std::vector<long long> base = sieve_simple(std::max<long long>(root, 2));
  std::vector<long long> primes;
  primes.reserve(static_cast<size_t>(
      limit / std::max(1.0, std::log(static_cast<double>(limit)) - 1.2)));
  for (long long p : base)
    if (p <= limit) primes.push_back(p);
  std::vector<uint8_t> seg(static_cast<size_t>(segment_size));
  for (long long lo = root + 1; lo <= limit; lo += segment_size) {
    long long hi = std::min(limit, lo + segment_size - 1);
    std::fill(seg.begin(), seg.begin() + (hi - lo + 1), 0);
    for (long long p : base) {
      if (p * p > hi) break;
      long long start = std::max(p * p, ((lo + p - 1) / p) * p);
      for (long long j = start; j <= hi; j += p) seg[j - lo] = 1;
    }
    for (long long j = lo; j <= hi; ++j)
      if (!seg[j - lo]) primes.push_back(j);
  }
  return primes;
}

}  // namespace detail

PrimeTable sieve_primes(long long limit) {
  if (limit < 2) throw InvalidArgument("sieve_primes: limit must be >= 2");
  PrimeTable t;
  t.limit = limit;
  if (limit <= kSegmentedThreshold)
    t.primes = sieve_simple(limit);
  else
    t.primes = detail::sieve_segmented(limit, 1LL << 22);
  return t;
}

long long PrimeTable::count_upto(long long x) const {
  if (x > limit) throw InvalidArgument("PrimeTable::count_upto: x beyond limit");
  return std::upper_bound(primes.begin(), primes.end(), x) - primes.begin();
}

bool PrimeTable::contains(long long p) const {
  return std::binary_search(primes.begin(), primes.end(), p);
}

int kronecker(long long a, long long n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if ((a & 1) == 0 && (n & 1) == 0) return 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  // strip factors of 2 from n, each contributing (a|2)
  int twos = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++twos;
  }
  if (twos & 1) {
    long long r = ((a % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  // now n odd positive: Jacobi symbol loop with quadratic reciprocity
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      long long r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

std::vector<std::pair<long long, int>> factorize(long long n) {
  if (n < 1) throw InvalidArgument("factorize: n must be >= 1");
  std::vector<std::pair<long long, int>> fs;
  for (long long d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    fs.emplace_back(d, e);
  }
  if (n > 1) fs.emplace_back(n, 1);
  return fs;
}

int moebius(long long n) {
  if (n < 1) throw InvalidArgument("moebius: n must be >= 1");
  int sign = 1;
  for (auto [p, e] : factorize(n)) {
    (void)p;
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

bool is_squarefree(long long n) {
  if (n < 1) throw InvalidArgument("is_squarefree: n must be >= 1");
  for (auto [p, e] : factorize(n)) {
    (void)p;
    if (e > 1) return false;
  }
  return true;
}

std::vector<long long> divisors(long long n) {
  if (n < 1) throw InvalidArgument("divisors: n must be >= 1");
  std::vector<long long> ds{1};
  for (auto [p, e] : factorize(n)) {
    size_t m = ds.size();
    long long pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < m; ++j) ds.push_back(ds[j] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

}  // namespace bkv
