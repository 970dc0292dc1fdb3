#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace bkv {

// All primes up to a fixed limit, in increasing order.
struct PrimeTable {
  long long limit = 0;
  std::vector<long long> primes;

  // pi(x) for x <= limit.
  long long count_upto(long long x) const;
  bool contains(long long p) const;
};

// Sieve of Eratosthenes; switches to a segmented sieve above 10^7 to bound
// working memory. limit >= 2.
PrimeTable sieve_primes(long long limit);

// Kronecker symbol (a|n), full extension to all integer arguments:
// (a|0) = [|a| = 1], (a|-1) = sign extension, (a|2) by the mod-8 rule.
int kronecker(long long a, long long n);

// Moebius function, n >= 1.
int moebius(long long n);

// All positive divisors of n in increasing order, n >= 1.
std::vector<long long> divisors(long long n);

bool is_squarefree(long long n);

// (prime, exponent) pairs by trial division, increasing primes. n >= 1.
std::vector<std::pair<long long, int>> factorize(long long n);

namespace detail {
// Exposed for oracle-equivalence tests against the plain sieve.
std::vector<long long> sieve_segmented(long long limit, long long segment_size);
}  // namespace detail

}  // namespace bkv
