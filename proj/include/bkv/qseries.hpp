#pragma once

#include <gmpxx.h>

#include <vector>

namespace bkv {

// Truncated q-series with exact integer coefficients. coeffs()[n] is exactly
// the n-th coefficient of the represented series; prec() is the number of
// known coefficients. Arithmetic results carry prec = min of the operand
// precisions and are never rounded.
class QExpansion {
 public:
  QExpansion() = default;
  explicit QExpansion(std::vector<mpz_class> coeffs)
      : coeffs_(std::move(coeffs)) {}

  static QExpansion zero(long long prec);
  static QExpansion one(long long prec);

  long long prec() const { return static_cast<long long>(coeffs_.size()); }

  // Exact coefficient at index n; asking beyond the known range is an error,
  // never a silent zero.
  const mpz_class& coefficient(long long n) const;

  const std::vector<mpz_class>& coeffs() const { return coeffs_; }

  long long nonzero_terms() const;

 private:
  std::vector<mpz_class> coeffs_;
};

QExpansion add(const QExpansion& a, const QExpansion& b);
QExpansion sub(const QExpansion& a, const QExpansion& b);

// Cauchy product truncated to min precision. Bit-exact for any worker count
// and for either the dense or the sparse term-list path.
QExpansion mul(const QExpansion& a, const QExpansion& b);

// e-fold product, e >= 1. A base with <= 2*sqrt(prec) nonzero terms is
// raised by repeated sparse multiplication; dense bases use binary powering.
QExpansion pow(const QExpansion& base, long long e);

// Multiply by q^m: coefficients move up by m, precision grows to prec + m.
QExpansion shift(const QExpansion& a, long long m);

// First new_prec coefficients; new_prec <= prec.
QExpansion truncate(const QExpansion& a, long long new_prec);

QExpansion scale(const QExpansion& a, const mpz_class& c);

// Prod_{n>=1} (1 - q^n): nonzero only at generalized pentagonal indices
// m(3m-1)/2 with value (-1)^m.
QExpansion euler_product(long long prec);

// theta(z) = 1 + 2 sum_{n>=1} q^{n^2}.
QExpansion theta_series(long long prec);

// sum over odd n of sigma_1(n) q^n; the weight-2 generator on level 4.
QExpansion odd_sigma_series(long long prec);

// Prod (1-q^n)^3 = sum_m (-1)^m (2m+1) q^{m(m+1)/2} (Jacobi); used as the
// sparse building block for 24th powers. Validated against euler_product^3
// in the test suite.
QExpansion eta_cube(long long prec);

namespace detail {
// Worker count used by the convolution kernels; BKV_THREADS caps it.
int thread_budget();
// Test hook: force a specific worker count (0 restores the default).
void override_thread_budget(int n);
}  // namespace detail

}  // namespace bkv
