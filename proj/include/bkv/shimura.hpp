#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bkv/forms.hpp"

namespace bkv {

// Character convention used inside the lift sum A_t(n) = sum_{d|n} chi(d)
// d^{k-1} a(t n^2 / d^2):
//  - shimura_niwa: chi(d) * kronecker((-1)^k N^2 t, d), the character of the
//    level-N/2 lift; it vanishes on even d when 4 | N.
//  - kohnen_plus: chi(d) * kronecker((-1)^k t, d), the character of the
//    level-1 correspondence for plus-space forms on level 4. The two agree
//    at every d coprime to N; they differ only at d sharing a factor with N.
// Sources of level 4 use kohnen_plus; everything downstream (sign
// statistics, normalization) only evaluates the character at primes p
// coprime to N, where the conventions coincide.
enum class LiftConvention { shimura_niwa, kohnen_plus };

// A Shimura lift: squarefree index t with a(t) != 0, the lifted expansion
// A_t(n) for 1 <= n <= n_max (index 0 of `lifted` is unused and zero), and
// the parameters (k, N, D) of the source needed to evaluate the character.
struct LiftRecord {
  std::string source_label;
  long long t = 1;
  mpz_class a_t;
  int k = 0;
  long long level = 4;
  long long char_disc = 1;
  LiftConvention convention = LiftConvention::kohnen_plus;
  QExpansion lifted;

  long long n_max() const { return lifted.prec() - 1; }
};

// chi_{t,N}(d) = chi(d) * kronecker((-1)^k N^2 t, d).
int chi_tN(long long d, const LiftRecord& ctx);

// The character actually used in the lift sums, per ctx.convention.
int lift_character(long long d, const LiftRecord& ctx);

// A_t(n) for 1 <= n <= prec, computed exactly from the half-integral
// expansion. Requires weight2 odd, t squarefree with a(t) != 0, and source
// precision > t * prec^2.
LiftRecord shimura_lift(const FormRecord& f, long long t, long long prec);

// Moebius inversion: a(t n^2) = sum_{d|n} mu(d) chi(d) d^{k-1} A_t(n/d),
// n = 1..n_max. Exact; round-trips with the forward lift.
std::vector<mpz_class> inverse_lift(const LiftRecord& L, long long n_max);

// Extends a lift to the precision of an integral-weight companion F after
// validating A_t(n) == a(t) * F(n) exactly for n <= n_validate. Requires F
// normalized (coefficient 1 at index 1) and of weight 2k. This is how
// large-x statistics are produced: a(t p^2) at p ~ 10^5 needs only F's
// expansion to index 10^5 instead of the half-integral expansion to t p^2.
LiftRecord lift_via_companion(const FormRecord& f, long long t,
                              const FormRecord& companion,
                              long long n_validate);

// Coprime pairs (m, n), m <= n, mn <= bound with
// a(t m^2) a(t n^2) != a(t) a(t m^2 n^2); empty for genuine eigenforms.
std::vector<std::pair<long long, long long>> check_multiplicativity(
    const FormRecord& f, long long t, long long bound);

// One normalized Hecke angle sample: value = A_t(p) / (2 a(t) p^{k-1/2}).
struct NormalizedSample {
  long long prime = 0;
  double value = 0.0;
};

// Checks the exact integer certificate A_t(p)^2 <= 4 a(t)^2 p^{2k-1} before
// dividing; a failure is reported as RamanujanViolation (CM form,
// non-eigenform input, or an upstream bug).
NormalizedSample normalize_bp(const LiftRecord& L, long long p);

// View of the lifted expansion as an integral-weight form (weight 2k,
// level N/2, trivial character) so eigen_report applies to it.
FormRecord as_form_record(const LiftRecord& L);

namespace detail {
// Exact Dirichlet-convolution kernels behind the lift; g and the result are
// 1-based (index 0 unused). chi must be completely multiplicative.
std::vector<mpz_class> lift_forward(std::span<const mpz_class> g, int k,
                                    const std::vector<int>& chi);
std::vector<mpz_class> lift_backward(std::span<const mpz_class> a, int k,
                                     const std::vector<int>& chi);
// chi values for d = 0..n_max under the given convention.
std::vector<int> character_table(long long n_max, int k, long long level,
                                 long long char_disc, long long t,
                                 LiftConvention conv);
}  // namespace detail

}  // namespace bkv
