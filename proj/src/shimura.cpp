#include "bkv/shimura.hpp"

#include <cmath>
#include <numeric>

#include "bkv/errors.hpp"
#include "bkv/numtheory.hpp"

namespace bkv {

namespace {

long long checked_niwa_disc(int k, long long level, long long t) {
  long long sign = (k % 2 == 0) ? 1 : -1;
  long long d = 0;
  if (__builtin_mul_overflow(level, level, &d) ||
      __builtin_mul_overflow(d, t, &d))
    throw InvalidArgument("lift character: N^2 t overflows");
  return sign * d;
}

mpz_class pow_ll(long long base, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
  return r;
}

}  // namespace

namespace detail {

std::vector<int> character_table(long long n_max, int k, long long level,
                                 long long char_disc, long long t,
                                 LiftConvention conv) {
  long long disc = conv == LiftConvention::kohnen_plus
                       ? ((k % 2 == 0) ? t : -t)
                       : checked_niwa_disc(k, level, t);
  std::vector<int> chi(static_cast<size_t>(n_max) + 1, 0);
  for (long long d = 0; d <= n_max; ++d)
    chi[d] = kronecker(char_disc, d) * kronecker(disc, d);
  return chi;
}

std::vector<mpz_class> lift_forward(std::span<const mpz_class> g, int k,
                                    const std::vector<int>& chi) {
  long long n_max = static_cast<long long>(g.size()) - 1;
  std::vector<mpz_class> out(static_cast<size_t>(n_max) + 1);
  for (long long d = 1; d <= n_max; ++d) {
    if (chi[d] == 0) continue;
    mpz_class w = pow_ll(d, static_cast<unsigned long>(k - 1));
    bool plus = chi[d] > 0;
    for (long long n = d; n <= n_max; n += d) {
      if (plus)
        mpz_addmul(out[n].get_mpz_t(), w.get_mpz_t(),
                   g[n / d].get_mpz_t());
      else
        mpz_submul(out[n].get_mpz_t(), w.get_mpz_t(),
                   g[n / d].get_mpz_t());
    }
  }
  return out;
}

std::vector<mpz_class> lift_backward(std::span<const mpz_class> a, int k,
                                     const std::vector<int>& chi) {
  long long n_max = static_cast<long long>(a.size()) - 1;
  std::vector<mpz_class> out(static_cast<size_t>(n_max) + 1);
  for (long long d = 1; d <= n_max; ++d) {
    int w = moebius(d) * chi[d];
    if (w == 0) continue;
    mpz_class pw = pow_ll(d, static_cast<unsigned long>(k - 1));
    for (long long n = d; n <= n_max; n += d) {
      if (w > 0)
        mpz_addmul(out[n].get_mpz_t(), pw.get_mpz_t(),
                   a[n / d].get_mpz_t());
      else
        mpz_submul(out[n].get_mpz_t(), pw.get_mpz_t(),
                   a[n / d].get_mpz_t());
    }
  }
  return out;
}

}  // namespace detail

int chi_tN(long long d, const LiftRecord& ctx) {
  return kronecker(ctx.char_disc, d) *
         kronecker(checked_niwa_disc(ctx.k, ctx.level, ctx.t), d);
}

int lift_character(long long d, const LiftRecord& ctx) {
  long long disc = ctx.convention == LiftConvention::kohnen_plus
                       ? ((ctx.k % 2 == 0) ? ctx.t : -ctx.t)
                       : checked_niwa_disc(ctx.k, ctx.level, ctx.t);
  return kronecker(ctx.char_disc, d) * kronecker(disc, d);
}

LiftRecord shimura_lift(const FormRecord& f, long long t, long long prec) {
  if (!f.half_integral())
    throw InvalidArgument("shimura_lift: source must have half-integral weight");
  if (t < 1 || !is_squarefree(t))
    throw InvalidArgument("shimura_lift: t must be positive and squarefree");
  if (prec < 1) throw InvalidArgument("shimura_lift: prec must be >= 1");
  if (t >= f.expansion.prec())
    throw PrecisionExceeded("shimura_lift: a(t) not available");
  mpz_class a_t = f.expansion.coefficient(t);
  if (a_t == 0)
    throw InvalidArgument("shimura_lift: a(t) = 0 at t = " + std::to_string(t));
  if (f.expansion.prec() <= t * prec * prec)
    throw PrecisionExceeded(
        "shimura_lift: source precision must exceed t*prec^2 = " +
        std::to_string(t * prec * prec));

  LiftRecord L;
  L.source_label = f.label;
  L.t = t;
  L.a_t = a_t;
  L.k = f.k_half();
  L.level = f.level;
  L.char_disc = f.char_disc;
  L.convention = (f.level == 4) ? LiftConvention::kohnen_plus
                                : LiftConvention::shimura_niwa;

  std::vector<mpz_class> g(static_cast<size_t>(prec) + 1);
  for (long long m = 1; m <= prec; ++m)
    g[m] = f.expansion.coefficient(t * m * m);
  auto chi = detail::character_table(prec, L.k, L.level, L.char_disc, t,
                                     L.convention);
  L.lifted = QExpansion(detail::lift_forward(g, L.k, chi));
  return L;
}

std::vector<mpz_class> inverse_lift(const LiftRecord& L, long long n_max) {
  if (n_max < 1) throw InvalidArgument("inverse_lift: n_max must be >= 1");
  if (n_max > L.n_max())
    throw PrecisionExceeded("inverse_lift: lifted precision " +
                            std::to_string(L.n_max()) + " < n_max " +
                            std::to_string(n_max));
  std::vector<mpz_class> a(L.lifted.coeffs().begin(),
                           L.lifted.coeffs().begin() + n_max + 1);
  auto chi = detail::character_table(n_max, L.k, L.level, L.char_disc, L.t,
                                     L.convention);
  auto g = detail::lift_backward(a, L.k, chi);
  return std::vector<mpz_class>(g.begin() + 1, g.end());
}

LiftRecord lift_via_companion(const FormRecord& f, long long t,
                              const FormRecord& companion,
                              long long n_validate) {
  if (companion.half_integral())
    throw InvalidArgument("lift_via_companion: companion must be integral weight");
  if (n_validate < 1)
    throw InvalidArgument("lift_via_companion: n_validate must be >= 1");
  int k = f.k_half();
  if (companion.weight2 != 4 * k)
    throw InvalidArgument("lift_via_companion: companion weight must be 2k");
  if (companion.expansion.prec() < 2 ||
      companion.expansion.coefficient(1) != 1)
    throw InvalidArgument("lift_via_companion: companion must be normalized");
  if (companion.expansion.prec() <= n_validate)
    throw PrecisionExceeded("lift_via_companion: companion too short");

  LiftRecord direct = shimura_lift(f, t, n_validate);
  for (long long n = 1; n <= n_validate; ++n) {
    mpz_class expect = direct.a_t * companion.expansion.coefficient(n);
    if (direct.lifted.coefficient(n) != expect)
      throw ConstructionFailure(
          "lift_via_companion: lift disagrees with a(t)*companion at n = " +
          std::to_string(n));
  }

  LiftRecord L = direct;
  long long big = companion.expansion.prec() - 1;
  std::vector<mpz_class> lifted(static_cast<size_t>(big) + 1);
  for (long long n = 1; n <= big; ++n)
    lifted[n] = direct.a_t * companion.expansion.coefficient(n);
  L.lifted = QExpansion(std::move(lifted));
  return L;
}

std::vector<std::pair<long long, long long>> check_multiplicativity(
    const FormRecord& f, long long t, long long bound) {
  if (bound < 1)
    throw InvalidArgument("check_multiplicativity: bound must be >= 1");
  if (t < 1 || !is_squarefree(t))
    throw InvalidArgument("check_multiplicativity: t must be squarefree");
  if (f.expansion.prec() <= t * bound * bound)
    throw PrecisionExceeded(
        "check_multiplicativity: need source precision > t*bound^2");
  const mpz_class& a_t = f.expansion.coefficient(t);
  std::vector<std::pair<long long, long long>> violations;
  for (long long m = 1; m <= bound; ++m) {
    for (long long n = m; m * n <= bound; ++n) {
      if (std::gcd(m, n) != 1) continue;
      mpz_class lhs = f.expansion.coefficient(t * m * m) *
                      f.expansion.coefficient(t * n * n);
      mpz_class rhs = a_t * f.expansion.coefficient(t * m * m * n * n);
      if (lhs != rhs) violations.emplace_back(m, n);
    }
  }
  return violations;
}

NormalizedSample normalize_bp(const LiftRecord& L, long long p) {
  if (p < 2) throw InvalidArgument("normalize_bp: p must be prime");
  if (L.level % p == 0)
    throw InvalidArgument("normalize_bp: p divides the level");
  if (p > L.n_max())
    throw PrecisionExceeded("normalize_bp: p beyond lifted precision");
  const mpz_class& ap = L.lifted.coefficient(p);
  // exact certificate A(p)^2 <= 4 a(t)^2 p^{2k-1}
  mpz_class lhs = ap * ap;
  mpz_class rhs = 4 * L.a_t * L.a_t *
                  pow_ll(p, static_cast<unsigned long>(2 * L.k - 1));
  if (lhs > rhs)
    throw RamanujanViolation(
        "normalize_bp: |A(p)| exceeds the Ramanujan-Petersson bound at p = " +
        std::to_string(p));
  double denom = 2.0 * std::abs(L.a_t.get_d()) *
                 std::pow(static_cast<double>(p),
                          static_cast<double>(L.k) - 0.5);
  double v = ap.get_d() / denom;
  if (L.a_t < 0) v = -v;
  NormalizedSample s;
  s.prime = p;
  s.value = v;
  return s;
}

FormRecord as_form_record(const LiftRecord& L) {
  FormRecord F;
  F.weight2 = 4 * L.k;
  F.level = std::max<long long>(1, L.level / 2);
  F.char_disc = 1;
  F.label = L.source_label + ":t=" + std::to_string(L.t) + ":lift";
  F.expansion = L.lifted;
  return F;
}

}  // namespace bkv
