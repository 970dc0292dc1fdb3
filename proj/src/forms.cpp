#include "bkv/forms.hpp"

#include <array>
#include <vector>

#include "bkv/errors.hpp"
#include "bkv/numtheory.hpp"

namespace bkv {

int FormRecord::chi(long long d) const { return kronecker(char_disc, d); }

void validate(const FormRecord& f) {
  if (f.weight2 < 1) throw InvalidArgument("form: weight2 must be >= 1");
  if (f.level < 1) throw InvalidArgument("form: level must be >= 1");
  if (f.half_integral() && f.level % 4 != 0)
    throw InvalidArgument("form: half-integral weight requires 4 | level");
}

FormRecord negate(const FormRecord& f) {
  FormRecord g = f;
  g.expansion = scale(f.expansion, mpz_class(-1));
  return g;
}

namespace {

bool is_prime_ll(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

FormRecord build_delta(long long prec) {
  // q * Prod(1-q^n)^24 as the 8th power of the sparse Jacobi cube.
  QExpansion e24 = pow(eta_cube(prec - 1), 8);
  FormRecord f;
  f.weight2 = 24;
  f.level = 1;
  f.char_disc = 1;
  f.label = "delta";
  f.expansion = shift(e24, 1);
  return f;
}

// Exact nullspace of the constraint rows over Q; expects nullity 1.
std::array<mpq_class, 4> solve_combination(
    const std::vector<std::array<mpq_class, 4>>& rows_in) {
  auto rows = rows_in;
  size_t nrows = rows.size();
  std::vector<int> pivot_col;
  size_t r = 0;
  for (int c = 0; c < 4 && r < nrows; ++c) {
    size_t piv = r;
    while (piv < nrows && rows[piv][c] == 0) ++piv;
    if (piv == nrows) continue;
    std::swap(rows[r], rows[piv]);
    mpq_class inv = rows[r][c];
    for (auto& x : rows[r]) x /= inv;
    for (size_t i = 0; i < nrows; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      mpq_class f = rows[i][c];
      for (int j = 0; j < 4; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (4 - static_cast<int>(pivot_col.size()) != 1)
    throw ConstructionFailure(
        "catalog: plus-space constraint system has nullity " +
        std::to_string(4 - static_cast<int>(pivot_col.size())) +
        ", expected 1");
  int free_col = 0;
  for (int c = 0; c < 4; ++c) {
    bool is_pivot = false;
    for (int pc : pivot_col)
      if (pc == c) is_pivot = true;
    if (!is_pivot) free_col = c;
  }
  std::array<mpq_class, 4> sol;
  sol[free_col] = 1;
  for (size_t i = 0; i < pivot_col.size(); ++i)
    sol[pivot_col[i]] = -rows[i][free_col];
  return sol;
}

FormRecord build_kz13_2(long long prec) {
  // Weight 13/2 on level 4: the graded ring there is generated by theta
  // (weight 1/2) and F = odd_sigma_series (weight 2), so the weight-13/2
  // space is spanned by theta^a F^b with a + 4b = 13. The plus-space cusp
  // form is cut out by requiring coefficients 0 at index 0 and at all
  // indices = 2,3 mod 4 among the first 40, then normalizing the first
  // surviving coefficient to 1.
  long long basis_prec = std::max<long long>(prec, 41);
  QExpansion th = theta_series(basis_prec);
  QExpansion f2 = odd_sigma_series(basis_prec);
  std::array<QExpansion, 4> mons = {
      pow(th, 13),
      mul(pow(th, 9), f2),
      mul(pow(th, 5), mul(f2, f2)),
      mul(th, pow(f2, 3)),
  };

  std::vector<std::array<mpq_class, 4>> rows;
  auto push_row = [&](long long n) {
    std::array<mpq_class, 4> row;
    for (int j = 0; j < 4; ++j) row[j] = mpq_class(mons[j].coefficient(n));
    rows.push_back(std::move(row));
  };
  push_row(0);
  for (long long n = 1; n <= 40; ++n)
    if (n % 4 == 2 || n % 4 == 3) push_row(n);

  std::array<mpq_class, 4> sol = solve_combination(rows);

  auto combine_at = [&](long long n) {
    mpq_class v = 0;
    for (int j = 0; j < 4; ++j)
      if (sol[j] != 0) v += sol[j] * mpq_class(mons[j].coefficient(n));
    return v;
  };

  // normalize: first nonzero coefficient at an index = 0,1 mod 4 becomes 1
  mpq_class lead = 0;
  for (long long n = 0; n < basis_prec; ++n) {
    if (n % 4 == 2 || n % 4 == 3) continue;
    lead = combine_at(n);
    if (lead != 0) break;
  }
  if (lead == 0)
    throw ConstructionFailure("catalog: combination vanishes identically");
  for (auto& c : sol) c /= lead;

  std::vector<mpz_class> coeffs(static_cast<size_t>(prec));
  for (long long n = 0; n < prec; ++n) {
    mpq_class v = combine_at(n);
    v.canonicalize();
    if (v.get_den() != 1)
      throw ConstructionFailure("catalog: non-integral coefficient at index " +
                                std::to_string(n));
    coeffs[n] = v.get_num();
  }
  FormRecord f;
  f.weight2 = 13;
  f.level = 4;
  f.char_disc = 1;
  f.label = "kz13_2";
  f.expansion = QExpansion(std::move(coeffs));
  return f;
}

}  // namespace

FormRecord build_catalog_form(const std::string& label, long long prec) {
  if (prec < 20)
    throw InvalidArgument("build_catalog_form: prec must be >= 20");
  if (label == "delta") return build_delta(prec);
  if (label == "kz13_2") return build_kz13_2(prec);
  throw InvalidArgument("build_catalog_form: unknown label '" + label + "'");
}

QExpansion hecke_tp_integral(const FormRecord& F, long long p) {
  if (F.half_integral())
    throw InvalidArgument("hecke_tp_integral: form has half-integral weight");
  if (!is_prime_ll(p)) throw InvalidArgument("hecke_tp_integral: p not prime");
  if (F.level % p == 0)
    throw InvalidArgument("hecke_tp_integral: p divides the level");
  long long prec = F.expansion.prec();
  if (p * p >= prec)
    throw PrecisionExceeded("hecke_tp_integral: need prec > p^2");
  long long out_prec = prec / p;
  mpz_class pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(F.weight() - 1));
  int chip = F.chi(p);
  std::vector<mpz_class> out(static_cast<size_t>(out_prec));
  for (long long n = 0; n < out_prec; ++n) {
    out[n] = F.expansion.coefficient(p * n);
    if (n % p == 0 && chip != 0) {
      mpz_class t = pw * F.expansion.coefficient(n / p);
      out[n] += (chip > 0) ? t : -t;
    }
  }
  return QExpansion(std::move(out));
}

QExpansion hecke_tp2_half(const FormRecord& f, long long p) {
  if (!f.half_integral())
    throw InvalidArgument("hecke_tp2_half: form has integral weight");
  if (!is_prime_ll(p)) throw InvalidArgument("hecke_tp2_half: p not prime");
  if (f.level % p == 0)
    throw InvalidArgument("hecke_tp2_half: p divides the level");
  long long prec = f.expansion.prec();
  if (p * p * p * p >= prec)
    throw PrecisionExceeded("hecke_tp2_half: need prec > p^4");
  int k = f.k_half();
  long long p2 = p * p;
  long long out_prec = prec / p2;
  mpz_class pk1, p2k1;
  mpz_ui_pow_ui(pk1.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(k - 1));
  mpz_ui_pow_ui(p2k1.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(2 * k - 1));
  int chip = f.chi(p);
  int chip2 = chip * chip;
  long long sign_k = (k % 2 == 0) ? 1 : -1;
  std::vector<mpz_class> out(static_cast<size_t>(out_prec));
  for (long long n = 0; n < out_prec; ++n) {
    out[n] = f.expansion.coefficient(p2 * n);
    int eps = chip * kronecker(sign_k * n, p);
    if (eps != 0) {
      mpz_class t = pk1 * f.expansion.coefficient(n);
      out[n] += (eps > 0) ? t : -t;
    }
    if (n % p2 == 0 && chip2 != 0)
      out[n] += p2k1 * f.expansion.coefficient(n / p2);
  }
  return QExpansion(std::move(out));
}

HeckeReport eigen_report(const FormRecord& f, long long p) {
  QExpansion tf =
      f.half_integral() ? hecke_tp2_half(f, p) : hecke_tp_integral(f, p);
  long long out_prec = tf.prec();
  if (out_prec < 10)
    throw PrecisionExceeded(
        "eigen_report: fewer than 10 comparable indices available");
  long long n0 = -1;
  for (long long n = 0; n < out_prec; ++n)
    if (mpz_sgn(f.expansion.coefficient(n).get_mpz_t()) != 0) {
      n0 = n;
      break;
    }
  if (n0 < 0)
    throw InvalidArgument("eigen_report: form is zero to available precision");

  HeckeReport rep;
  rep.prime = p;
  rep.eigenvalue = mpq_class(tf.coefficient(n0), f.expansion.coefficient(n0));
  rep.eigenvalue.canonicalize();
  rep.verified_upto = out_prec - 1;
  rep.proportional = true;
  const mpz_class& f0 = f.expansion.coefficient(n0);
  const mpz_class& t0 = tf.coefficient(n0);
  for (long long n = 0; n < out_prec; ++n) {
    mpz_class lhs = tf.coefficient(n) * f0;
    mpz_class rhs = t0 * f.expansion.coefficient(n);
    if (lhs != rhs) {
      rep.proportional = false;
      rep.first_violation = n;
      break;
    }
  }
  return rep;
}

}  // namespace bkv
