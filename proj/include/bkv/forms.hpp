#pragma once

#include <gmpxx.h>

#include <string>

#include "bkv/qseries.hpp"

namespace bkv {

// A modular form with exact integer q-expansion. weight2 stores twice the
// weight so half-integral weights stay integral: weight2 odd means weight
// (weight2)/2 = k + 1/2 with k = (weight2-1)/2, and then 4 | level. The
// quadratic character is chi(.) = kronecker(char_disc, .).
struct FormRecord {
  int weight2 = 0;
  long long level = 1;
  long long char_disc = 1;
  QExpansion expansion;
  std::string label;

  bool half_integral() const { return weight2 % 2 != 0; }
  // k with weight = k + 1/2 (half-integral forms only).
  int k_half() const { return (weight2 - 1) / 2; }
  // integral weight (even weight2 only).
  int weight() const { return weight2 / 2; }
  int chi(long long d) const;
};

// Throws InvalidArgument if the record violates the structural invariants.
void validate(const FormRecord& f);

FormRecord negate(const FormRecord& f);

// Catalog: "delta" (weight 12, level 1) and "kz13_2" (weight 13/2, level 4,
// Kohnen plus space, normalized a(1) = 1). prec >= 20.
FormRecord build_catalog_form(const std::string& label, long long prec);

// T_p on an integral-weight form, p prime not dividing the level:
// n-th output coefficient A(pn) + chi(p) p^{weight-1} A(n/p) (second term
// only when p | n). Output precision floor(prec/p).
QExpansion hecke_tp_integral(const FormRecord& F, long long p);

// T_{p^2} on a half-integral form, p prime not dividing the level:
// a(p^2 n) + chi(p) kronecker((-1)^k n, p) p^{k-1} a(n)
//          + chi(p^2) p^{2k-1} a(n/p^2)  (last term only when p^2 | n).
// Output precision floor(prec/p^2).
QExpansion hecke_tp2_half(const FormRecord& f, long long p);

struct HeckeReport {
  long long prime = 0;
  mpq_class eigenvalue;
  long long verified_upto = 0;
  bool proportional = false;
  long long first_violation = -1;  // -1 when proportional
};

// Applies the parity-appropriate Hecke operator and checks exact
// proportionality by cross-multiplication against the first nonzero
// coefficient of f.
HeckeReport eigen_report(const FormRecord& f, long long p);

}  // namespace bkv
