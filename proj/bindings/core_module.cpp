// Python bindings for the main operations. Exact integer coefficients cross
// the boundary as python ints (via decimal strings), so nothing is rounded.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bkv/cli.hpp"
#include "bkv/density.hpp"
#include "bkv/errors.hpp"
#include "bkv/io.hpp"
#include "bkv/satotate.hpp"

namespace py = pybind11;
using namespace bkv;

namespace {

py::int_ to_py(const mpz_class& z) {
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

mpz_class from_py(const py::int_& v) {
  return mpz_class(py::str(v).cast<std::string>(), 10);
}

py::list coeff_list(const QExpansion& q) {
  py::list out;
  for (const auto& c : q.coeffs()) out.append(to_py(c));
  return out;
}

QExpansion qexp_from_list(const py::sequence& seq) {
  std::vector<mpz_class> coeffs;
  coeffs.reserve(seq.size());
  for (auto item : seq) coeffs.push_back(from_py(py::int_(item)));
  return QExpansion(std::move(coeffs));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact q-expansions, Shimura lifts, and sign statistics";

  py::register_exception<InvalidArgument>(m, "InvalidArgumentError",
                                          PyExc_ValueError);
  py::register_exception<PrecisionExceeded>(m, "PrecisionError");
  py::register_exception<ParseError>(m, "ParseFileError");
  py::register_exception<RamanujanViolation>(m, "RamanujanViolationError");
  py::register_exception<ConstructionFailure>(m, "ConstructionError");

  // numtheory
  m.def("sieve_primes", [](long long limit) {
    return sieve_primes(limit).primes;
  });
  m.def("kronecker", &bkv::kronecker);
  m.def("moebius", &bkv::moebius);
  m.def("divisors", &bkv::divisors);
  m.def("is_squarefree", &bkv::is_squarefree);

  // qseries
  py::class_<QExpansion>(m, "QExpansion")
      .def(py::init(&qexp_from_list))
      .def_property_readonly("prec", &QExpansion::prec)
      .def("coefficient",
           [](const QExpansion& q, long long n) { return to_py(q.coefficient(n)); })
      .def("coefficients", &coeff_list)
      .def("nonzero_terms", &QExpansion::nonzero_terms);
  m.def("qexp_add", &bkv::add);
  m.def("qexp_sub", &bkv::sub);
  m.def("qexp_mul", &bkv::mul);
  m.def("qexp_pow", &bkv::pow);
  m.def("qexp_shift", &bkv::shift);
  m.def("qexp_truncate", &bkv::truncate);
  m.def("euler_product", &bkv::euler_product);
  m.def("theta_series", &bkv::theta_series);
  m.def("odd_sigma_series", &bkv::odd_sigma_series);
  m.def("eta_cube", &bkv::eta_cube);

  // forms
  py::class_<FormRecord>(m, "FormRecord")
      .def_readonly("weight2", &FormRecord::weight2)
      .def_readonly("level", &FormRecord::level)
      .def_readonly("char_disc", &FormRecord::char_disc)
      .def_readonly("label", &FormRecord::label)
      .def_readonly("expansion", &FormRecord::expansion)
      .def_property_readonly("half_integral", &FormRecord::half_integral);
  m.def("build_catalog_form", &bkv::build_catalog_form);
  m.def("negate_form", &bkv::negate);
  m.def("hecke_tp_integral", &bkv::hecke_tp_integral);
  m.def("hecke_tp2_half", &bkv::hecke_tp2_half);

  py::class_<HeckeReport>(m, "HeckeReport")
      .def_readonly("prime", &HeckeReport::prime)
      .def_property_readonly("eigenvalue",
                             [](const HeckeReport& r) {
                               return py::make_tuple(
                                   to_py(r.eigenvalue.get_num()),
                                   to_py(r.eigenvalue.get_den()));
                             })
      .def_readonly("verified_upto", &HeckeReport::verified_upto)
      .def_readonly("proportional", &HeckeReport::proportional)
      .def_readonly("first_violation", &HeckeReport::first_violation);
  m.def("eigen_report", &bkv::eigen_report);

  // shimura
  py::class_<LiftRecord>(m, "LiftRecord")
      .def_readonly("source_label", &LiftRecord::source_label)
      .def_readonly("t", &LiftRecord::t)
      .def_property_readonly("a_t",
                             [](const LiftRecord& L) { return to_py(L.a_t); })
      .def_readonly("k", &LiftRecord::k)
      .def_readonly("level", &LiftRecord::level)
      .def_readonly("lifted", &LiftRecord::lifted)
      .def_property_readonly("n_max", &LiftRecord::n_max);
  m.def("chi_tN", &bkv::chi_tN);
  m.def("lift_character", &bkv::lift_character);
  m.def("shimura_lift", &bkv::shimura_lift);
  m.def("lift_via_companion", &bkv::lift_via_companion);
  m.def("inverse_lift", [](const LiftRecord& L, long long n_max) {
    py::list out;
    for (const auto& v : inverse_lift(L, n_max)) out.append(to_py(v));
    return out;
  });
  m.def("check_multiplicativity", &bkv::check_multiplicativity);

  py::class_<NormalizedSample>(m, "NormalizedSample")
      .def_readonly("prime", &NormalizedSample::prime)
      .def_readonly("value", &NormalizedSample::value);
  m.def("normalize_bp", &bkv::normalize_bp);
  m.def("as_form_record", &bkv::as_form_record);

  // satotate
  py::class_<SatoTateSample>(m, "SatoTateSample")
      .def_readonly("entries", &SatoTateSample::entries)
      .def_readonly("sorted_values", &SatoTateSample::sorted_values);
  m.def("make_sample", [](const LiftRecord& L, long long x_max) {
    return make_sample(L, sieve_primes(x_max), x_max);
  });
  m.def("st_measure", &bkv::st_measure);
  m.def("st_cdf", &bkv::st_cdf);
  m.def("interval_density", &bkv::interval_density);
  m.def("discrepancy", &bkv::discrepancy);
  m.def("fit_error_exponent",
        [](const std::vector<std::pair<double, double>>& pts) {
          PowerFit f = fit_error_exponent(pts);
          return py::make_tuple(f.c, f.alpha);
        });

  py::class_<DiscrepancyReport::Row>(m, "DiscrepancyRow")
      .def_readonly("x", &DiscrepancyReport::Row::x)
      .def_readonly("samples", &DiscrepancyReport::Row::samples)
      .def_readonly("d", &DiscrepancyReport::Row::d);
  py::class_<DiscrepancyReport>(m, "DiscrepancyReport")
      .def_readonly("rows", &DiscrepancyReport::rows)
      .def_readonly("fitted_c", &DiscrepancyReport::fitted_c)
      .def_readonly("fitted_alpha", &DiscrepancyReport::fitted_alpha);
  m.def("discrepancy_report",
        [](const SatoTateSample& s, const std::vector<long long>& xs) {
          return discrepancy_report(s, xs);
        });

  // density
  py::class_<SignPartition::Checkpoint>(m, "SignCheckpoint")
      .def_readonly("x", &SignPartition::Checkpoint::x)
      .def_readonly("pi", &SignPartition::Checkpoint::pi)
      .def_readonly("pos", &SignPartition::Checkpoint::pos)
      .def_readonly("neg", &SignPartition::Checkpoint::neg)
      .def_readonly("zero", &SignPartition::Checkpoint::zero);
  py::class_<SignPartition>(m, "SignPartition")
      .def_readonly("t", &SignPartition::t)
      .def_readonly("x_max", &SignPartition::x_max)
      .def_readonly("excluded_primes", &SignPartition::excluded_primes)
      .def_readonly("checkpoints", &SignPartition::checkpoints)
      .def_readonly("prime_signs", &SignPartition::prime_signs);
  m.def("sign_partition", [](const LiftRecord& L, long long x_max,
                             const std::vector<long long>& xs) {
    return sign_partition(L, x_max, xs, sieve_primes(x_max));
  });

  py::class_<SignSeries>(m, "SignSeries")
      .def_readonly("t", &SignSeries::t)
      .def_property_readonly("values",
                             [](const SignSeries& s) {
                               std::vector<int> out(s.values.begin(),
                                                    s.values.end());
                               return out;
                             })
      .def("s", &SignSeries::s)
      .def_property_readonly("n_max", &SignSeries::n_max);
  m.def("sign_series", &bkv::sign_series);

  py::class_<DedekindRow>(m, "DedekindRow")
      .def_readonly("z", &DedekindRow::z)
      .def_readonly("raw", &DedekindRow::raw)
      .def_readonly("tail_completed", &DedekindRow::tail_completed);
  m.def("dedekind_dirichlet_estimate",
        [](const std::vector<uint8_t>& ind, const std::vector<double>& zs) {
          return dedekind_dirichlet_estimate(ind, zs);
        });

  py::class_<NonzeroDensityReport::Row>(m, "NonzeroDensityRow")
      .def_readonly("z", &NonzeroDensityReport::Row::z)
      .def_readonly("nonzero_raw", &NonzeroDensityReport::Row::nonzero_raw)
      .def_readonly("nonzero_tail", &NonzeroDensityReport::Row::nonzero_tail)
      .def_readonly("positive_raw", &NonzeroDensityReport::Row::positive_raw)
      .def_readonly("positive_tail", &NonzeroDensityReport::Row::positive_tail);
  py::class_<NonzeroDensityReport>(m, "NonzeroDensityReport")
      .def_readonly("rows", &NonzeroDensityReport::rows)
      .def_readonly("a1_estimate", &NonzeroDensityReport::a1_estimate);
  m.def("nonzero_density_estimate",
        [](const SignSeries& s, const std::vector<double>& zs) {
          return nonzero_density_estimate(s, zs);
        });

  m.def("dirichlet_partial",
        [](const SignSeries& s, double z) {
          return dirichlet_partial(s.values, z);
        });
  py::class_<EulerProductCheck>(m, "EulerProductCheck")
      .def_readonly("sum", &EulerProductCheck::sum)
      .def_readonly("product", &EulerProductCheck::product)
      .def_readonly("gap", &EulerProductCheck::gap)
      .def_readonly("tail_bound", &EulerProductCheck::tail_bound);
  m.def("euler_product_check",
        [](const SignSeries& s, double z, long long p_max) {
          return euler_product_check(s, z, p_max, sieve_primes(p_max));
        });
  m.def("prime_sum_difference",
        [](const std::vector<long long>& s1, const std::vector<long long>& s2,
           double z) { return prime_sum_difference(s1, s2, z); });
  m.def("zeta_tail", &bkv::zeta_tail);

  // io
  m.def("write_form", &bkv::write_form);
  m.def("read_form", &bkv::read_form);
  m.def("write_lift", &bkv::write_lift);
  m.def("read_lift", &bkv::read_lift);
}
