#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hciz/character_series.hpp"
#include "hciz/coefficient_cache.hpp"
#include "hciz/dispersionless.hpp"
#include "hciz/exact_eval.hpp"
#include "hciz/free_cumulants.hpp"
#include "hciz/haar_mc.hpp"
#include "hciz/planar_enum.hpp"
#include "hciz/toda.hpp"

namespace py = pybind11;
using namespace hciz;

namespace {

// polynomials cross the boundary as {canonical monomial key: "p/q"} dicts
py::dict poly_to_dict(const QPoly& p) {
    py::dict d;
    for (const auto& [m, c] : p.terms()) d[py::str(m.str())] = rational_str(c);
    return d;
}

std::vector<std::vector<std::complex<double>>> matrix_to_lists(const Eigen::MatrixXcd& u) {
    std::vector<std::vector<std::complex<double>>> out(u.rows());
    for (Eigen::Index i = 0; i < u.rows(); ++i)
        for (Eigen::Index j = 0; j < u.cols(); ++j) out[i].push_back(u(i, j));
    return out;
}

}  // namespace

PYBIND11_MODULE(_hciz, m) {
    m.doc() = "Exact unitary-group integrals of HCIZ type and their large-N expansion";

    py::register_exception<domain_error>(m, "DomainError");
    py::register_exception<precision_error>(m, "PrecisionError");
    py::register_exception<cache_error>(m, "CacheError");
    py::register_exception<crosscheck_error>(m, "CrossCheckError");

    py::class_<EvalResult>(m, "EvalResult")
        .def_readonly("value", &EvalResult::value)
        .def_readonly("rel_error", &EvalResult::rel_error)
        .def_readonly("bits_used", &EvalResult::bits_used)
        .def_readonly("confluent", &EvalResult::confluent)
        .def("__repr__", [](const EvalResult& r) {
            return "EvalResult(value=" + std::to_string(r.value) + ")";
        });

    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("mean", &McEstimate::mean)
        .def_readonly("std_error", &McEstimate::std_error)
        .def_readonly("samples", &McEstimate::samples)
        .def_readonly("seed", &McEstimate::seed);

    m.def(
        "eval_unitary_integral",
        [](const std::vector<double>& a, const std::vector<double>& b, double s, int bits,
           double target) {
            PrecisionPolicy p;
            p.bits = bits;
            p.target_rel_error = target;
            return eval_unitary_integral(SpectralData{a, b, s}, p);
        },
        py::arg("a"), py::arg("b"), py::arg("s"), py::arg("bits") = 128,
        py::arg("target_rel_error") = 1e-12);

    m.def(
        "eval_rectangular",
        [](int n1, int n2, const std::vector<double>& a, const std::vector<double>& b, double s,
           int bits) {
            PrecisionPolicy p;
            p.bits = bits;
            return eval_rectangular(RectangularData{n1, n2, a, b, s}, p);
        },
        py::arg("n1"), py::arg("n2"), py::arg("a"), py::arg("b"), py::arg("s"),
        py::arg("bits") = 128);

    m.def(
        "eval_chain",
        [](const std::vector<int>& sizes, const std::vector<double>& a,
           const std::vector<double>& b, double s, int bits) {
            PrecisionPolicy p;
            p.bits = bits;
            return eval_chain(ChainData{sizes, a, b, s}, p);
        },
        py::arg("sizes"), py::arg("a"), py::arg("b"), py::arg("s"), py::arg("bits") = 128);

    m.def(
        "free_energy",
        [](int order, const std::string& method, int threads) {
            EnumOptions opts;
            opts.threads = threads;
            std::vector<QPoly> F =
                method == "oracle" ? free_energy_oracle(order) : free_energy_enum(order, opts);
            py::list out;
            for (const QPoly& f : F) out.append(poly_to_dict(f));
            return out;
        },
        py::arg("order"), py::arg("method") = "enum", py::arg("threads") = 1,
        "F_1..F_order as {monomial: rational-string} dicts");

    m.def(
        "mc_estimate",
        [](const std::vector<double>& a, const std::vector<double>& b, double s,
           std::int64_t samples, std::uint64_t seed, int threads) {
            return mc_estimate(SpectralData{a, b, s}, samples, seed, threads);
        },
        py::arg("a"), py::arg("b"), py::arg("s"), py::arg("samples") = 100000,
        py::arg("seed") = 42, py::arg("threads") = 1);

    m.def(
        "sample_haar",
        [](int n, std::uint64_t seed) {
            std::mt19937_64 rng = derived_stream(seed, 0);
            return matrix_to_lists(sample_haar(n, rng));
        },
        py::arg("n"), py::arg("seed") = 42);

    m.def(
        "free_cumulants",
        [](const std::vector<std::string>& moments, int q) {
            std::vector<Rational> tb;
            for (const std::string& s : moments) tb.push_back(rational_from_string(s));
            tb.resize(std::max<size_t>(tb.size(), static_cast<size_t>(q)), Rational(0));
            std::vector<std::string> out;
            for (const Rational& phi : moments_to_free_cumulants(tb, q))
                out.push_back(rational_str(phi));
            return out;
        },
        py::arg("moments"), py::arg("q"),
        "free cumulants phibar_1..phibar_q from moments given as rational strings");

    m.def(
        "w_coefficient",
        [](const std::vector<int>& alpha_partition) {
            return rational_str(
                w_coefficient(ClassVector::from_partition(Partition{alpha_partition})));
        },
        py::arg("alpha"), "W coefficient of the class given as a partition, e.g. [2,1,1]");

    m.def(
        "toda_residual_is_zero",
        [](int n, int order, const std::map<int, std::string>& t,
           const std::map<int, std::string>& tbar) {
            TodaTimes tm;
            for (const auto& [q, v] : t) tm.t[q] = rational_from_string(v);
            for (const auto& [q, v] : tbar) tm.tbar[q] = rational_from_string(v);
            return toda_check(n, tm, order).is_zero_series();
        },
        py::arg("n"), py::arg("order") = 6, py::arg("t") = std::map<int, std::string>{},
        py::arg("tbar") = std::map<int, std::string>{});

    m.def(
        "diagonal_series",
        [](int n, int order) {
            DiagonalSeries d = diagonal_series(n, order);
            std::vector<std::string> psi, F;
            for (const Rational& c : d.psi) psi.push_back(rational_str(c));
            for (const Rational& c : d.F) F.push_back(rational_str(c));
            return py::make_tuple(psi, F);
        },
        py::arg("n"), py::arg("order"));

    m.attr("__version__") = HCIZ_VERSION;
}
