#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sfcusp/arith.hpp"
#include "sfcusp/errors.hpp"
#include "sfcusp/modforms.hpp"
#include "sfcusp/newform_io.hpp"
#include "sfcusp/qseries.hpp"
#include "sfcusp/rslfun.hpp"
#include "sfcusp/runconfig.hpp"
#include "sfcusp/threshold.hpp"
#include "sfcusp/weights.hpp"

namespace py = pybind11;
using namespace sfcusp;

namespace {

// exact integer coefficients cross the boundary as python ints (via decimal
// strings, so nothing is truncated)
py::object bigint_to_py(const BigInt& v) {
    py::object pyint = py::module_::import("builtins").attr("int");
    return pyint(v.to_string());
}

py::list delta_coefficients_exact(size_t prec) {
    QSeries d = modforms::delta(prec);
    py::list out;
    for (size_t n = 0; n < d.prec(); ++n) out.append(bigint_to_py(d.coefficient(n).num()));
    return out;
}

weights::SmoothWeight make_weight(double beta) {
    weights::SmoothWeight w;
    w.beta = beta;
    return w;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "numerical laboratory for square-free Fourier coefficients of cusp forms";
    m.attr("__version__") = kToolVersion;

    py::register_exception<Error>(m, "SfcuspError");

    // arith
    m.def("mobius", [](uint64_t n) { return arith::mobius(n); }, py::arg("n"));
    m.def("nu", [](uint64_t n) { return arith::nu(n); }, py::arg("n"));
    m.def("squarefree_divisors", [](uint64_t N) { return arith::squarefree_divisors(N); },
          py::arg("N"));
    m.def(
        "squarefree_flags",
        [](uint64_t limit) {
            auto t = arith::squarefree_sieve(limit);
            std::vector<bool> f(t.flags.begin() + 1, t.flags.end());
            return f;
        },
        py::arg("limit"), "square-free indicator for n = 1..limit");
    m.def(
        "divisor_power_sum",
        [](uint64_t n, unsigned w) { return bigint_to_py(arith::divisor_power_sum(n, w)); },
        py::arg("n"), py::arg("w"));

    // modular forms
    m.def("delta_coefficients", &delta_coefficients_exact, py::arg("prec"),
          "exact q-expansion coefficients of the discriminant form");
    m.def(
        "eisenstein_coefficients",
        [](int k, size_t prec) {
            QSeries e = modforms::eisenstein(k, prec);
            py::list out;
            for (size_t n = 0; n < e.prec(); ++n) out.append(bigint_to_py(e.coefficient(n).num()));
            return out;
        },
        py::arg("k"), py::arg("prec"));

    py::class_<modforms::NewformRecord>(m, "NewformRecord")
        .def_readonly("level", &modforms::NewformRecord::level)
        .def_readonly("weight", &modforms::NewformRecord::weight)
        .def_readonly("name", &modforms::NewformRecord::name)
        .def_property_readonly("prec", &modforms::NewformRecord::prec)
        .def("lambda_", [](const modforms::NewformRecord& r, uint64_t n) { return r.lambda(n); },
             py::arg("n"), "arithmetically normalized eigenvalue lambda(n)")
        .def("lambdas",
             [](const modforms::NewformRecord& r) { return r.lambda_values; });

    m.def("level1_newform", &modforms::level1_newform, py::arg("k"), py::arg("prec"));
    m.def("weight24_newforms", &modforms::weight24_newforms, py::arg("prec"));
    m.def("eta_newform", &modforms::builtin_eta_newform, py::arg("N"), py::arg("prec"));
    m.def(
        "eigen_lambdas",
        [](int k, size_t prec, std::vector<uint64_t> probes) {
            auto sp = modforms::level1_basis(k, prec);
            auto nf = modforms::eigenbasis(sp, probes);
            std::vector<std::vector<std::complex<double>>> out;
            for (auto& r : nf) out.push_back(r.lambda_values);
            return out;
        },
        py::arg("k"), py::arg("prec"), py::arg("probes") = std::vector<uint64_t>{2, 3},
        "lambda tables of the level-1 weight-k eigenforms");

    // weights
    m.def(
        "bump", [](double y, double beta) { return weights::bump(y, make_weight(beta)); },
        py::arg("y"), py::arg("beta") = 1.0);
    m.def(
        "mellin",
        [](std::complex<double> s, double beta) {
            auto mv = weights::mellin(make_weight(beta), s);
            return py::make_tuple(mv.value, mv.error_estimate);
        },
        py::arg("s"), py::arg("beta") = 1.0, "Mellin transform of the cutoff: (value, error)");

    // analytic operations
    m.def(
        "direct_weighted_sum",
        [](const modforms::NewformRecord& f, const modforms::NewformRecord& g, double x,
           uint64_t N, double beta) {
            auto r = rslfun::direct_weighted_sum(f, g, make_weight(beta), x, N);
            return py::make_tuple(r.value, r.term_count);
        },
        py::arg("f"), py::arg("g"), py::arg("x"), py::arg("N") = 1, py::arg("beta") = 1.0);
    m.def(
        "contour_sum_oracle",
        [](const modforms::NewformRecord& f, const modforms::NewformRecord& g, double x,
           uint64_t N, double sigma0, double T, uint64_t P, double beta) {
            auto r = rslfun::contour_sum_oracle(f, g, make_weight(beta), x, N, sigma0, T, P);
            return r.value;
        },
        py::arg("f"), py::arg("g"), py::arg("x"), py::arg("N") = 1, py::arg("sigma0") = 2.0,
        py::arg("T") = 400.0, py::arg("P") = 1000, py::arg("beta") = 1.0);
    m.def(
        "c_constant",
        [](const modforms::NewformRecord& f, uint64_t N, uint64_t P, double beta) {
            return rslfun::c_constant(f, make_weight(beta), N, P);
        },
        py::arg("f"), py::arg("N") = 1, py::arg("P") = 100000, py::arg("beta") = 1.0);

    // threshold machinery
    m.def("theorem_bound", &threshold::theorem_bound, py::arg("k"), py::arg("N"), py::arg("eps"));
    m.def("legacy_bound_log", &threshold::legacy_bound_log, py::arg("k"), py::arg("N"),
          py::arg("a0"));
    m.def(
        "min_squarefree_nonzero",
        [](const modforms::NewformRecord& f, uint64_t limit) {
            auto r = threshold::min_squarefree_nonzero(f, limit);
            return r ? py::cast(*r) : py::none().cast<py::object>();
        },
        py::arg("f"), py::arg("limit"));

    // io
    m.def("load_newforms", &newform_io::load_newforms, py::arg("path"),
          py::arg("tolerance") = 1e-8);
    m.def(
        "save_newforms",
        [](const std::vector<modforms::NewformRecord>& recs, const std::string& path) {
            newform_io::save_newforms(recs, path);
        },
        py::arg("records"), py::arg("path"));
}
