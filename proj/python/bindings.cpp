#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fraclamb/cli.hpp"
#include "fraclamb/errors.hpp"
#include "fraclamb/forward_verifier.hpp"
#include "fraclamb/fractional_ops.hpp"
#include "fraclamb/io.hpp"
#include "fraclamb/lamb_solver.hpp"
#include "fraclamb/selftest.hpp"
#include "fraclamb/special_functions.hpp"

namespace py = pybind11;
using namespace fraclamb;

namespace {

// Vectorized evaluation: accepts a float or an array of floats.
py::object evaluate(const SmoothFunction& f, py::object x) {
    if (py::isinstance<py::float_>(x) || py::isinstance<py::int_>(x)) return py::float_(f(x.cast<double>()));
    auto in = py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(x);
    if (!in) throw py::type_error("expected a float or an array of floats");
    py::array_t<double> out(in.request().shape);
    const double* src = in.data();
    double* dst = out.mutable_data();
    for (py::ssize_t i = 0; i < in.size(); ++i) dst[i] = f(src[i]);
    return std::move(out);
}

QuadratureConfig config_from_kwargs(const py::kwargs& kw) {
    QuadratureConfig cfg;
    for (auto item : kw) {
        const auto key = item.first.cast<std::string>();
        if (key == "tol") cfg.tol = item.second.cast<double>();
        else if (key == "max_panels") cfg.max_panels = item.second.cast<int>();
        else if (key == "mc_samples") cfg.mc_samples = item.second.cast<std::uint64_t>();
        else if (key == "mc_seed") cfg.mc_seed = item.second.cast<std::uint64_t>();
        else if (key == "cutoff_epsilon") cfg.cutoff_epsilon = item.second.cast<double>();
        else if (key == "numeric_derivative_fallback") cfg.numeric_derivative_fallback = item.second.cast<bool>();
        else throw py::type_error("unknown config option '" + key + "'");
    }
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_fraclamb, m) {
    m.doc() = "Fractional-derivative solvers for Lamb-Bateman type integral equations";

    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<UnsupportedOrderError>(m, "UnsupportedOrderError", error.ptr());
    py::register_exception<NoDecayError>(m, "NoDecayError", error.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", error.ptr());
    py::register_exception<DimensionCapError>(m, "DimensionCapError", error.ptr());
    py::register_exception<NotPositiveDefiniteError>(m, "NotPositiveDefiniteError", error.ptr());
    py::register_exception<ParseError>(m, "ParseError", error.ptr());

    m.def("gamma", [](double p) { return fraclamb::gamma(p); }, py::arg("p"));
    m.def("beta", &beta, py::arg("p"), py::arg("q"));
    m.def("sphere_volume", [](int n) { return sphere_volume(n).value; }, py::arg("n"));

    py::enum_<McScheme>(m, "McScheme").value("plain", McScheme::plain).value("stratified", McScheme::stratified);

    py::class_<QuadratureConfig>(m, "QuadratureConfig")
        .def(py::init<>())
        .def(py::init(&config_from_kwargs))
        .def_readwrite("tol", &QuadratureConfig::tol)
        .def_readwrite("max_panels", &QuadratureConfig::max_panels)
        .def_readwrite("mc_samples", &QuadratureConfig::mc_samples)
        .def_readwrite("mc_seed", &QuadratureConfig::mc_seed)
        .def_readwrite("mc_scheme", &QuadratureConfig::mc_scheme)
        .def_readwrite("cutoff_epsilon", &QuadratureConfig::cutoff_epsilon)
        .def_readwrite("radial_upper", &QuadratureConfig::radial_upper)
        .def_readwrite("lower_cutoff", &QuadratureConfig::lower_cutoff)
        .def_readwrite("numeric_derivative_fallback", &QuadratureConfig::numeric_derivative_fallback)
        .def("validate", &QuadratureConfig::validate);

    py::class_<SmoothFunction>(m, "SmoothFunction")
        .def("__call__", &evaluate, py::arg("x"))
        .def("derivative", &SmoothFunction::derivative, py::arg("k"), py::arg("x"))
        .def("tail_bound", &SmoothFunction::tail_bound, py::arg("upper"))
        .def_property_readonly("derivative_order", &SmoothFunction::derivative_order)
        .def_property_readonly("has_decay", &SmoothFunction::has_decay)
        .def_property_readonly("description", &SmoothFunction::description)
        .def("__repr__", [](const SmoothFunction& f) { return "<SmoothFunction " + f.description() + ">"; });

    m.def("exponential", &exponential, py::arg("lam"));
    m.def("gauss_tail", &gauss_tail, py::arg("lam"), py::arg("c"));
    m.def("shifted_gaussian", &shifted_gaussian, py::arg("sigma"), py::arg("c"));
    m.def("zero_function", &zero_function);
    m.def("parse_function", [](const std::string& s) { return cli::parse_function(s).to_function(); },
          py::arg("selector"));

    py::class_<PosDefMatrix>(m, "PosDefMatrix")
        .def(py::init(&PosDefMatrix::from_rows), py::arg("rows"))
        .def_static("identity", &PosDefMatrix::identity, py::arg("n"))
        .def_property_readonly("dimension", &PosDefMatrix::dimension)
        .def_property_readonly("determinant", &PosDefMatrix::determinant)
        .def_property_readonly("min_eigenvalue_bound", &PosDefMatrix::min_eigenvalue_bound)
        .def("rows", &PosDefMatrix::rows)
        .def("scaled", &PosDefMatrix::scaled, py::arg("c"));

    py::enum_<Variant>(m, "Variant")
        .value("classic", Variant::classic)
        .value("symmetric_ndim", Variant::symmetric_ndim)
        .value("power", Variant::power)
        .value("quadform", Variant::quadform);

    py::class_<ProblemSpec>(m, "ProblemSpec")
        .def_static("classic", &ProblemSpec::classic)
        .def_static("symmetric_ndim", &ProblemSpec::symmetric_ndim, py::arg("n"))
        .def_static("power", &ProblemSpec::power, py::arg("m"))
        .def_static("quadform", &ProblemSpec::quadform, py::arg("A"))
        .def_readonly("variant", &ProblemSpec::variant)
        .def_readonly("n", &ProblemSpec::n)
        .def_readonly("m", &ProblemSpec::m)
        .def("to_json", [](const ProblemSpec& s) { return io::problem_spec_to_json(s); })
        .def_static("from_json", [](const std::string& s) { return io::problem_spec_from_json(s); });

    const auto cfg_arg = py::arg("cfg") = QuadratureConfig{};
    m.def("weyl_integral", &weyl_integral, py::arg("g"), py::arg("mu"), py::arg("x"), cfg_arg);
    m.def(
        "frac_derivative",
        [](const SmoothFunction& f, double nu, double x, const QuadratureConfig& cfg) {
            return frac_derivative(f, nu, x, cfg);
        },
        py::arg("f"), py::arg("nu"), py::arg("x"), cfg_arg);

    m.def("solve_classic", &solve_classic, py::arg("f"), cfg_arg);
    m.def("solve_ndim", &solve_ndim, py::arg("f"), py::arg("n"), cfg_arg);
    m.def("solve_power", &solve_power, py::arg("f"), py::arg("m"), cfg_arg);
    m.def("solve_quadform", &solve_quadform, py::arg("f"), py::arg("A"), cfg_arg);
    m.def("solve", &solve, py::arg("spec"), py::arg("f"), cfg_arg);

    m.def("forward_radial", &forward_radial, py::arg("u"), py::arg("n"), py::arg("x"), cfg_arg);
    m.def("forward_power", &forward_power, py::arg("u"), py::arg("m"), py::arg("x"), cfg_arg);

    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("estimate", &McEstimate::estimate)
        .def_readonly("std_error", &McEstimate::std_error)
        .def_readonly("samples", &McEstimate::samples);
    m.def("forward_montecarlo", &forward_montecarlo, py::arg("u"), py::arg("n"), py::arg("x"), cfg_arg,
          py::arg("stream") = 0);
    m.def("forward_quadform_mc", &forward_quadform_mc, py::arg("u"), py::arg("A"), py::arg("x"), cfg_arg,
          py::arg("stream") = 0);

    py::class_<ResidualRow>(m, "ResidualRow")
        .def_readonly("x", &ResidualRow::x)
        .def_readonly("f", &ResidualRow::f)
        .def_readonly("forward", &ResidualRow::forward)
        .def_readonly("residual", &ResidualRow::residual)
        .def_readonly("std_error", &ResidualRow::std_error);
    py::class_<ResidualReport>(m, "ResidualReport")
        .def_readonly("window_a", &ResidualReport::window_a)
        .def_readonly("window_b", &ResidualReport::window_b)
        .def_readonly("probe_count", &ResidualReport::probe_count)
        .def_readonly("max_abs_residual", &ResidualReport::max_abs_residual)
        .def_readonly("max_rel_residual", &ResidualReport::max_rel_residual)
        .def_readonly("max_rel_std_error", &ResidualReport::max_rel_std_error)
        .def_readonly("monte_carlo", &ResidualReport::monte_carlo)
        .def_readonly("rows", &ResidualReport::rows)
        .def("passes", &ResidualReport::passes, py::arg("threshold"))
        .def("to_json", [](const ResidualReport& r) { return io::report_to_json(r); })
        .def("to_csv", [](const ResidualReport& r) { return io::report_to_csv(r); });
    m.def("verify", &verify, py::arg("spec"), py::arg("f"), py::arg("a"), py::arg("b"), py::arg("probes"), cfg_arg);

    m.def(
        "selftest",
        [](const QuadratureConfig& cfg) {
            const auto report = run_selftest(cfg);
            return py::make_tuple(report.all_passed(), report.to_text());
        },
        cfg_arg, "Runs the invariant suite; returns (all_passed, report_text).");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out;
            std::ostringstream err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line front end in-process; returns (exit_code, stdout, stderr).");
}
