#include <sstream>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "algdyn/errors.hpp"
#include "algdyn/homoclinic.hpp"
#include "algdyn/mahler.hpp"
#include "algdyn/periodic.hpp"
#include "algdyn/unitary.hpp"
#include "cli.hpp"

namespace py = pybind11;
using namespace algdyn;

namespace {

py::object to_fraction(const mpq_class& q)
{
    return py::module_::import("fractions").attr("Fraction")(q.get_str());
}

py::object int_of(const mpz_class& z)
{
    return py::reinterpret_steal<py::object>(PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

py::object from_json(const nlohmann::json& j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

Kernel make_kernel(const std::string& f, const std::string& g, int dim, int grid, int box, int threads)
{
    return fft_kernel(parse_poly(f, dim), parse_poly(g, dim), grid, box, ExecContext{threads});
}

py::array_t<double> kernel_array(const Kernel& k)
{
    std::vector<py::ssize_t> shape(k.dim, 2 * k.box + 1);
    py::array_t<double> a(shape);
    std::copy(k.values.begin(), k.values.end(), a.mutable_data());
    return a;
}

py::dict kernel_dict(const Kernel& k)
{
    py::dict d;
    d["values"] = kernel_array(k);
    d["box"] = k.box;
    d["tail_bound"] = k.tail_bound;
    d["source"] = k.source;
    return d;
}

py::dict shell_dict(const ShellReport& r)
{
    py::dict d;
    d["shells"] = r.shells;
    d["fitted_exponent"] = r.fitted_exponent;
    d["fitted_constant"] = r.fitted_constant;
    d["verdict"] = r.verdict;
    return d;
}

IntegerConfiguration config_from(py::array_t<long, py::array::c_style | py::array::forcecast> v,
                                 const std::vector<std::int64_t>& lo)
{
    if (static_cast<std::size_t>(v.ndim()) != lo.size()) throw InputError("values and lo have different dimensions");
    Exponent hi(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) hi[i] = lo[i] + v.shape(static_cast<py::ssize_t>(i)) - 1;
    IntegerConfiguration c = IntegerConfiguration::zeros(lo, hi);
    std::copy(v.data(), v.data() + c.size(), c.values.begin());
    return c;
}

py::dict torus_dict(const TorusConfiguration& t)
{
    std::vector<py::ssize_t> shape;
    for (std::size_t i = 0; i < t.lo.size(); ++i) shape.push_back(t.hi[i] - t.lo[i] + 1);
    py::array_t<double> vals(shape), lift(shape);
    std::copy(t.values.begin(), t.values.end(), vals.mutable_data());
    std::copy(t.lift.begin(), t.lift.end(), lift.mutable_data());
    py::dict d;
    d["lo"] = t.lo;
    d["values"] = vals;
    d["lift"] = lift;
    d["residual"] = t.residual;
    d["identity_defect"] = t.identity_defect;
    d["residual_bound"] = t.residual_bound;
    return d;
}

}  // namespace

PYBIND11_MODULE(_algdyn, m)
{
    m.doc() = "Periodic points, Mahler measure, unitary varieties and homoclinic kernels";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<CrossCheckError>(m, "CrossCheckError", PyExc_RuntimeError);
    py::register_exception<RegimeError>(m, "RegimeError", PyExc_RuntimeError);
    py::register_exception<PrecisionError>(m, "PrecisionError", PyExc_ArithmeticError);

    m.def("normalize", [](const std::string& f, int dim) { return parse_poly(f, dim).to_string(); }, py::arg("poly"),
          py::arg("dim") = 2, "Canonical form of a Laurent polynomial.");

    m.def(
        "pcount",
        [](const std::string& f, const std::string& lattice, int dim, bool exact, long precision, int threads) {
            PeriodicOptions opt{precision, kDefaultSnfCap, ExecContext{threads}};
            Lattice L = parse_lattice(lattice, dim);
            PeriodicCount pc = p_gamma(parse_poly(f, dim), L, exact, opt);
            py::dict d;
            d["index"] = int_of(pc.index);
            d["gamma_min"] = gamma_min(L);
            d["log_count"] = pc.log_count.mid.to_double();
            d["rate"] = pc.rate.mid.to_double();
            d["torus_dim"] = pc.torus_dim;
            d["exact_count"] = pc.exact_count ? int_of(*pc.exact_count) : py::none();
            return d;
        },
        py::arg("poly"), py::arg("lattice"), py::arg("dim") = 2, py::arg("exact") = false,
        py::arg("precision") = kDefaultPrecision, py::arg("threads") = 1,
        "Periodic component count for one lattice (diag:N, cols:a,b;c,d or hnf:a,b,c).");

    m.def(
        "snf_count",
        [](const std::string& f, const std::string& lattice, int dim) {
            SnfCount s = snf_oracle(parse_poly(f, dim), parse_lattice(lattice, dim));
            return py::make_tuple(int_of(s.exact_count), s.torus_dim);
        },
        py::arg("poly"), py::arg("lattice"), py::arg("dim") = 2, "Exact count and torus dimension by Smith form.");

    m.def(
        "entropy",
        [](const std::string& f, int dim, long precision) {
            Entropy h = entropy(parse_poly(f, dim), precision);
            return py::make_tuple(h.infinite ? py::float_(INFINITY) : py::float_(h.value.mid.to_double()),
                                  h.value.rad);
        },
        py::arg("poly"), py::arg("dim") = 2, py::arg("precision") = kDefaultPrecision,
        "Logarithmic Mahler measure as (value, radius).");

    m.def(
        "unitary",
        [](const std::string& f, long precision) {
            UnitarySolution s = solve_unitary_bivariate(parse_poly(f, 2), UnitaryOptions{precision});
            nlohmann::json pts = nlohmann::json::array();
            for (const auto& p : s.points) pts.push_back(to_json(p));
            return from_json({{"infinite", s.infinite}, {"diagnostic", s.diagnostic}, {"points", pts}});
        },
        py::arg("poly"), py::arg("precision") = kDefaultPrecision, "Zeros of f(u, v) on the unit torus.");

    m.def(
        "verify_point",
        [](const std::string& f, py::object point, int dim, long precision) {
            std::string text = py::module_::import("json").attr("dumps")(point).cast<std::string>();
            return verify_point(parse_poly(f, dim), point_from_json(nlohmann::json::parse(text)), precision);
        },
        py::arg("poly"), py::arg("point"), py::arg("dim"), py::arg("precision") = 256,
        "Checks that f vanishes at a point given in the unitary() JSON layout.");

    m.def("harmonic_value", [](long a, long b) { return to_fraction(harmonic_value(a, b)); }, py::arg("m"),
          py::arg("n"), "Coefficient of 1/(2 - u - v) at (-m, -n).");
    m.def("g3_convolution_exact", [](long a, long b) { return to_fraction(g3_convolution_exact(a, b)); },
          py::arg("m"), py::arg("n"));

    m.def(
        "fft_kernel",
        [](const std::string& f, const std::string& g, int dim, int grid, int box, int threads) {
            return kernel_dict(make_kernel(f, g, dim, grid, box, threads));
        },
        py::arg("poly"), py::arg("g") = "1", py::arg("dim") = 2, py::arg("grid") = 1024, py::arg("box") = 64,
        py::arg("threads") = 1, "Homoclinic kernel on the box |n| <= box; values[i, j] sits at (i - box, j - box).");

    m.def(
        "shell_sums",
        [](const std::string& f, const std::string& g, int dim, int grid, int box, int threads) {
            return shell_dict(shell_sums(make_kernel(f, g, dim, grid, box, threads), box));
        },
        py::arg("poly"), py::arg("g") = "1", py::arg("dim") = 2, py::arg("grid") = 1024, py::arg("box") = 64,
        py::arg("threads") = 1);

    m.def(
        "multiplier_diagnostic",
        [](const std::string& f, const std::string& g, int grid, int box, std::uint64_t seed) {
            LaurentPoly fp = parse_poly(f, 2);
            UnitarySolution s = solve_unitary_bivariate(fp);
            if (s.infinite) throw RegimeError("U(f) is infinite");
            MultiplierDiagnostic r = multiplier_diagnostic(fp, parse_poly(g, 2), s.points, grid, box, {}, seed);
            py::dict d;
            d["order_f"] = r.order_f;
            d["order_g"] = r.order_g;
            d["shells"] = shell_dict(r.shells);
            d["verdict"] = r.verdict;
            return d;
        },
        py::arg("poly"), py::arg("g"), py::arg("grid") = 1024, py::arg("box") = 64, py::arg("seed") = 0);

    m.def(
        "symbolic_cover",
        [](const std::string& f, const std::string& g, py::array_t<long, py::array::c_style | py::array::forcecast> v,
           const std::vector<std::int64_t>& lo, int grid, int box) {
            int dim = static_cast<int>(lo.size());
            LaurentPoly fp = parse_poly(f, dim), gp = parse_poly(g, dim);
            Kernel k = fft_kernel(fp, gp, grid, box);
            return torus_dict(symbolic_cover(fp, gp, k, config_from(v, lo)));
        },
        py::arg("poly"), py::arg("g"), py::arg("values"), py::arg("lo"), py::arg("grid") = 128, py::arg("box") = 32,
        "Cover of an integer configuration given as an array whose first entry sits at lo.");

    m.def(
        "periodic_approx",
        [](const std::string& f, const std::string& g, py::array_t<long, py::array::c_style | py::array::forcecast> v,
           const std::vector<std::int64_t>& lo, const std::string& lattice, double eps, int grid, int box) {
            int dim = static_cast<int>(lo.size());
            LaurentPoly fp = parse_poly(f, dim), gp = parse_poly(g, dim);
            Kernel k = fft_kernel(fp, gp, grid, box);
            PeriodicApprox a = periodic_approx(fp, gp, k, config_from(v, lo), parse_lattice(lattice, dim), eps);
            py::dict d;
            d["periodic"] = torus_dict(a.periodic);
            d["achieved_eps"] = a.achieved_eps;
            d["radius"] = a.radius;
            return d;
        },
        py::arg("poly"), py::arg("g"), py::arg("values"), py::arg("lo"), py::arg("lattice"), py::arg("eps"),
        py::arg("grid") = 128, py::arg("box") = 32);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int rc;
            {
                py::gil_scoped_release release;
                rc = cli::run(args, out, err);
            }
            return py::make_tuple(rc, out.str(), err.str());
        },
        py::arg("args"), "Runs a command of the algdyn tool; returns (exit_code, stdout, stderr).");
}
