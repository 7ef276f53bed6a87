#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <morrey/constructions.hpp>
#include <morrey/errors.hpp>
#include <morrey/experiments.hpp>
#include <morrey/geometry.hpp>
#include <morrey/maximal.hpp>
#include <morrey/norms.hpp>
#include <morrey/radial.hpp>

namespace py = pybind11;
using namespace morrey;

namespace
{

py::dict verdict_dict(const NormVerdict &v)
{
    py::dict out;
    out["kind"] = std::string(to_string(v.kind));
    out["value"] = v.is_finite() ? v.value : infinity;
    out["regime"] = std::string(to_string(v.regime));
    out["growth"] = v.growth;
    out["log_growth"] = v.log_growth;
    out["witness"] = py::dict(py::arg("radius") = v.witness.radius, py::arg("center") = v.witness.center,
                              py::arg("level") = v.witness.level);
    return out;
}

py::dict report_dict(const ExperimentReport &r)
{
    py::list checks;
    for (const auto &c : r.checks) {
        checks.append(py::dict(py::arg("name") = c.name, py::arg("kind") = c.kind, py::arg("value") = c.value,
                               py::arg("expected") = c.expected, py::arg("tolerance") = c.tolerance,
                               py::arg("pass") = c.pass));
    }
    py::dict params;
    for (const auto &[k, v] : r.parameters) {
        params[py::str(k)] = v;
    }
    py::dict labels;
    for (const auto &[k, v] : r.labels) {
        labels[py::str(k)] = v;
    }
    py::dict tables;
    for (const auto &t : r.tables) {
        tables[py::str(t.name)] = py::dict(py::arg("columns") = t.columns, py::arg("rows") = t.rows);
    }
    return py::dict(py::arg("id") = r.id, py::arg("title") = r.title, py::arg("parameters") = params,
                    py::arg("labels") = labels, py::arg("checks") = checks, py::arg("tables") = tables,
                    py::arg("notes") = r.notes, py::arg("wall_seconds") = r.wall_seconds,
                    py::arg("pass") = r.passed());
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Morrey norms, weak Morrey quasi-norms and maximal-function probes for radial functions";
    m.attr("__version__") = tool_version;

    py::register_exception<resource_guard_error>(m, "ResourceGuardError", PyExc_MemoryError);
    py::register_exception<quadrature_error>(m, "QuadratureError", PyExc_ArithmeticError);
    py::register_exception<numerical_error>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<PowerSegment>(m, "PowerSegment")
        .def(py::init<double, double, double, double>(), py::arg("lo"), py::arg("hi"), py::arg("coeff"),
             py::arg("exponent"))
        .def_readonly("lo", &PowerSegment::lo)
        .def_readonly("hi", &PowerSegment::hi)
        .def_readonly("coeff", &PowerSegment::coeff)
        .def_readonly("exponent", &PowerSegment::exponent)
        .def("__repr__", [](const PowerSegment &s) {
            return "PowerSegment(" + std::to_string(s.lo) + ", " + std::to_string(s.hi) + ", "
                   + std::to_string(s.coeff) + ", " + std::to_string(s.exponent) + ")";
        });

    py::class_<RadialProfile>(m, "RadialProfile")
        .def(py::init([](const std::vector<std::tuple<double, double, double, double>> &segments, double faithful) {
                 std::vector<PowerSegment> segs;
                 for (const auto &[lo, hi, c, e] : segments) {
                     segs.push_back({lo, hi, c, e});
                 }
                 return RadialProfile(std::move(segs), faithful);
             }),
             py::arg("segments"), py::arg("faithful_radius") = infinity,
             "Segments (lo, hi, coeff, exponent) meaning coeff * s^-exponent on [lo, hi).")
        .def_property_readonly("segments",
                               [](const RadialProfile &p) {
                                   return std::vector<PowerSegment>(p.segments().begin(), p.segments().end());
                               })
        .def_property_readonly("faithful_radius", &RadialProfile::faithful_radius)
        .def_property_readonly("knots", &RadialProfile::knots)
        .def("is_step", &RadialProfile::is_step)
        .def("is_indicator", &RadialProfile::is_indicator)
        .def("__call__", [](const RadialProfile &p, double s) { return evaluate(p, s); })
        .def("__len__", &RadialProfile::size);

    m.def("unit_ball_volume", &unit_ball_volume, py::arg("d"));
    m.def("cap_fraction", &cap_fraction, py::arg("d"), py::arg("cos_theta"));
    m.def("shell_in_ball_fraction", &shell_in_ball_fraction, py::arg("d"), py::arg("t"), py::arg("r"), py::arg("s"));
    m.def("offcenter_mass", &offcenter_mass, py::arg("d"), py::arg("t"), py::arg("r"), py::arg("profile"),
          py::arg("p"), py::arg("rel_tol") = 1e-10);
    m.def("centered_mass", &centered_mass, py::arg("d"), py::arg("profile"), py::arg("p"), py::arg("r"));
    m.def("power_map", &power_map, py::arg("profile"), py::arg("p"));
    m.def("dilate", &dilate, py::arg("profile"), py::arg("factor"));

    m.def("power_function", &power_function, py::arg("d"), py::arg("q"));
    m.def("bounding_profile_g", &bounding_profile_g, py::arg("d"), py::arg("beta"));
    m.def("matched_radii", &matched_radii, py::arg("d"), py::arg("beta"), py::arg("K"));
    m.def(
        "theorem13_function",
        [](int d, double p1, double p2, double q, int K) {
            return theorem13_function(make_theorem13_spec(d, p1, p2, q, K));
        },
        py::arg("d"), py::arg("p1"), py::arg("p2"), py::arg("q"), py::arg("K"));
    m.def("section4_function", &section4_function, py::arg("d"), py::arg("q"), py::arg("epsilon"), py::arg("K"));
    m.def("maximal_probe_family", &maximal_probe_family, py::arg("N"));
    m.def("ball_indicator", &ball_indicator, py::arg("R"), py::arg("value") = 1.0);

    m.def(
        "local_norm",
        [](int d, double p, double q, const RadialProfile &f, double r) { return local_norm({d, p, q}, f, r); },
        py::arg("d"), py::arg("p"), py::arg("q"), py::arg("profile"), py::arg("r"));
    m.def(
        "centered_norm",
        [](int d, double p, double q, const RadialProfile &f) { return verdict_dict(centered_norm({d, p, q}, f)); },
        py::arg("d"), py::arg("p"), py::arg("q"), py::arg("profile"));
    m.def(
        "weak_norm",
        [](int d, double p, double q, const RadialProfile &f) { return verdict_dict(weak_norm({d, p, q}, f)); },
        py::arg("d"), py::arg("p"), py::arg("q"), py::arg("profile"));
    m.def(
        "exact_norm_1d",
        [](double p, double q, const RadialProfile &f) { return verdict_dict(exact_norm_1d({1, p, q}, f)); },
        py::arg("p"), py::arg("q"), py::arg("profile"));
    m.def(
        "offcenter_audit",
        [](int d, double p, double q, const RadialProfile &f, int n_centers, int n_radii, std::uint64_t seed) {
            const auto a = offcenter_audit({d, p, q}, f, n_centers, n_radii, seed);
            return py::dict(py::arg("max_offcenter") = a.max_local, py::arg("center") = a.center,
                            py::arg("radius") = a.radius, py::arg("centered_value") = a.centered_value,
                            py::arg("samples") = a.samples, py::arg("flag") = a.flag);
        },
        py::arg("d"), py::arg("p"), py::arg("q"), py::arg("profile"), py::arg("n_centers") = 32,
        py::arg("n_radii") = 32, py::arg("seed") = 0);
    m.def(
        "growth_exponent_fit",
        [](int d, double p, double q, const RadialProfile &f, double r_lo, double r_hi, int n) {
            const auto fit = growth_exponent_fit({d, p, q}, f, r_lo, r_hi, n);
            return py::dict(py::arg("slope") = fit.slope, py::arg("intercept") = fit.intercept,
                            py::arg("max_residual") = fit.max_residual);
        },
        py::arg("d"), py::arg("p"), py::arg("q"), py::arg("profile"), py::arg("r_lo"), py::arg("r_hi"),
        py::arg("n_samples") = 64);

    m.def(
        "maximal_value",
        [](int d, const RadialProfile &f, double t, bool search) {
            return maximal_value(d, f, t, search ? MaximalMode::search : MaximalMode::certified);
        },
        py::arg("d"), py::arg("profile"), py::arg("t"), py::arg("search") = false);
    m.def(
        "maximal_morrey_lower_bound",
        [](double q, int N) {
            const auto r = maximal_morrey_lower_bound(q, N);
            return py::dict(py::arg("N") = r.N, py::arg("q") = r.q, py::arg("norm_f") = r.norm_f,
                            py::arg("lower_bound_norm_Mf") = r.lower_bound_norm_Mf, py::arg("ratio") = r.ratio);
        },
        py::arg("q"), py::arg("N"));

    m.def(
        "run_criterion",
        [](int index, std::uint64_t seed, bool quick) { return report_dict(run_criterion(index, {seed, quick})); },
        py::arg("index"), py::arg("seed") = 0, py::arg("quick") = false);
    m.attr("criterion_count") = criterion_count;
}
