// Python bindings for the main operations.
#include "torusgreen/acceptance.hpp"
#include "torusgreen/disks.hpp"
#include "torusgreen/elliptic.hpp"
#include "torusgreen/errors.hpp"
#include "torusgreen/gle.hpp"
#include "torusgreen/green.hpp"
#include "torusgreen/hitchin.hpp"
#include "torusgreen/lattice.hpp"

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace torusgreen;

namespace {

TorusPoint as_point(const py::object& p, const LatticeData& L) {
    if (py::isinstance<TorusPoint>(p)) return p.cast<TorusPoint>();
    return TorusPoint::from_complex(p.cast<cplx>(), L);
}

py::dict census_record(const CriticalPoint& c) {
    py::dict d;
    d["r"] = c.a.r();
    d["s"] = c.a.s();
    d["trivial"] = c.trivial;
    d["hessian_det"] = c.hessian_det;
    d["kind"] = kind_name(c.kind);
    d["degree"] = c.degree;
    d["residual"] = c.residual;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Green functions, critical points and Lame discriminants on rectangular tori";

    auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PoleError>(m, "PoleError", domain.ptr());
    py::register_exception<CornerError>(m, "CornerError", domain.ptr());
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<CensusIncomplete>(m, "CensusIncomplete", numerical.ptr());
    py::register_exception<InconsistencyError>(m, "InconsistencyError", numerical.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", numerical.ptr());

    py::class_<LatticeData>(m, "Lattice")
        .def(py::init(&compute_invariants), py::arg("b"))
        .def_readonly("b", &LatticeData::b)
        .def_readonly("tau", &LatticeData::tau)
        .def_readonly("e1", &LatticeData::e1)
        .def_readonly("e2", &LatticeData::e2)
        .def_readonly("e3", &LatticeData::e3)
        .def_readonly("g2", &LatticeData::g2)
        .def_readonly("g3", &LatticeData::g3)
        .def_readonly("eta1", &LatticeData::eta1)
        .def_readonly("eta2", &LatticeData::eta2)
        .def("legendre_residual", &legendre_residual)
        .def("cubic_residual", &cubic_residual)
        .def("__repr__", [](const LatticeData& L) { return "Lattice(b=" + std::to_string(L.b) + ")"; });

    py::class_<TorusPoint>(m, "TorusPoint")
        .def(py::init<double, double>(), py::arg("r"), py::arg("s"))
        .def_property_readonly("r", &TorusPoint::r)
        .def_property_readonly("s", &TorusPoint::s)
        .def("z", &TorusPoint::z)
        .def("__repr__", [](const TorusPoint& p) {
            return "TorusPoint(" + std::to_string(p.r()) + ", " + std::to_string(p.s()) + ")";
        });

    m.def("wp", py::overload_cast<cplx, const LatticeData&>(&wp), py::arg("z"), py::arg("lattice"));
    m.def("wp_prime", py::overload_cast<cplx, const LatticeData&>(&wp_prime), py::arg("z"), py::arg("lattice"));
    m.def("zeta", py::overload_cast<cplx, const LatticeData&>(&zeta), py::arg("z"), py::arg("lattice"));

    m.def(
        "census",
        [](const py::object& p, const LatticeData& L, int grid_n) {
            CensusOptions opt;
            opt.grid_n = grid_n;
            const TorusPoint pt = as_point(p, L);
            Census c;
            {
                py::gil_scoped_release nogil;
                c = census(pt, L, opt);
            }
            py::list out;
            for (const auto& cp : c.points) out.append(census_record(cp));
            return out;
        },
        py::arg("p"), py::arg("lattice"), py::arg("grid_n") = 48,
        "Critical points of G_p as dicts with r, s, trivial, hessian_det, kind, degree, residual.");

    m.def(
        "thresholds",
        [](const LatticeData& L) {
            const RegionThresholds t = thresholds(L);
            py::dict d;
            d["d"] = t.d;
            d["landmarks"] = t.landmarks;
            return d;
        },
        py::arg("lattice"));

    m.def(
        "disks",
        [](const LatticeData& L) {
            py::list out;
            for (const auto& d : disks(L)) out.append(py::make_tuple(d.k, d.center, d.radius));
            return out;
        },
        py::arg("lattice"), "List of (k, center, radius).");

    m.def(
        "classify_region", [](cplx w, const LatticeData& L) { return std::string(region_name(classify_region(w, L))); },
        py::arg("w"), py::arg("lattice"));

    m.def(
        "accessory_corners", [](const py::object& p, const LatticeData& L) { return accessory_corners(as_point(p, L), L); },
        py::arg("p"), py::arg("lattice"));
    m.def(
        "discriminants",
        [](cplx A, const py::object& p, const LatticeData& L) { return discriminants(A, as_point(p, L), L); },
        py::arg("A"), py::arg("p"), py::arg("lattice"));
    m.def(
        "discriminant_ode",
        [](cplx A, const py::object& p, int j, const LatticeData& L) {
            return discriminant_ode(A, as_point(p, L), j, L);
        },
        py::arg("A"), py::arg("p"), py::arg("j"), py::arg("lattice"));

    m.def("hitchin_wp", &hitchin_wp, py::arg("r"), py::arg("s"), py::arg("lattice"));

    m.def(
        "degenerate_scan",
        [](const LatticeData& L, int grid_n) {
            std::vector<DegenerateSample> v;
            {
                py::gil_scoped_release nogil;
                v = degenerate_scan(L, grid_n);
            }
            py::list out;
            for (const auto& s : v) {
                py::dict d;
                d["wp"] = s.wp_p;
                d["region"] = region_name(s.region);
                d["census_size"] = s.census_size;
                d["min_abs_hessian"] = s.min_abs_hessian;
                d["source"] = s.source;
                d["r"] = s.r;
                d["s"] = s.s;
                d["ok"] = s.ok;
                out.append(d);
            }
            return out;
        },
        py::arg("lattice"), py::arg("grid_n") = 16);

    m.def(
        "run_acceptance",
        [](const std::vector<int>& ids) {
            std::vector<CriterionResult> res;
            {
                py::gil_scoped_release nogil;
                res = run_acceptance(ids);
            }
            py::list out;
            for (const auto& r : res) {
                py::dict d;
                d["id"] = r.id;
                d["title"] = r.title;
                d["pass"] = r.pass;
                d["detail"] = r.detail;
                d["seconds"] = r.seconds;
                out.append(d);
            }
            return out;
        },
        py::arg("ids") = std::vector<int>{});
}
