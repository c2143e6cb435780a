#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "curvetower/equisig.hpp"
#include "curvetower/infinity.hpp"
#include "curvetower/invariants.hpp"
#include "curvetower/report.hpp"

namespace py = pybind11;
using namespace curvetower;

namespace {

BiPoly parse_arg(const std::string& text, const std::string& ring) {
    return parse_bipoly(text, ring == "Qt" ? CoefRing::Qt : CoefRing::Q);
}

py::dict tower_dict(const Tower& t) {
    py::dict d;
    d["k"] = t.k();
    d["n"] = t.n;
    py::list ws, xis, ms, pp;
    for (int i = 1; i <= t.k(); ++i) {
        ws.append(py::make_tuple(t.a(i), t.b(i)));
        xis.append(t.level(i).xi.str());
        ms.append(t.m_f(i));
    }
    for (const auto& p : t.puiseux) pp.append(py::make_tuple(p.n, p.m));
    d["weights"] = ws;
    d["xi"] = xis;
    d["m_f"] = ms;
    d["puiseux"] = pp;
    py::list As;
    for (long A : t.A) As.append(A);
    d["A"] = As;
    return d;
}

}  // namespace

PYBIND11_MODULE(curvetower, m) {
    m.doc() = "exact analyzer for plane curve singularities";

    py::class_<BiPoly>(m, "Poly")
        .def("__str__", [](const BiPoly& p) { return p.str(); })
        .def("__eq__", [](const BiPoly& a, const BiPoly& b) { return a == b; })
        .def("__add__", [](const BiPoly& a, const BiPoly& b) { return a + b; })
        .def("__sub__", [](const BiPoly& a, const BiPoly& b) { return a - b; })
        .def("__mul__", [](const BiPoly& a, const BiPoly& b) { return a * b; })
        .def("deg_x", &BiPoly::deg_x)
        .def("deg_y", &BiPoly::deg_y)
        .def("deg_t", &BiPoly::deg_t);

    m.def("parse", &parse_arg, py::arg("text"), py::arg("ring") = "Q");

    m.def("approximate_root", [](const BiPoly& f, long a) {
        return approximate_root(f, a).root;
    });

    m.def("analyze", [](const BiPoly& f) {
        Tower t = build_tower(f);
        py::dict d = tower_dict(t);
        ZetaFn z = zeta_function(t);
        d["mu"] = z.milnor;
        d["zeta"] = z.str();
        py::list zf;
        for (const auto& [e, s] : z.factors) zf.append(py::make_tuple(e, s));
        d["zeta_factors"] = zf;
        return d;
    });

    m.def("analyze_json", [](const BiPoly& f, bool with_table) {
        AnalyzeOptions o;
        o.with_table = with_table;
        return analyze_json(f, o);
    }, py::arg("f"), py::arg("with_table") = false);

    m.def("intersect", [](const BiPoly& f, const BiPoly& g) -> py::object {
        Tower t = build_tower(f);
        IntersectionRecord r = intersection_tower(t, g);
        if (r.infinite) return py::none();
        return py::int_(r.value);
    });

    m.def("intersect_oracle", [](const BiPoly& f, const BiPoly& g) {
        return intersection_oracle(f, g);
    });

    m.def("newton_diagram", [](const BiPoly& f) { return ascii_diagram(f); });

    m.def("equising_deformation", [](const BiPoly& f, long mm) {
        auto [fam, chk] = monomial_deformation(f, mm);
        EquisingReport rep = check_family(fam);
        py::dict d;
        d["nm"] = chk.nm;
        d["i_ts"] = chk.i_ts;
        d["lhs"] = chk.lhs;
        d["certified"] = rep.verdict == EquisingReport::Verdict::Equisingular ||
                         rep.verdict == EquisingReport::Verdict::EquisingularK1;
        return d;
    });

    m.def("equising_family", [](const BiPoly& f_qt) {
        Family fam = make_family(f_qt);
        EquisingReport rep = check_family(fam);
        py::dict d;
        d["certified"] = rep.verdict == EquisingReport::Verdict::Equisingular ||
                         rep.verdict == EquisingReport::Verdict::EquisingularK1;
        d["note"] = rep.note;
        if (rep.rhs_finite) d["rhs"] = rep.rhs;
        if (rep.lhs_defined) d["lhs"] = rep.lhs;
        return d;
    });

    m.def("ams_line_test", [](const BiPoly& F) {
        AmsResult r = ams_line_test(F);
        py::dict d;
        d["line"] = r.verdict == AmsResult::Verdict::Line;
        d["shears"] = r.shear_count;
        if (r.verdict == AmsResult::Verdict::NotLine) {
            d["n"] = r.certificate_n;
            d["a1"] = r.certificate_a1;
            d["c1"] = r.certificate_c1;
        }
        return d;
    });

    m.def("classify_low_genus", [](const BiPoly& F) {
        Classification c = classify_low_genus(F);
        py::dict d;
        d["genus"] = c.genus;
        d["classified"] = c.classified;
        d["n"] = c.model_n;
        d["a1"] = c.model_a1;
        d["c1"] = c.model_c1;
        d["note"] = c.note;
        return d;
    });

    m.def("genus_profile", [](const BiPoly& F) {
        GenusProfile g = genus_profile(F);
        py::dict d;
        d["n"] = g.n;
        d["mu_inf"] = g.mu_inf;
        d["genus"] = g.genus;
        d["tower"] = tower_dict(g.tower);
        return d;
    });

    m.def("generate_example", [](const std::vector<long>& a) {
        GeneratedExample g = generate_example(a);
        py::dict d;
        d["F"] = g.F;
        d["n"] = g.n;
        d["mu"] = g.predicted_mu;
        py::list ws;
        for (const auto& P : g.predicted_P) ws.append(py::make_tuple(P.a, P.b));
        d["weights"] = ws;
        return d;
    });
}
