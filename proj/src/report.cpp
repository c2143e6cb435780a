#include "curvetower/report.hpp"

#include <chrono>
#include <sstream>

#include <json.hpp>

#include "curvetower/errors.hpp"
#include "curvetower/newton.hpp"

namespace curvetower {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json weight_json(const WeightVector& P) { return ordered_json::array({P.a, P.b}); }

ordered_json tower_json(const Tower& t) {
    ordered_json j;
    j["k"] = t.k();
    j["n"] = t.n;
    ordered_json ws = ordered_json::array(), xis = ordered_json::array(),
                 ms = ordered_json::array(), As = ordered_json::array();
    for (int i = 1; i <= t.k(); ++i) {
        ws.push_back(weight_json(t.level(i).P));
        xis.push_back(t.level(i).xi.str());
        ms.push_back(std::to_string(t.m_f(i)));
    }
    for (long A : t.A) As.push_back(std::to_string(A));
    j["weights"] = ws;
    j["xi"] = xis;
    j["m_f"] = ms;
    j["A"] = As;
    ordered_json pp = ordered_json::array();
    for (const auto& p : t.puiseux) pp.push_back(ordered_json::array({p.n, p.m}));
    j["puiseux"] = pp;
    return j;
}

ordered_json zeta_json(const ZetaFn& z) {
    ordered_json j;
    ordered_json fs = ordered_json::array();
    for (const auto& [e, s] : z.factors) {
        ordered_json f;
        f["e"] = e;
        f["sign"] = s;
        fs.push_back(f);
    }
    j["factors"] = fs;
    j["mu"] = std::to_string(z.milnor);
    j["degree"] = std::to_string(z.degree());
    return j;
}

}  // namespace

std::string analyze_json(const BiPoly& f, const AnalyzeOptions& opts) {
    auto start = std::chrono::steady_clock::now();
    ordered_json j;
    j["schema_version"] = 1;
    j["input"] = f.str();
    TowerOptions to;
    to.max_retries = opts.max_precision_retries;
    Tower t = build_tower(f, to);
    j["tower"] = tower_json(t);

    ordered_json roots;
    for (long a = 1; a <= t.n; ++a) {
        if (t.n % a != 0) continue;
        roots[std::to_string(a)] = approximate_root(f, a).root.str();
    }
    j["roots"] = roots;

    ZetaFn z = zeta_function(t);
    j["zeta"] = zeta_json(z);

    if (opts.with_table) {
        IntersectionTable tab = tschirn_intersection_table(t);
        ordered_json chain = ordered_json::array();
        for (const auto& [l, jj, v] : tab.chain_pairs)
            chain.push_back(ordered_json::array({l, jj, std::to_string(v)}));
        ordered_json divs = ordered_json::array();
        for (const auto& [a, v] : tab.divisor_rows)
            divs.push_back(ordered_json::array({a, std::to_string(v)}));
        j["intersections"] = ordered_json{{"chain", chain}, {"divisors", divs}};
    }
    if (opts.with_diagram) j["diagram"] = ascii_diagram(f);
    j["warnings"] = ordered_json::array();
    if (opts.timing) {
        auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        j["timing_us"] = us;
    }
    return j.dump(2) + "\n";
}

std::string analyze_text(const BiPoly& f, const AnalyzeOptions& opts) {
    std::ostringstream os;
    TowerOptions to;
    to.max_retries = opts.max_precision_retries;
    Tower t = build_tower(f, to);
    os << "input: " << f.str() << "\n";
    os << "tower: k = " << t.k() << ", n = " << t.n << "\n";
    for (int i = 1; i <= t.k(); ++i)
        os << "  P_" << i << " = " << t.level(i).P.str() << "  xi_" << i << " = "
           << t.level(i).xi.str() << "  m_" << i << "(f) = " << t.m_f(i) << "\n";
    os << "approximate roots:\n";
    for (long a = 1; a <= t.n; ++a) {
        if (t.n % a != 0) continue;
        os << "  H_" << a << " = " << approximate_root(f, a).root.str() << "\n";
    }
    os << "puiseux pairs:";
    for (const auto& p : t.puiseux) os << " (" << p.n << "," << p.m << ")";
    os << "\n";
    ZetaFn z = zeta_function(t);
    os << "zeta = " << z.str() << "\n";
    os << "mu = " << z.milnor << "\n";
    if (opts.with_table) {
        IntersectionTable tab = tschirn_intersection_table(t);
        os << "intersections I(D_a, C):\n";
        for (const auto& [a, v] : tab.divisor_rows) os << "  a = " << a << ": " << v << "\n";
        for (const auto& [l, jj, v] : tab.chain_pairs)
            os << "  I(C_" << l << ", C_" << jj << ") = " << v << "\n";
    }
    if (opts.with_diagram) os << ascii_diagram(f);
    return os.str();
}

std::string roots_text(const BiPoly& f, long index) {
    ApproxRoot r = approximate_root(f, index);
    return r.root.str() + "\n";
}

std::string intersect_text(const BiPoly& f, const BiPoly& g, bool with_oracle) {
    std::ostringstream os;
    Tower t = build_tower(f);
    IntersectionRecord rec = intersection_tower(t, g);
    os << "tower route (" << rec.route << "): ";
    if (rec.infinite)
        os << "+infinity (shared branch)";
    else
        os << rec.value;
    os << ", depth = " << rec.depth << "\n";
    if (with_oracle && !rec.infinite) {
        long o = intersection_oracle(f, g);
        os << "oracle (ord_x Res_y): " << o << "\n";
        os << "agreement: " << (o == rec.value ? "yes" : "NO") << "\n";
    }
    return os.str();
}

std::string equising_text_family(const BiPoly& f_qt) {
    std::ostringstream os;
    Family fam = make_family(f_qt);
    EquisingReport rep = check_family(fam);
    os << "family: " << f_qt.str() << "\n";
    os << "roots t-free:";
    if (rep.roots_t_free.empty()) os << " (none to check, k = 1)";
    for (std::size_t i = 0; i < rep.roots_t_free.size(); ++i)
        os << " h_" << (i + 1) << "=" << (rep.roots_t_free[i] ? "yes" : "NO");
    os << "\n";
    if (rep.rhs_finite) os << "I(C(0), C(s)) = " << rep.rhs << "\n";
    if (rep.lhs_defined) os << "a_k I(C_{k-1}, C(t)) = " << rep.lhs << "\n";
    os << "mu(f_0) = " << rep.mu_base << "; samples:";
    for (const auto& [tau, mu] : rep.mu_samples)
        os << " mu(t=" << tau.str() << ")=" << (mu < 0 ? std::string("degenerate")
                                                       : std::to_string(mu));
    os << "\n";
    switch (rep.verdict) {
        case EquisingReport::Verdict::Equisingular: os << "verdict: equisingular"; break;
        case EquisingReport::Verdict::EquisingularK1:
            os << "verdict: equisingular (k=1 degenerate criterion)";
            break;
        case EquisingReport::Verdict::Inconclusive: os << "verdict: inconclusive"; break;
        case EquisingReport::Verdict::Violated: os << "verdict: NOT certified"; break;
    }
    os << " — " << rep.note << "\n";
    return os.str();
}

std::string equising_text_deform(const BiPoly& f, long m) {
    std::ostringstream os;
    auto [fam, chk] = monomial_deformation(f, m);
    os << "family: " << fam.f.str() << "\n";
    os << "n*m = " << chk.nm << "\n";
    os << "I(C(t), C(s)) = " << chk.i_ts << (chk.prop71_equality ? " (= nm)" : " (!= nm)") << "\n";
    os << "a_k I(C_{k-1}, C(t)) = " << chk.lhs
       << (chk.prop71_inequality ? " <= nm" : " > nm (!)") << "\n";
    os << "2V_2 bound = " << chk.mixed_bound.str() << "\n";
    os << equising_text_family(fam.f);
    return os.str();
}

std::string infinity_text(const BiPoly& F, bool ams, bool classify) {
    std::ostringstream os;
    if (ams) {
        AmsResult r = ams_line_test(F);
        if (r.verdict == AmsResult::Verdict::Line) {
            os << "verdict: LINE (rectified in " << r.shear_count << " shears, "
               << r.rectification.size() << " elementary steps)\n";
        } else {
            os << "verdict: NOT_LINE (n = " << r.certificate_n << ", a_1 = " << r.certificate_a1
               << ", c_1 = " << r.certificate_c1 << ")\n";
        }
        for (const auto& line : r.trace) os << "  " << line << "\n";
        return os.str();
    }
    if (classify) {
        Classification cl = classify_low_genus(F);
        os << "genus = " << cl.genus << "\n";
        if (cl.classified) {
            os << "model: " << cl.note << " (n = " << cl.model_n << ", a_1 = " << cl.model_a1
               << ", c_1 = " << cl.model_c1 << ")\n";
        } else {
            os << "note: " << cl.note << "\n";
        }
        os << "ledger: (a_g) " << (cl.ledger_ag ? "ok" : "FAIL") << ", (b) "
           << (cl.ledger_b ? "ok" : "FAIL") << ", (*) " << (cl.ledger_star ? "ok" : "FAIL")
           << "\n";
        return os.str();
    }
    InfinityCore core = compactify(F);
    os << "n = " << core.n << "\n";
    if (core.is_line) {
        os << "already a line\n";
        return os.str();
    }
    os << "germ at infinity: " << core.f_local.str("u", "v") << "\n";
    os << "a_1 = " << core.a1 << ", b_1 = " << core.b1 << ", c_1 = " << core.c1
       << ", xi_1 = " << core.xi1.str() << "\n";
    GenusProfile gp = genus_profile(F);
    os << "mu_inf = " << gp.mu_inf << ", genus = " << gp.genus
       << (gp.affine_smooth_verified ? "" : " (affine smoothness unverified)") << "\n";
    return os.str();
}

std::string generate_text(const std::vector<long>& weights) {
    std::ostringstream os;
    GeneratedExample g = generate_example(weights);
    os << "F = " << g.F.str() << "\n";
    os << "n = " << g.n << ", predicted mu at infinity = " << g.predicted_mu << "\n";
    os << "predicted weights:";
    for (const auto& P : g.predicted_P) os << " " << P.str();
    os << "\npredicted h_i (germ chart):\n";
    for (std::size_t i = 0; i < g.predicted_h.size(); ++i)
        os << "  h_" << (i + 1) << " = " << g.predicted_h[i].str("u", "v") << "\n";
    return os.str();
}

}  // namespace curvetower
