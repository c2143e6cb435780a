#include "curvetower/equisig.hpp"

#include <algorithm>

#include "curvetower/errors.hpp"
#include "curvetower/newton.hpp"
#include "curvetower/resultant.hpp"

namespace curvetower {

namespace {

// t-free part of the P_1 face of a Q[t] polynomial must carry the whole face.
void check_initial_face_t_free(const BiPoly& f) {
    BiPoly base = f.eval_t(Rat(0));
    NewtonPolygon np = newton_polygon(base);
    if (np.faces.empty()) throw GermError("family base germ has no Newton face");
    const WeightVector P1 = np.faces.front().weight;
    long d = np.faces.front().d;
    for (const auto& [m, c] : f.support()) {
        if (m.t == 0) continue;
        if (P1.eval(m.x, m.y) <= d)
            throw GermError("initial face of the family depends on t (xi_1 not t-free)");
    }
}

}  // namespace

Family make_family(const BiPoly& f_qt) {
    Family fam;
    fam.f = f_qt;
    fam.base = f_qt.eval_t(Rat(0));
    long n = f_qt.deg_y();
    if (n < 2) throw GermError("family degree too small");
    BiPoly lead = f_qt.coeff_of_y(n);
    if (!(lead == BiPoly::constant(Rat(1))))
        throw DomainError("family leading y-coefficient must be the t-free constant 1");
    if (fam.base.deg_y() != n) throw DomainError("family base lost y-degree at t = 0");
    check_initial_face_t_free(f_qt);
    return fam;
}

std::optional<long> generic_intersection(const BiPoly& f, const BiPoly& g) {
    BiPoly res = resultant_y(f, g);
    if (res.is_zero()) return std::nullopt;
    return res.ord_x();
}

EquisingReport check_family(const Family& fam) {
    EquisingReport rep;
    Tower t0 = build_tower(fam.base);
    int k = t0.k();
    long n = t0.n;

    // (ii) t-independence of the approximate roots h_1..h_{k-1}
    long chain = 1;
    for (int i = 1; i <= k - 1; ++i) {
        chain *= t0.a(i);
        BiPoly h_i_t = approximate_root(fam.f, chain).root;
        bool is_t_free = !h_i_t.depends_on_t();
        rep.roots_t_free.push_back(is_t_free);
        if (!is_t_free) rep.all_roots_t_free = false;
    }

    // (iii) generic intersections through Q[t] resultants
    BiPoly f_s = fam.f;  // t plays the generic parameter s against the base
    std::optional<long> rhs = generic_intersection(fam.base, f_s);
    if (!rhs.has_value()) {
        rep.verdict = EquisingReport::Verdict::Inconclusive;
        rep.note = "degenerate: the family shares a component with its base (constant family?)";
        return rep;
    }
    rep.rhs_finite = true;
    rep.rhs = *rhs;

    // mu-constancy spot checks at sampled rational tau
    rep.mu_base = zeta_function(t0).milnor;
    bool mu_constant = true;
    for (const Rat& tau : {Rat(1), Rat(-1), Rat(1, 2)}) {
        BiPoly f_tau = fam.f.eval_t(tau);
        long mu_tau = -1;
        try {
            Tower tt = build_tower(f_tau);
            mu_tau = zeta_function(tt).milnor;
        } catch (const GermError&) {
            mu_tau = -1;  // germ degenerated (reducible / smooth): not equisingular
        }
        rep.mu_samples.emplace_back(tau, mu_tau);
        if (mu_tau != rep.mu_base) mu_constant = false;
    }

    if (k == 1) {
        // C_{k-1} = C_0 is not defined by the construction; degrade to the
        // finiteness check plus the mu samples
        rep.lhs_defined = false;
        rep.condition_61 = rep.rhs_finite && mu_constant;
        if (rep.condition_61 && rep.all_roots_t_free) {
            rep.verdict = EquisingReport::Verdict::EquisingularK1;
            rep.note = "equisingular (k = 1 degenerate criterion)";
        } else {
            rep.verdict = EquisingReport::Verdict::Violated;
            rep.note = "k = 1 criterion failed (mu not constant or intersection degenerate)";
        }
        return rep;
    }

    const BiPoly& h_km1 = t0.level(k - 1).h;
    std::optional<long> lhs_i = generic_intersection(h_km1, fam.f);
    if (!lhs_i.has_value()) {
        rep.verdict = EquisingReport::Verdict::Inconclusive;
        rep.note = "h_{k-1} shares a component with the family";
        return rep;
    }
    rep.lhs_defined = true;
    rep.lhs = t0.a(k) * (*lhs_i);
    rep.condition_61 = rep.lhs <= rep.rhs;
    rep.equality_holds = rep.lhs == rep.rhs;

    if (rep.all_roots_t_free && rep.condition_61) {
        rep.verdict = EquisingReport::Verdict::Equisingular;
        rep.note = rep.equality_holds
                       ? "equisingular; equality in (6.1): the germs do not share the depth-k "
                         "tangential direction"
                       : "equisingular";
        if (!mu_constant)
            throw DomainError("mu sample disagrees although Theorem 6.2 hypotheses hold");
    } else {
        rep.verdict = EquisingReport::Verdict::Violated;
        rep.note = rep.all_roots_t_free ? "condition (6.1) fails" : "approximate roots depend on t";
    }
    return rep;
}

std::pair<Family, DeformationChecks> monomial_deformation(const BiPoly& f, long m) {
    if (f.deg_t() > 0) throw DomainError("monomial_deformation expects f over Q");
    Tower t = build_tower(f);
    long n = t.n;
    long b1A2 = t.b(1) * t.A_of(2);
    if (m <= b1A2) throw GermError("deformation exponent m must exceed b_1 A_2");
    // support inside the triangle (0,0), (0,n), (m,0): n*alpha + m*beta <= n*m
    for (const auto& [mo, c] : f.support())
        if (n * mo.x + m * mo.y > n * m)
            throw GermError("Newton diagram is not the section-7 triangle for this m");

    Family fam;
    fam.f = f + BiPoly::monomial(m, 0, 1, Rat(1));
    fam.base = f;

    DeformationChecks chk;
    chk.nm = n * m;
    std::optional<long> its = generic_intersection(f, fam.f);
    if (!its.has_value()) throw DomainError("deformation resultant vanished");
    chk.i_ts = *its;
    chk.prop71_equality = (chk.i_ts == chk.nm);

    int k = t.k();
    const BiPoly& h_km1 = (k >= 2) ? t.level(k - 1).h : t.level(1).h;
    if (k >= 2) {
        std::optional<long> lhs_i = generic_intersection(h_km1, fam.f);
        if (!lhs_i.has_value()) throw DomainError("deformation h-resultant vanished");
        chk.lhs = t.a(k) * (*lhs_i);
    } else {
        chk.lhs = 0;  // k = 1: no C_{k-1}; the inequality degrades to finiteness
    }
    chk.prop71_inequality = chk.lhs <= chk.nm;

    // Bernshtein route: 2V_2 of the generic-fiber hull against h_{k-1}'s hull,
    // both with the origin adjoined (the epsilon-shifted curves)
    LatticePolygon df = support_hull(fam.f.eval_t(Rat(1)), true);
    LatticePolygon dh = support_hull(h_km1, true);
    chk.mixed_bound = mixed_area(df, dh);
    if (k >= 2 && Rat(chk.lhs) > Rat(t.a(k)) * chk.mixed_bound)
        throw DomainError("Bernshtein bound violated by the computed intersection");
    return {fam, chk};
}

}  // namespace curvetower
