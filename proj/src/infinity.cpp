#include "curvetower/infinity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "curvetower/errors.hpp"
#include "curvetower/newton.hpp"
#include "curvetower/resultant.hpp"

namespace curvetower {

namespace {

BiPoly subst_linear(const BiPoly& F, const Rat& a00, const Rat& a01, const Rat& c0,
                    const Rat& a10, const Rat& a11, const Rat& c1) {
    BiPoly px = BiPoly::monomial(1, 0, 0, a00) + BiPoly::monomial(0, 1, 0, a01) +
                BiPoly::constant(c0);
    BiPoly py = BiPoly::monomial(1, 0, 0, a10) + BiPoly::monomial(0, 1, 0, a11) +
                BiPoly::constant(c1);
    return F.subst(px, py);
}

}  // namespace

BiPoly apply_step(const AutoStep& s, const BiPoly& F) {
    if (std::holds_alternative<ShearStep>(s)) {
        const BiPoly& B = std::get<ShearStep>(s).B;
        // step^{-1}: (x, y) -> (x + B(y), y)
        BiPoly px = BiPoly::variable_x() + B;
        return F.subst(px, BiPoly::variable_y());
    }
    if (std::holds_alternative<SwapStep>(s)) return F.swap_xy();
    const AffineStep& a = std::get<AffineStep>(s);
    Rat det = a.m00 * a.m11 - a.m01 * a.m10;
    if (det.is_zero()) throw DomainError("affine step not invertible");
    // inverse map: (x, y) -> M^{-1} ((x, y) - c)
    Rat i00 = a.m11 / det, i01 = -a.m01 / det, i10 = -a.m10 / det, i11 = a.m00 / det;
    Rat b0 = -(i00 * a.c0 + i01 * a.c1), b1 = -(i10 * a.c0 + i11 * a.c1);
    return subst_linear(F, i00, i01, b0, i10, i11, b1);
}

BiPoly AutoSeq::apply(const BiPoly& F) const {
    BiPoly cur = F;
    for (const auto& s : steps) cur = apply_step(s, cur);
    return cur;
}

AutoSeq AutoSeq::inverse() const {
    AutoSeq inv;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        if (std::holds_alternative<ShearStep>(*it)) {
            inv.push(ShearStep{-std::get<ShearStep>(*it).B});
        } else if (std::holds_alternative<SwapStep>(*it)) {
            inv.push(SwapStep{});
        } else {
            const AffineStep& a = std::get<AffineStep>(*it);
            Rat det = a.m00 * a.m11 - a.m01 * a.m10;
            Rat i00 = a.m11 / det, i01 = -a.m01 / det, i10 = -a.m10 / det, i11 = a.m00 / det;
            Rat b0 = -(i00 * a.c0 + i01 * a.c1), b1 = -(i10 * a.c0 + i11 * a.c1);
            inv.push(AffineStep{i00, i01, i10, i11, b0, b1});
        }
    }
    return inv;
}

InfinityCore compactify(const BiPoly& F_in, const Rat& t_shift) {
    if (F_in.deg_t() > 0) throw DomainError("compactify expects coefficients in Q");
    BiPoly F = F_in;
    if (!t_shift.is_zero()) F -= BiPoly::constant(t_shift);
    long n = F.deg_total();
    if (n < 1) throw DomainError("compactify expects a nonconstant polynomial");
    InfinityCore core;
    core.n = n;

    // top form must be c * (alpha x + beta y)^n over Q; normalize L -> y
    std::vector<Rat> top(static_cast<std::size_t>(n + 1), Rat(0));  // coeff of x^i y^(n-i)
    for (const auto& [m, c] : F.support())
        if (m.x + m.y == n) top[static_cast<std::size_t>(m.x)] = c;

    long lo = 0, hi = n;
    while (lo <= n && top[static_cast<std::size_t>(lo)].is_zero()) ++lo;
    while (hi >= 0 && top[static_cast<std::size_t>(hi)].is_zero()) --hi;
    AutoSeq norm;
    BiPoly G = F;
    if (lo == hi && lo == n) {
        // pure x^n: swap the variables
        norm.push(SwapStep{});
        G = apply_step(norm.steps.back(), G);
    } else if (lo == hi && lo == 0) {
        // already c * y^n
    } else {
        // mixed: L = alpha x + beta y with both ends present
        if (top[0].is_zero() || top[static_cast<std::size_t>(n)].is_zero())
            throw GermError("top form is not a pure power of a Q-linear form");
        Rat c0 = top[0];
        Rat lambda = top[1] / (Rat(n) * c0);  // alpha / beta
        // verify c0 * (lambda x + y)^n == top form
        for (long i = 0; i <= n; ++i) {
            Rat expect = c0 * rat_binomial(Rat(n), i) * lambda.pow(i);
            if (top[static_cast<std::size_t>(i)] != expect)
                throw GermError("top form is not a pure power of a Q-linear form");
        }
        // map (x, y) -> (x, lambda x + y): sends lambda x + y to the new y
        AffineStep st{Rat(1), Rat(0), lambda, Rat(1), Rat(0), Rat(0)};
        norm.push(st);
        G = apply_step(norm.steps.back(), G);
    }
    // scale monic in the top form
    {
        Rat c = G.coeff(0, n, 0);
        if (c.is_zero()) throw DomainError("normalization failed to isolate y^n");
        if (!c.is_one()) G = G.scaled(c.inv());
    }
    core.F_normalized = G;
    core.normalization = norm;

    // f(u, v) = u^n G(1/u, v/u): monomial x^i y^j -> u^(n-i-j) v^j
    BiPoly f;
    for (const auto& [m, c] : G.support())
        f += BiPoly::monomial(n - m.x - m.y, m.y, 0, c);
    core.f_local = f;

    if (n == 1) {
        core.is_line = true;
        return core;
    }
    NewtonPolygon np = newton_polygon(f);
    if (!(np.vertices.front() == LPoint{0, n}))
        throw GermError("germ at infinity does not have full multiplicity data");
    if (np.faces.empty()) throw GermError("germ at infinity is a pure power");
    FaceRoot fr = single_root_face(np.faces.front().weight,
                                   weight_data(np.faces.front().weight, f).second);
    if (fr.r != 0 || fr.s != 0 || !fr.c.is_one())
        throw GermError("germ at infinity is reducible (face has a prefactor)");
    core.a1 = fr.weight.a;
    core.b1 = fr.weight.b;
    core.c1 = core.a1 - core.b1;
    core.xi1 = fr.xi;
    if (core.c1 < 1)
        throw GermError("b_1 >= a_1 at infinity: not a one-place compactification");
    return core;
}

std::pair<BiPoly, BiPoly> barycentric_shear(const BiPoly& F) {
    long d = F.deg_x();
    if (d < 1) throw DomainError("barycentric shear needs x-dependence");
    BiPoly Ad = F.coeff_of_x(d);
    if (!(Ad.term_count() == 1 && Ad.deg_y() == 0))
        throw GermError("leading x-coefficient not constant: barycenter NOT_APPLICABLE");
    Rat lead = Ad.coeff(0, 0, 0);
    BiPoly Adm1 = F.coeff_of_x(d - 1);
    BiPoly B = Adm1.scaled((Rat(d) * lead).inv()).scaled(Rat(-1));
    if (B.deg_x() > 0) throw DomainError("barycenter depends on x");
    BiPoly Fp = F.subst(BiPoly::variable_x() + B, BiPoly::variable_y());
    return {B, Fp};
}

AmsResult ams_line_test(const BiPoly& F_in) {
    AmsResult res;
    BiPoly F = F_in;
    long n0 = std::max(F.deg_total(), 1L);
    long max_shears = static_cast<long>(std::ceil(std::log2(static_cast<double>(n0)))) + 1;
    int shears = 0;
    while (true) {
        InfinityCore core = compactify(F);
        for (const auto& s : core.normalization.steps) res.rectification.push(s);
        F = core.F_normalized;
        if (core.is_line || F.deg_total() == 1) {
            res.verdict = AmsResult::Verdict::Line;
            res.final_degree = F.deg_total();
            res.shear_count = shears;
            res.trace.push_back("degree 1 reached");
            return res;
        }
        std::ostringstream os;
        os << "n=" << core.n << " a1=" << core.a1 << " b1=" << core.b1 << " c1=" << core.c1;
        res.trace.push_back(os.str());
        if (core.c1 >= 2) {
            res.verdict = AmsResult::Verdict::NotLine;
            res.certificate_n = core.n;
            res.certificate_a1 = core.a1;
            res.certificate_c1 = core.c1;
            res.final_degree = core.n;
            res.shear_count = shears;
            return res;
        }
        // c1 = 1: barycentric shear strictly reduces the degree
        auto [B, Fp] = barycentric_shear(F);
        if (Fp.deg_total() >= F.deg_total())
            throw DomainError("barycentric shear failed to reduce the degree");
        res.rectification.push(ShearStep{B});
        F = Fp;
        ++shears;
        if (shears > max_shears + 1)
            throw DomainError("shear loop exceeded the log2 bound");
    }
}

bool weight_constraints_check(const Tower& t) {
    long a_prev = 1;
    for (int i = 1; i <= t.k(); ++i) {
        if (t.b(i) != a_prev * t.a(i) - 1) return false;
        a_prev = t.a(i);
    }
    return true;
}

GenusProfile genus_profile(const BiPoly& F) {
    GenusProfile gp;
    InfinityCore core = compactify(F);
    gp.n = core.n;
    if (core.is_line) {
        gp.genus = 0;
        gp.affine_smooth_verified = true;
        return gp;
    }
    // affine smoothness: F, F_x, F_y with no common zero, certified when the
    // two elimination resultants share no root
    const BiPoly& G = core.F_normalized;
    BiPoly Fx = G.derivative_x(), Fy = G.derivative_y();
    bool verified = false;
    if (!Fx.is_zero() && !Fy.is_zero()) {
        BiPoly r1 = resultant_y(G, Fx);
        BiPoly r2 = resultant_y(G, Fy);
        if (!r1.is_zero() && !r2.is_zero()) {
            BiPoly g = gcd_univariate_x(r1, r2);
            verified = (g.deg_x() == 0);
        }
    } else if (Fx.is_zero() && !Fy.is_zero()) {
        // F depends on y alone; singularities need Fy = 0 = F
        verified = resultant_y(G, Fy).is_zero() ? false : true;
    }
    gp.affine_smooth_verified = verified;

    gp.tower = build_tower(core.f_local);
    gp.mu_inf = zeta_function(gp.tower).milnor;
    long num = (gp.n - 1) * (gp.n - 2) - gp.mu_inf;
    if (num < 0 || num % 2 != 0) throw DomainError("genus formula produced a non-integer");
    gp.genus = num / 2;
    return gp;
}

Classification classify_low_genus(const BiPoly& F_in) {
    Classification cl;
    BiPoly F = F_in;
    // shear while c_1 = 1, per the Theorem 8.7 reduction
    int shears = 0;
    while (true) {
        InfinityCore core = compactify(F);
        F = core.F_normalized;
        if (core.is_line) {
            cl.genus = 0;
            cl.note = "genus 0: curve rectifies to a line (see the line test)";
            return cl;
        }
        if (core.c1 >= 2) break;
        auto [B, Fp] = barycentric_shear(F);
        F = Fp;
        ++shears;
    }
    cl.shears_applied = shears;
    cl.reduced_model = F;

    GenusProfile gp = genus_profile(F);
    cl.genus = gp.genus;
    const Tower& t = gp.tower;
    cl.tower_k = t.k();
    long A1 = t.A_of(1);
    long a1 = t.a(1), c1 = a1 - t.b(1);
    cl.model_n = gp.n;
    cl.model_a1 = a1;
    cl.model_c1 = c1;

    // ledger (a_g): sum (A_i - 1) b_i A_{i+1} = (A_1 - 1)^2 - 2g
    long lhs_ag = 0;
    for (int i = 1; i <= t.k(); ++i) lhs_ag += (t.A_of(i) - 1) * t.b(i) * t.A_of(i + 1);
    cl.ledger_ag = (lhs_ag == (A1 - 1) * (A1 - 1) - 2 * cl.genus);
    // ledger (b): sum a_i b_i A_{i+1}^2 <= A_1^2
    long lhs_b = 0;
    for (int i = 1; i <= t.k(); ++i)
        lhs_b += t.a(i) * t.b(i) * t.A_of(i + 1) * t.A_of(i + 1);
    cl.ledger_b = (lhs_b <= A1 * A1);
    // ledger (*): A_2 <= (2g - 1) / ((a_1 - 1)(c_1 - 1) - 1) when defined
    long denom = (a1 - 1) * (c1 - 1) - 1;
    cl.ledger_star = denom <= 0 || t.A_of(2) * denom <= 2 * cl.genus - 1;

    if (cl.genus == 1) {
        cl.classified = (t.k() == 1 && a1 == 3 && c1 == 2 && gp.n == 3);
        cl.note = cl.classified ? "smooth cubic, tangency order 3 at infinity"
                                : "genus 1 but model checks failed";
    } else if (cl.genus == 2) {
        cl.classified = (t.k() == 1 && a1 == 5 && c1 == 2 && gp.n == 5);
        cl.note = cl.classified ? "degree 5, non-degenerate cusp at infinity"
                                : "genus 2 but model checks failed";
    } else {
        cl.classified = false;
        cl.note = "genus outside {1, 2}: ledger only";
    }
    return cl;
}

GeneratedExample generate_example(const std::vector<long>& a, long degree_cap) {
    GeneratedExample out;
    long n = 1;
    for (long ai : a) {
        if (ai < 2) throw DomainError("generate_example: all a_i must be >= 2");
        n *= ai;
        if (n > degree_cap) throw DomainError("generate_example: degree cap exceeded");
    }
    out.n = n;
    out.predicted_mu = (n - 1) * (n - 2);

    // x_{i+2} = x_i + x_{i+1}^{a_{i+1}}, x_0 = x, x_1 = y; F = x_{k+1}
    BiPoly x_i = BiPoly::variable_x();
    BiPoly x_i1 = BiPoly::variable_y();
    for (long ai : a) {
        BiPoly nxt = x_i + x_i1.pow(ai);
        x_i = x_i1;
        x_i1 = nxt;
    }
    out.F = x_i1;
    // elementary steps with apply(steps, y) == F: reversed inverses of the
    // per-stage maps (p, q) -> (q, p + q^a)
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        out.automorphisms.push(SwapStep{});
        out.automorphisms.push(ShearStep{BiPoly::variable_y().pow(*it)});
    }

    long a_prev = 1;
    for (long ai : a) {
        out.predicted_P.push_back(WeightVector{ai, a_prev * ai - 1});
        a_prev = ai;
    }
    // (sharp-1) recursion in the germ chart (u, v)
    std::vector<BiPoly> h;
    h.push_back(BiPoly::variable_y());  // h_0 = v
    if (!a.empty()) {
        h.push_back(BiPoly::monomial(0, a[0], 0, Rat(1)) +
                    BiPoly::monomial(a[0] - 1, 0, 0, Rat(1)));  // v^{a_1} + u^{a_1 - 1}
    }
    long chain = a.empty() ? 1 : a[0];
    for (std::size_t i = 2; i <= a.size(); ++i) {
        long ai = a[i - 1], aim1 = a[i - 2];
        long expo = (chain / aim1) * (aim1 * ai - 1);  // a_1...a_{i-2} (a_{i-1} a_i - 1)
        BiPoly next = h[i - 1].pow(ai) + h[i - 2].mul_monomial(expo, 0, 0, Rat(1));
        h.push_back(next);
        chain *= ai;
    }
    if (!a.empty()) out.predicted_h.assign(h.begin() + 1, h.end());
    return out;
}

}  // namespace curvetower
