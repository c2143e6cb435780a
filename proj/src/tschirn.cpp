#include "curvetower/tschirn.hpp"

#include <numeric>

#include "curvetower/errors.hpp"

namespace curvetower {

BiPoly TschirnExpansion::reconstruct() const {
    BiPoly acc;
    for (const auto& c : coefficients) acc = acc * base + c;
    return acc;
}

TschirnExpansion euclid_expand(const BiPoly& P, const BiPoly& h) {
    if (!h.is_monic_in_y()) throw DomainError("euclid_expand: base not monic in y");
    long a = h.deg_y();
    long s = std::max(P.deg_y(), 0L) / a;
    TschirnExpansion ex;
    ex.base = h;
    ex.represented = P;
    ex.coefficients.assign(static_cast<std::size_t>(s + 1), BiPoly::zero());
    BiPoly cur = P;
    for (long i = s; i >= 0; --i) {
        auto [q, r] = cur.divmod_y_monic(h);
        ex.coefficients[static_cast<std::size_t>(i)] = r;
        cur = q;
    }
    if (!cur.is_zero()) throw DomainError("euclid_expand: leftover quotient");
    return ex;
}

ApproxRoot approximate_root(const BiPoly& f, long a) {
    long n = f.deg_y();
    if (n < 1 || !f.is_monic_in_y()) throw DomainError("approximate_root: f not monic in y");
    if (a < 1 || n % a != 0) throw DomainError("approximate_root: index does not divide deg_y f");
    long m = n / a;
    // triangular recursion: solve alpha_1..alpha_a in order by matching the
    // coefficient of y^(n-i) in h^(n/a) against f
    BiPoly h = BiPoly::monomial(0, a, 0, Rat(1));
    Rat m_rat(m);
    for (long i = 1; i <= a; ++i) {
        BiPoly power = h.pow(m);
        BiPoly want = f.coeff_of_y(n - i);
        BiPoly have = power.coeff_of_y(n - i);
        BiPoly alpha_i = (want - have).scaled(m_rat.inv());
        if (!alpha_i.is_zero()) h += alpha_i.mul_monomial(0, a - i, 0, Rat(1));
    }
    // defining inequality check
    BiPoly diff = f - h.pow(m);
    if (!(diff.is_zero() || diff.deg_y() < n - a))
        throw DomainError("approximate_root: defining inequality failed");
    ApproxRoot out;
    out.source = f;
    out.index_a = a;
    out.root = h;
    return out;
}

HereditaryWitness hereditary_check(const BiPoly& f, long a, long b) {
    long n = f.deg_y();
    if (a < 2 || b < 2 || n % (a * b) != 0)
        throw DomainError("hereditary_check: need a,b >= 2 with ab | n");
    HereditaryWitness w;
    w.outer = approximate_root(f, a * b);
    w.inner = approximate_root(f, a);
    w.recomputed = approximate_root(w.outer.root, a);
    w.expansion = euclid_expand(w.outer.root, w.inner.root);
    bool c1_zero = w.expansion.coefficients.size() >= 2 && w.expansion.coefficients[1].is_zero();
    w.holds = (w.recomputed.root == w.inner.root) && c1_zero;
    return w;
}

BiPoly trunc_binomial_root(long a, long b, long c, long d, const Rat& xi) {
    if (a < 1 || b < 1 || c < 1 || d < 1) throw DomainError("trunc_binomial_root: positive integers required");
    if (std::gcd(a, b) != 1) throw DomainError("trunc_binomial_root: gcd(a,b) != 1");
    if ((a * c) % d != 0) throw DomainError("trunc_binomial_root: d does not divide a*c");
    long ell = c / d;  // [c/d]
    Rat r(c, d);
    BiPoly H;
    for (long j = 0; j <= ell; ++j) {
        Rat coeff = rat_binomial(r, j) * xi.pow(j);
        long ypow = a * c / d - a * j;
        H += BiPoly::monomial(b * j, ypow, 0, coeff);
    }
    return H;
}

}  // namespace curvetower
