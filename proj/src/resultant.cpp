#include "curvetower/resultant.hpp"

#include <algorithm>

#include "curvetower/errors.hpp"

namespace curvetower {

namespace {

// Pseudo-remainder in y: lc(B)^(dA-dB+1) * A  mod B, coefficients stay in Q[x,t].
BiPoly prem_y(const BiPoly& A, const BiPoly& B) {
    long dB = B.deg_y();
    BiPoly lcB = B.coeff_of_y(dB);
    BiPoly R = A;
    long dR = R.deg_y();
    long e = dR - dB + 1;
    while (!R.is_zero() && (dR = R.deg_y()) >= dB) {
        BiPoly lead = R.coeff_of_y(dR);
        R = R * lcB - B * lead.mul_monomial(0, dR - dB, 0, Rat(1));
        --e;
    }
    if (e > 0) {
        BiPoly f = lcB.pow(e);
        R = R * f;
    }
    return R;
}

}  // namespace

BiPoly resultant_y(const BiPoly& f, const BiPoly& g) {
    if (f.is_zero() || g.is_zero()) return BiPoly::zero();
    BiPoly A = f, B = g;
    long dA = A.deg_y(), dB = B.deg_y();
    int s = 1;
    if (dA < dB) {
        std::swap(A, B);
        std::swap(dA, dB);
        if ((dA & 1) && (dB & 1)) s = -s;
    }
    if (dB == 0) {
        // Res(A, b) = b^{deg A}
        BiPoly r = B.pow(dA);
        return s < 0 ? -r : r;
    }
    if (dA == 0) {
        BiPoly r = A.pow(dB);
        return s < 0 ? -r : r;
    }
    BiPoly gg = BiPoly::constant(Rat(1));
    BiPoly h = BiPoly::constant(Rat(1));
    while (true) {
        dA = A.deg_y();
        dB = B.deg_y();
        long delta = dA - dB;
        if ((dA & 1) && (dB & 1)) s = -s;
        BiPoly R = prem_y(A, B);
        A = B;
        BiPoly denom = gg * h.pow(delta);
        B = R.divide_exact(denom);
        gg = A.coeff_of_y(A.deg_y());
        if (delta > 0) h = gg.pow(delta).divide_exact(h.pow(delta - 1));
        if (B.is_zero()) return BiPoly::zero();  // common factor
        if (B.deg_y() == 0) {
            long d = A.deg_y();
            BiPoly res = B.pow(d);
            if (d > 1) res = res.divide_exact(h.pow(d - 1));
            return s < 0 ? -res : res;
        }
    }
}

BiPoly gcd_univariate_x(const BiPoly& a, const BiPoly& b) {
    if (a.deg_y() > 0 || b.deg_y() > 0 || a.deg_t() > 0 || b.deg_t() > 0)
        throw DomainError("gcd_univariate_x expects univariate polynomials in x");
    BiPoly A = a, B = b;
    while (!B.is_zero()) {
        // remainder of A by B over the field Q
        long dB = B.deg_x();
        Rat lb = B.coeff(dB, 0, 0);
        BiPoly R = A;
        while (!R.is_zero() && R.deg_x() >= dB) {
            long dR = R.deg_x();
            Rat q = R.coeff(dR, 0, 0) / lb;
            R -= B.mul_monomial(dR - dB, 0, 0, q);
        }
        A = B;
        B = R;
    }
    if (A.is_zero()) return A;
    Rat lead = A.coeff(A.deg_x(), 0, 0);
    return A.scaled(lead.inv());
}

RationalRoots rational_roots(const std::vector<Rat>& coeffs_in) {
    RationalRoots out;
    std::vector<Rat> c = coeffs_in;
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    if (c.empty()) throw DomainError("rational_roots of the zero polynomial");
    // strip root 0
    std::size_t z = 0;
    while (z < c.size() && c[z].is_zero()) ++z;
    if (z > 0) {
        out.roots.emplace_back(Rat(0), static_cast<long>(z));
        c.erase(c.begin(), c.begin() + static_cast<long>(z));
    }
    if (c.size() <= 1) return out;
    // clear denominators -> integer polynomial
    mpz_class lcm_den = 1;
    for (const auto& r : c) lcm_den = lcm(lcm_den, r.denominator());
    std::vector<mpz_class> ic(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        Rat scaled = c[i] * Rat(lcm_den);
        ic[i] = scaled.numerator();
    }
    // candidates p/q with p | ic[0], q | ic.back()
    auto divisors = [](mpz_class n) {
        n = abs(n);
        std::vector<mpz_class> ds;
        for (mpz_class d = 1; d * d <= n; ++d) {
            if (n % d == 0) {
                ds.push_back(d);
                if (d * d != n) ds.push_back(n / d);
            }
        }
        return ds;
    };
    auto eval_at = [](const std::vector<Rat>& poly, const Rat& x) {
        Rat acc = 0;
        for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
    auto deflate = [](std::vector<Rat>& poly, const Rat& root) {
        // synthetic division by (w - root); assumes exact
        std::vector<Rat> q(poly.size() - 1);
        Rat carry = poly.back();
        for (std::size_t i = poly.size() - 1; i-- > 0;) {
            q[i] = carry;
            carry = poly[i] + carry * root;
        }
        poly = std::move(q);
    };

    std::vector<mpz_class> ps = divisors(ic.front());
    std::vector<mpz_class> qs = divisors(ic.back());
    std::vector<Rat> candidates;
    for (const auto& p : ps)
        for (const auto& q : qs) {
            mpq_class r(p, q);
            r.canonicalize();
            candidates.push_back(Rat(r));
            candidates.push_back(Rat(mpq_class(-r)));
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const auto& cand : candidates) {
        while (c.size() > 1 && eval_at(c, cand).is_zero()) {
            deflate(c, cand);
            bool found = false;
            for (auto& [r, m] : out.roots)
                if (r == cand) {
                    ++m;
                    found = true;
                }
            if (!found) out.roots.emplace_back(cand, 1);
        }
    }
    out.residual_degree = static_cast<long>(c.size()) - 1;
    return out;
}

}  // namespace curvetower
