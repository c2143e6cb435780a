#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvetower/rat.hpp"

namespace curvetower {

/// Coefficient ring of a polynomial: plain rationals, or rationals with one
/// family parameter t.
enum class CoefRing { Q, Qt };

/// Monomial exponents (x, y, t). t is 0 everywhere outside family contexts.
struct Mono {
    long x = 0, y = 0, t = 0;
    friend bool operator==(const Mono& a, const Mono& b) {
        return a.x == b.x && a.y == b.y && a.t == b.t;
    }
    friend bool operator<(const Mono& a, const Mono& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.t < b.t;
    }
};

/// Sparse exact polynomial in Q[x,y] or Q[t][x,y]. No zero coefficients are
/// stored; exponents are nonnegative. Houses f, h_i, H_a, c_i and friends.
class BiPoly {
public:
    using Support = std::map<Mono, Rat>;

    BiPoly() = default;
    static BiPoly zero() { return BiPoly(); }
    static BiPoly constant(const Rat& r);
    static BiPoly variable_x() { return monomial(1, 0, 0, Rat(1)); }
    static BiPoly variable_y() { return monomial(0, 1, 0, Rat(1)); }
    static BiPoly variable_t() { return monomial(0, 0, 1, Rat(1)); }
    static BiPoly monomial(long ex, long ey, long et, const Rat& c);

    const Support& support() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    std::size_t term_count() const { return c_.size(); }

    Rat coeff(long ex, long ey, long et = 0) const;
    void set_coeff(long ex, long ey, long et, const Rat& c);

    long deg_x() const;
    long deg_y() const;
    long deg_t() const;
    long deg_total() const;  // in x and y (t excluded)
    long ord_x() const;      // min x-exponent over the support; -1 for zero

    bool depends_on_t() const { return deg_t() > 0; }
    /// Monic of the given degree as a polynomial in y.
    bool is_monic_in_y() const;

    BiPoly operator-() const;
    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

    BiPoly scaled(const Rat& r) const;
    BiPoly pow(long e) const;
    BiPoly mul_monomial(long ex, long ey, long et, const Rat& c) const;

    /// Coefficient of y^j, a polynomial in x (and t).
    BiPoly coeff_of_y(long j) const;
    /// Coefficient of x^i, a polynomial in y (and t).
    BiPoly coeff_of_x(long i) const;
    /// y-coefficients [c_0, ..., c_{deg_y}] with c_j = coeff_of_y(j).
    std::vector<BiPoly> y_coeffs() const;

    /// Exact division; throws DomainError when the division is not exact.
    BiPoly divide_exact(const BiPoly& divisor) const;
    /// Division in y by a divisor monic in y: f = q*divisor + r, deg_y r < deg_y divisor.
    /// Exact over the coefficient ring (the divisor is monic).
    std::pair<BiPoly, BiPoly> divmod_y_monic(const BiPoly& divisor) const;

    /// Substitute x -> px, y -> py (polynomial composition).
    BiPoly subst(const BiPoly& px, const BiPoly& py) const;
    /// Specialize t -> tau.
    BiPoly eval_t(const Rat& tau) const;
    /// Evaluate at a rational point (x0, y0); t must not occur.
    Rat eval(const Rat& x0, const Rat& y0) const;

    BiPoly derivative_x() const;
    BiPoly derivative_y() const;

    /// Swap the roles of x and y.
    BiPoly swap_xy() const;

    /// Canonical display, graded lexicographic with x before y, exact
    /// rational coefficients. Re-parses to an equal polynomial.
    std::string str(const std::string& xname = "x", const std::string& yname = "y") const;
    friend std::ostream& operator<<(std::ostream& os, const BiPoly& p);

private:
    Support c_;  // no explicit zeros
};

/// Parse an expression over the given ring. Grammar: variables x,y (u,v
/// aliases), t only when ring = Qt; integer and p/q literals; + - * ^;
/// parentheses; explicit '*' required. Throws SyntaxError.
BiPoly parse_bipoly(const std::string& text, CoefRing ring = CoefRing::Q);

}  // namespace curvetower
