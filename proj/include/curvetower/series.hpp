#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "curvetower/bipoly.hpp"
#include "curvetower/newton.hpp"

namespace curvetower {

/// Bivariate power series over Q, truncated to a box 0..nx by 0..ny.
/// exact_x / exact_y record whether the represented object is known to have
/// no support beyond the bound in that direction. Reading a coefficient
/// outside the box in a non-exact direction is a hard error, never zero.
class TruncSeries {
public:
    using Support = std::map<std::pair<long, long>, Rat>;

    TruncSeries() = default;
    TruncSeries(long nx, long ny, bool exact_x, bool exact_y, long min_xord = 0)
        : nx_(nx), ny_(ny), exact_x_(exact_x), exact_y_(exact_y), min_xord_(min_xord) {}

    /// A polynomial is an exact series; bounds are its degrees.
    static TruncSeries from_poly(const BiPoly& p);
    /// The polynomial with the same support (valid when both flags are exact).
    BiPoly to_poly() const;

    long nx() const { return nx_; }
    long ny() const { return ny_; }
    bool exact_x() const { return exact_x_; }
    bool exact_y() const { return exact_y_; }
    /// Certified lower bound on the x-order of the represented series
    /// (maintained through arithmetic; face certification rests on it).
    long min_xord() const { return min_xord_; }
    void assert_min_xord(long m) { min_xord_ = std::max(min_xord_, m); }
    const Support& support() const { return c_; }
    bool stored_zero() const { return c_.empty(); }

    /// Checked read: inside the box, or outside in an exact direction (-> 0).
    Rat coeff(long ex, long ey) const;
    void set_coeff(long ex, long ey, const Rat& c);

    long ord_x() const;  // min stored x-exponent, -1 when nothing stored
    long deg_y_stored() const;

    /// Restrict to a smaller box (bounds only shrink; flags preserved).
    TruncSeries clipped(long nx, long ny) const;

    TruncSeries operator-() const;
    friend TruncSeries add(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries sub(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries mul(const TruncSeries& a, const TruncSeries& b);
    TruncSeries scaled(const Rat& r) const;

    /// Multiply by x^ex y^ey (bounds grow in exact directions, stay otherwise).
    TruncSeries mul_monomial(long ex, long ey, const Rat& c) const;
    /// Divide by x^m exactly; every stored term must have x-exp >= m.
    TruncSeries divide_by_x_power(long m) const;

    bool box_equal(const TruncSeries& o) const;

private:
    Support c_;
    long nx_ = 0, ny_ = 0;
    bool exact_x_ = true, exact_y_ = true;
    long min_xord_ = 0;

    friend TruncSeries combine_like(const TruncSeries& a, const TruncSeries& b, int sign);
};

/// Exact pull-back of f under the chart map of the unimodular matrix with
/// columns P and Pp (x -> x^P.a y^Pp.a, y -> x^P.b y^Pp.b), followed by the
/// recentering y_sigma -> y_new + shift. The result's x-bound is derived from
/// the input box per exactness propagation; its y direction is exact.
/// target_nx, when >= 0, clips the result (and errors if more was requested
/// than the input box can certify).
TruncSeries substitute_monomial_map(const TruncSeries& f, const WeightVector& P,
                                    const WeightVector& Pp, const Rat& shift,
                                    long target_nx = -1);

/// Same entry point for polynomials (exact inputs).
TruncSeries substitute_monomial_map(const BiPoly& f, const WeightVector& P,
                                    const WeightVector& Pp, const Rat& shift,
                                    long target_nx = -1);

/// Given v = V(x, w) with V(0,0) = 0 and dV/dw(0,0) != 0, return the formal
/// inverse W(x, v) with V(x, W(x,v)) = v up to the requested box.
TruncSeries series_compose_invert(const TruncSeries& V, long out_nx, long out_ny);

/// Composition A(x, S(x,v)) where A is a series in (x, w) and S has S(0,0)=0.
TruncSeries compose_second(const TruncSeries& A, const TruncSeries& S, long out_nx, long out_ny);

/// Newton polygon of the certified region of a series. Throws
/// PrecisionExhausted when a face cannot be certified within the box.
NewtonPolygon newton_polygon_series(const TruncSeries& s);

/// d(P; s) over the certified region.
long weight_min_series(const WeightVector& P, const TruncSeries& s);

/// Face function of P as a polynomial (terms attaining d(P; s)).
BiPoly face_function_series(const WeightVector& P, const TruncSeries& s);

}  // namespace curvetower
