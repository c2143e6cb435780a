#pragma once

#include <optional>
#include <vector>

#include "curvetower/bipoly.hpp"

namespace curvetower {

/// Resultant of f and g as polynomials in y, computed by the fraction-free
/// subresultant PRS. The result has deg_y = 0 (a polynomial in x and t).
/// Returns zero iff f and g share a nonconstant common factor.
BiPoly resultant_y(const BiPoly& f, const BiPoly& g);

/// gcd of two univariate polynomials in x over Q, monic-normalized.
BiPoly gcd_univariate_x(const BiPoly& a, const BiPoly& b);

/// Rational roots of a univariate polynomial over Q with multiplicities,
/// plus the degree of the root-free residual factor.
struct RationalRoots {
    std::vector<std::pair<Rat, long>> roots;  // (root, multiplicity)
    long residual_degree = 0;                 // > 0 when non-rational roots remain
};
/// p is univariate in the monomial exponent returned by `pick`: callers pass
/// coefficient sequences directly.
RationalRoots rational_roots(const std::vector<Rat>& coeffs);

}  // namespace curvetower
