#pragma once

#include <vector>

#include "curvetower/bipoly.hpp"

namespace curvetower {

/// Euclidean expansion P = sum c_i h^(s-i) with deg_y c_i < deg_y h,
/// coefficients ordered most-significant first (c_0 first). Zero coefficients
/// are stored explicitly: positions carry meaning.
struct TschirnExpansion {
    BiPoly base;
    std::vector<BiPoly> coefficients;  // c_0 ... c_s
    BiPoly represented;

    /// sum c_i base^(s-i); equals `represented` by construction.
    BiPoly reconstruct() const;
};

/// The a-th approximate root H_a of f: unique monic of y-degree a with
/// deg_y(f - H_a^(n/a)) < n - a.
struct ApproxRoot {
    BiPoly source;
    long index_a = 1;
    BiPoly root;
};

/// Witness record of the hereditary property (approximate roots compose and
/// the inner expansion has vanishing second coefficient).
struct HereditaryWitness {
    ApproxRoot outer;      // H_{ab} of f
    ApproxRoot inner;      // H_a of f
    ApproxRoot recomputed; // a-th root of H_{ab}
    TschirnExpansion expansion;  // H_{ab} w.r.t. H_a; c_1 = 0
    bool holds = false;
};

TschirnExpansion euclid_expand(const BiPoly& P, const BiPoly& h);

ApproxRoot approximate_root(const BiPoly& f, long a);

HereditaryWitness hereditary_check(const BiPoly& f, long a, long b);

/// H(y,z) = y^(ac/d) Trunc^[c/d] (1 + xi z^b / y^a)^(c/d): the d-th
/// approximate root of (y^a + xi z^b)^c, weighted homogeneous of degree
/// abc/d for the weight (b per z, a per y). z is returned in the x slot.
BiPoly trunc_binomial_root(long a, long b, long c, long d, const Rat& xi);

}  // namespace curvetower
