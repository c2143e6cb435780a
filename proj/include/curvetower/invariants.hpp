#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvetower/tower.hpp"

namespace curvetower {

/// Monodromy zeta function as a formal product prod (1 - t^e)^sign with the
/// Milnor number attached. Factors with equal e and opposite signs cancel.
struct ZetaFn {
    std::vector<std::pair<long, int>> factors;  // (e, +-1), sorted by e
    long milnor = 0;

    long degree() const {
        long d = 0;
        for (const auto& [e, s] : factors) d += s * e;
        return d;
    }
    void cancel();
    std::string str() const;
};

/// Local intersection multiplicity record; value is +infinity when the germs
/// share a branch.
struct IntersectionRecord {
    std::string curves;
    int depth = 0;
    bool infinite = false;
    long value = 0;
    std::string route;  // "lemma-3.4.2", "thm-4.5(2)", "thm-4.6", "oracle"
};

/// Theorem 5.1: zeta and Milnor number from the tower data; the degree
/// identity deg zeta = mu - 1 is asserted.
ZetaFn zeta_function(const Tower& t);

/// Lemma 3.4.2 route: levelwise d-value recursion along the tower's charts.
IntersectionRecord intersection_tower(const Tower& towerC, const BiPoly& g);

/// Theorem 4.5(2) closed-form table entry I(C_ell, C_j), ell < j <= k.
long intersection_chain(const Tower& t, int ell, int j);

/// Theorem 4.6 value I(D_a, C_i) for a | n outside the chain; i = k gives C.
long intersection_divisor(const Tower& t, long a, int i);

/// Full table: chain pairs plus all divisors of n.
struct IntersectionTable {
    std::vector<std::tuple<long, long, long>> chain_pairs;   // (ell, j, value)
    std::vector<std::pair<long, long>> divisor_rows;         // (a, I(D_a, C))
};
IntersectionTable tschirn_intersection_table(const Tower& t);

/// ord_x Res_y(f, g): the brute-force local intersection number at the
/// origin. Preconditions: f(0,y) and g(0,y) are nonzero constants times pure
/// powers of y. Throws GermError with an infinite flag when Res == 0.
long intersection_oracle(const BiPoly& f, const BiPoly& g);

/// Exceptional divisor data for the A'Campo route.
struct ExceptionalDivisor {
    int level = 0;  // i, 0-based as in the paper's P_{i,j}
    int j = 0;      // position in the subdivision
    WeightVector P;
    long m = 0;     // multiplicity of Phi^* f
    int delta = 0;  // components of the total transform meeting it
};
std::vector<ExceptionalDivisor> exceptional_multiplicities(const Tower& t);

/// A'Campo re-derivation of zeta from the divisors with delta != 2; asserted
/// equal to zeta_function.
ZetaFn zeta_from_exceptional(const Tower& t);

}  // namespace curvetower
