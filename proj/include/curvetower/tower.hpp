#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvetower/newton.hpp"
#include "curvetower/series.hpp"
#include "curvetower/tschirn.hpp"

namespace curvetower {

/// One toric modification level of the resolution tower.
struct TowerLevel {
    int index = 0;          // i, 1-based
    WeightVector P;         // P_i = (a_i, b_i)
    WeightVector Pprime;    // right-chart companion: successor of P_i in the fan
    Rat xi;                 // face root xi_i
    BiPoly h;               // h_i, the A_{i+1}-th approximate root of f
    long m_f = 0;           // m_i(f)
    long m_h_self = 0;      // m_i(h_i)
    Subdivision subdivision;  // fan used by p_i (in level-(i-1) coordinates)
    TruncSeries local_f;    // Phi_i^* f in the Tschirnhausen coordinates (u_i, v_i)
    TruncSeries W;          // inverse series w = W(u_i, v_i) of this level's chart
};

struct PuiseuxPair {
    long n = 0, m = 0;
};

struct Tower {
    BiPoly f;
    long n = 0;
    std::vector<TowerLevel> levels;
    std::vector<long> A;  // A_1..A_{k+1}, A_i = a_i ... a_k
    std::vector<PuiseuxPair> puiseux;

    int k() const { return static_cast<int>(levels.size()); }
    const TowerLevel& level(int i) const { return levels.at(static_cast<std::size_t>(i - 1)); }
    long a(int i) const { return level(i).P.a; }
    long b(int i) const { return level(i).P.b; }
    long A_of(int i) const { return A.at(static_cast<std::size_t>(i - 1)); }  // A_i, i=1..k+1
    long m_f(int i) const { return level(i).m_f; }
    /// m_i(h_ell) = m_i(f) / A_{ell+1}
    long m_h(int i, int ell) const;
};

struct TowerOptions {
    int refinement_extra = 0;  // extra mediants per fan (Thm 4.7 invariance tests)
    int max_retries = 6;
    long initial_scale = 1;
};

/// Build the Tschirnhausen resolution tower of an irreducible germ, reading
/// each weight vector and face root off the local Newton data, recomputing
/// every h_i globally, and verifying the (4.4.2)-type normal forms in-flight.
Tower build_tower(const BiPoly& f, const TowerOptions& opts = {});

/// Multiplicity table: both the recursion and the closed form are computed
/// and asserted equal; rows are m_i(f), columns m_i(h_ell).
struct MultiplicityTable {
    std::vector<long> m_f;                     // m_1(f)..m_k(f)
    std::vector<std::vector<long>> m_h;        // m_h[i-1][ell-1] for i <= ell
};
MultiplicityTable multiplicities(const Tower& t);

std::vector<PuiseuxPair> puiseux_pairs(const Tower& t);

/// Milnor number from the Puiseux pairs by the classical semigroup/conductor
/// route (independent of the zeta-function formula).
long milnor_from_puiseux(const std::vector<PuiseuxPair>& pairs);

/// Verification report for Theorem 4.5/4.7 contracts.
struct VerifyReport {
    bool ok = true;
    std::vector<std::string> checks;   // one line per passed clause
    std::vector<std::string> failures; // empty when ok
};
VerifyReport verify_tower(const BiPoly& f, const Tower& t, int alt_refinements = 2);

/// Strict-transform profile of a germ g along the tower of f.
struct TransformProfile {
    int depth = 0;                      // largest i with Xi_i on the transform
    bool separated = true;              // false when g never separates (depth = k)
    bool axis = false;                  // transform is {v^Aexp = 0} at the depth level
    std::optional<FaceRoot> face;       // single-root face data when available
    std::vector<WeightVector> faces;    // all face weights of the level-depth polygon
    long Aexp = 0;                      // A'_{theta+2}-type exponent (axis case)
    std::vector<long> level_d;          // d(P_{i+1}; g^(i)) for i = 0..depth
    long tail_ord = 0;                  // ord_u g^(k)(u,0) when depth reaches k
};
TransformProfile strict_transform_profile(const BiPoly& g, const Tower& t);

/// Local series of Phi_upto^* g in the tower's coordinates (u_upto, v_upto).
TruncSeries transport_to_level(const BiPoly& g, const Tower& t, int upto);

/// Order and leading unit coefficient of Phi_i^* alpha for deg_y alpha <
/// a_1...a_i, by the combinatorial recursion on Tschirnhausen expansions.
struct OrdLead {
    long ord = 0;
    Rat lead;
};
OrdLead ord_lead(const Tower& t, int level_i, const BiPoly& alpha);

/// Newton-boundary corners of Phi_i^* f with their unit leads, from the
/// Tschirnhausen expansion of f with respect to h_i; exact at every level.
std::vector<std::pair<LPoint, Rat>> local_skeleton(const Tower& t, int level_i);

/// d(P; Phi_i^* f) read off the skeleton corners (box-independent).
long weight_min_skeleton(const Tower& t, int level_i, const WeightVector& P);

}  // namespace curvetower
