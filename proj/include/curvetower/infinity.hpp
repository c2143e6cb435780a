#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "curvetower/invariants.hpp"
#include "curvetower/tower.hpp"

namespace curvetower {

/// Elementary plane automorphisms with exact composition and inverse.
/// A shear moves the curve by (x, y) -> (x - B(y), y); on defining
/// polynomials a step acts by F -> F o step^{-1}.
struct ShearStep {
    BiPoly B;  // univariate in y
};
struct SwapStep {};
struct AffineStep {
    // (x, y) -> (m00 x + m01 y + c0, m10 x + m11 y + c1), invertible
    Rat m00, m01, m10, m11, c0, c1;
};
using AutoStep = std::variant<ShearStep, SwapStep, AffineStep>;

struct AutoSeq {
    std::vector<AutoStep> steps;

    /// F o step^{-1} folded over the steps: the defining polynomial of the
    /// image curve.
    BiPoly apply(const BiPoly& F) const;
    /// The inverse sequence (reversed inverses).
    AutoSeq inverse() const;
    void push(AutoStep s) { steps.push_back(std::move(s)); }
    std::size_t size() const { return steps.size(); }
};

BiPoly apply_step(const AutoStep& s, const BiPoly& F);

/// Core data of the compactification at the single place at infinity.
struct InfinityCore {
    BiPoly F_normalized;  // after the linear normalization and monic scaling
    AutoSeq normalization;  // the linear steps applied to reach it
    long n = 0;             // total degree
    BiPoly f_local;         // germ at rho = (1:0:0) in the (u, v) chart
    bool is_line = false;   // degree 1 input
    long a1 = 0, b1 = 0, c1 = 0;  // initial weight data; c1 = a1 - b1
    Rat xi1;
};

/// Normalize the point at infinity to rho = (1:0:0) by a Q-linear change,
/// scale monic, and compactify: f(u,v) = u^n F(1/u, v/u) - t_shift u^n.
InfinityCore compactify(const BiPoly& F, const Rat& t_shift = Rat(0));

/// Verdict of the constructive embedded-line test.
struct AmsResult {
    enum class Verdict { Line, NotLine };
    Verdict verdict = Verdict::NotLine;
    AutoSeq rectification;  // applying to F yields a degree-1 polynomial
    int shear_count = 0;
    long final_degree = 0;
    long certificate_n = 0, certificate_a1 = 0, certificate_c1 = 0;
    std::vector<std::string> trace;
};
AmsResult ams_line_test(const BiPoly& F);

/// One barycentric shear at a c_1 = 1 place: B(y) = -A_{d-1}(y)/(d A_d) and
/// F' = F(x + B(y), y). Returns (B, F'); degree strictly drops.
std::pair<BiPoly, BiPoly> barycentric_shear(const BiPoly& F);

/// Theorem 8.4: b_i = a_{i-1} a_i - 1 for every level (a_0 = 1).
bool weight_constraints_check(const Tower& tower_at_infinity);

/// Genus bookkeeping of a smooth affine curve with one place at infinity.
struct GenusProfile {
    long n = 0;
    long mu_inf = 0;
    long genus = 0;
    bool affine_smooth_verified = false;
    Tower tower;  // tower of the germ at infinity
};
GenusProfile genus_profile(const BiPoly& F);

/// Theorem 8.7 classification for g in {1, 2} plus the inequality ledger.
struct Classification {
    long genus = 0;
    bool classified = false;
    long model_n = 0, model_a1 = 0, model_c1 = 0;
    int tower_k = 0;
    BiPoly reduced_model;  // after the c_1 = 1 shears
    int shears_applied = 0;
    // ledger: (a_g) sum == (A_1-1)^2 - 2g ; (b) sum <= A_1^2 ; (*) A_2 bound
    bool ledger_ag = false, ledger_b = false, ledger_star = false;
    std::string note;
};
Classification classify_low_genus(const BiPoly& F);

/// Example 8.5 generator: the curve F = x_{k+1}(x, y) from the automorphism
/// recursion, plus the predicted tower data at infinity.
struct GeneratedExample {
    BiPoly F;
    AutoSeq automorphisms;
    std::vector<WeightVector> predicted_P;  // (a_i, a_{i-1} a_i - 1)
    std::vector<BiPoly> predicted_h;        // the (sharp-1) recursion, in (u, v)
    long n = 0;
    long predicted_mu = 0;  // (n-1)(n-2)
};
GeneratedExample generate_example(const std::vector<long>& a, long degree_cap = 64);

}  // namespace curvetower
