#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvetower/invariants.hpp"
#include "curvetower/tower.hpp"

namespace curvetower {

/// One-parameter family f_t(x,y) with polynomial t-dependence, monic in y.
struct Family {
    BiPoly f;     // over Q[t]
    BiPoly base;  // f at t = 0
};

/// Result of the Theorem 6.2 hypothesis check.
struct EquisingReport {
    enum class Verdict { Equisingular, EquisingularK1, Inconclusive, Violated };
    Verdict verdict = Verdict::Inconclusive;
    std::vector<bool> roots_t_free;       // h_i t-independence, i = 1..k-1
    bool all_roots_t_free = true;
    bool lhs_defined = false;
    long lhs = 0;                          // a_k I(C_{k-1}, C(t)), generic t
    bool rhs_finite = false;
    long rhs = 0;                          // I(C(0), C(s)), generic s
    bool condition_61 = false;
    bool equality_holds = false;           // the depth-k dichotomy branch
    std::vector<std::pair<Rat, long>> mu_samples;  // (tau, mu(f_tau)) spot checks
    long mu_base = 0;
    std::string note;
};

Family make_family(const BiPoly& f_qt);

EquisingReport check_family(const Family& fam);

/// The section-7 deformation f + t x^m, with its Newton-diagram shape
/// precondition checked and the Prop 7.1 verifications run.
struct DeformationChecks {
    long nm = 0;                 // n * m
    long i_ts = 0;               // I(C(t), C(s)) = nm, resultant route
    long lhs = 0;                // a_k I(C_{k-1}, C(t))
    Rat mixed_bound;             // 2 V_2(hull f', hull h_{k-1}')
    bool prop71_equality = false;
    bool prop71_inequality = false;
};
std::pair<Family, DeformationChecks> monomial_deformation(const BiPoly& f, long m);

/// Generic intersection number of two Q[t]-germs: the minimal x-exponent of
/// Res_y over Q[t][x]. Returns nullopt when the resultant vanishes.
std::optional<long> generic_intersection(const BiPoly& f, const BiPoly& g);

}  // namespace curvetower
