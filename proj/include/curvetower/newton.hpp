#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvetower/bipoly.hpp"

namespace curvetower {

/// Primitive integral weight vector P = (a, b) acting on a monomial x^alpha
/// y^beta by a*alpha + b*beta. The convention is pinned by the calibration:
/// for f = (y^4+x^3)^6 the unique face weight is (4,3) and evaluates both
/// endpoints (0,24) and (18,0) to 72. The face binomial for P is y^a + xi x^b.
struct WeightVector {
    long a = 0;  // coefficient on the x-exponent; the paper's a_i
    long b = 0;  // coefficient on the y-exponent; the paper's b_i

    long coeff_x() const { return a; }
    long coeff_y() const { return b; }
    long paper_a() const { return a; }
    long paper_b() const { return b; }

    long eval(long ex, long ey) const { return a * ex + b * ey; }
    bool is_axis() const { return (a == 1 && b == 0) || (a == 0 && b == 1); }

    friend bool operator==(const WeightVector& p, const WeightVector& q) {
        return p.a == q.a && p.b == q.b;
    }
    friend bool operator!=(const WeightVector& p, const WeightVector& q) { return !(p == q); }
    friend long det(const WeightVector& p, const WeightVector& q) { return p.a * q.b - q.a * p.b; }
    std::string str() const { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }
};

inline const WeightVector E1{1, 0};
inline const WeightVector E2{0, 1};

/// Lattice point in exponent space.
struct LPoint {
    long x = 0, y = 0;
    friend bool operator==(const LPoint& p, const LPoint& q) { return p.x == q.x && p.y == q.y; }
    friend bool operator<(const LPoint& p, const LPoint& q) {
        return p.x != q.x ? p.x < q.x : p.y < q.y;
    }
};

/// One-dimensional compact face of a Newton polygon.
struct Face {
    WeightVector weight;  // primitive
    LPoint from;          // higher y-exponent end
    LPoint to;            // lower y-exponent end
    long d = 0;           // d(P; f) on the face
};

/// Compact boundary data of Gamma_+(f).
struct NewtonPolygon {
    std::vector<LPoint> vertices;  // ordered by increasing x, decreasing y
    std::vector<Face> faces;       // ordered by increasing slope ratio b/a
};

/// Vertices of a simplicial cone subdivision of the positive weight quadrant,
/// E1 first, E2 last, slope-ordered. Regular iff all consecutive dets are 1.
struct Subdivision {
    std::vector<WeightVector> vertices;
    bool is_regular() const {
        for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
            if (det(vertices[i], vertices[i + 1]) != 1) return false;
        return true;
    }
};

/// Face function decomposition c x^r y^s (y^a + xi x^b)^A.
struct FaceRoot {
    WeightVector weight;  // (a, b), gcd 1
    Rat c;                // monomial prefactor coefficient
    long r = 0, s = 0;    // monomial prefactor exponents
    Rat xi;               // the root datum, xi != 0
    long A = 1;           // multiplicity
};

/// Newton polygon of f (t must not occur). Throws DomainError on zero input.
NewtonPolygon newton_polygon(const BiPoly& f);

/// d(P; f) and the face function of P on f.
std::pair<long, BiPoly> weight_data(const WeightVector& P, const BiPoly& f);

/// Primitive weights of the one-dimensional faces, slope-ordered.
std::vector<WeightVector> dual_newton_diagram(const BiPoly& f);

/// Minimal regular subdivision containing E1, the anchors, E2, via the
/// continued-fraction insertion chain. Anchors must be primitive and strictly
/// slope-ordered.
Subdivision regular_refinement(const std::vector<WeightVector>& anchors);

/// As above, then insert `extra` mediants (used by the Thm 4.7 invariance
/// tests: a non-minimal regular refinement).
Subdivision perturbed_refinement(const std::vector<WeightVector>& anchors, int extra);

/// Per-face non-degeneracy report.
struct NondegReport {
    bool nondegenerate = true;
    struct FaceEntry {
        WeightVector weight;
        long max_multiplicity = 1;
    };
    std::vector<FaceEntry> faces;
};
NondegReport nondegenerate(const BiPoly& f);

/// Extract the unique (c, r, s, xi, A) with face = c x^r y^s (y^a + xi x^b)^A,
/// certified by re-expansion. Distinguishes multi-root (GermError) from
/// non-rational-root (NonRationalRoot) failures.
FaceRoot single_root_face(const WeightVector& P, const BiPoly& f);

/// Convex polygons with exact rational vertices (lattice points in normal use).
using LatticePolygon = std::vector<std::pair<Rat, Rat>>;

/// 2 V_2(d1, d2) = Area(d1 + d2) - Area(d1) - Area(d2), exact.
Rat mixed_area(const LatticePolygon& d1, const LatticePolygon& d2);

/// Convex hull of the support of f (optionally with the origin adjoined),
/// for the Bernshtein bound plumbing of §7-style checks.
LatticePolygon support_hull(const BiPoly& f, bool with_origin);

/// ASCII rendering of the support grid and face list, 80-column budget.
std::string ascii_diagram(const BiPoly& f);

}  // namespace curvetower
