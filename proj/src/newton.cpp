#include "curvetower/newton.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "curvetower/errors.hpp"
#include "curvetower/resultant.hpp"

namespace curvetower {

namespace {

long cross(const LPoint& o, const LPoint& p, const LPoint& q) {
    return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x);
}

std::vector<LPoint> support_points(const BiPoly& f) {
    if (f.deg_t() > 0) throw DomainError("Newton geometry over Q[t] is not defined here");
    std::vector<LPoint> pts;
    pts.reserve(f.term_count());
    for (const auto& [m, c] : f.support()) pts.push_back(LPoint{m.x, m.y});
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace

NewtonPolygon newton_polygon(const BiPoly& f) {
    if (f.is_zero()) throw DomainError("Newton polygon of the zero polynomial");
    std::vector<LPoint> pts = support_points(f);

    // for each x keep the minimal y (pts are sorted, first y per x is minimal)
    std::vector<LPoint> cand;
    for (const auto& p : pts) {
        if (!cand.empty() && cand.back().x == p.x) continue;
        cand.push_back(p);
    }
    // lower hull, collinear interior points dropped
    std::vector<LPoint> hull;
    for (const auto& p : cand) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull[hull.size() - 1], p) <= 0)
            hull.pop_back();
        hull.push_back(p);
    }
    // the compact boundary ends at the first vertex attaining the minimal y
    long ymin = hull.front().y;
    for (const auto& p : hull) ymin = std::min(ymin, p.y);
    std::vector<LPoint> boundary;
    for (const auto& p : hull) {
        boundary.push_back(p);
        if (p.y == ymin) break;
    }

    NewtonPolygon np;
    np.vertices = boundary;
    for (std::size_t i = 0; i + 1 < boundary.size(); ++i) {
        const LPoint& A = boundary[i];
        const LPoint& B = boundary[i + 1];
        long da = A.y - B.y;
        long db = B.x - A.x;
        long g = std::gcd(da, db);
        Face face;
        face.weight = WeightVector{da / g, db / g};
        face.from = A;
        face.to = B;
        face.d = face.weight.eval(A.x, A.y);
        np.faces.push_back(face);
    }
    return np;
}

std::pair<long, BiPoly> weight_data(const WeightVector& P, const BiPoly& f) {
    if (f.is_zero()) throw DomainError("weight_data of the zero polynomial");
    if (P.a == 0 && P.b == 0) throw DomainError("weight_data with zero weight");
    long d = 0;
    bool first = true;
    for (const auto& [m, c] : f.support()) {
        long v = P.eval(m.x, m.y);
        if (first || v < d) d = v;
        first = false;
    }
    BiPoly face;
    for (const auto& [m, c] : f.support())
        if (P.eval(m.x, m.y) == d) face.set_coeff(m.x, m.y, m.t, c);
    return {d, face};
}

std::vector<WeightVector> dual_newton_diagram(const BiPoly& f) {
    NewtonPolygon np = newton_polygon(f);
    std::vector<WeightVector> ws;
    ws.reserve(np.faces.size());
    for (const auto& face : np.faces) ws.push_back(face.weight);
    return ws;
}

namespace {

// Canonical continued-fraction chain between consecutive primitive T, T'
// with det(T, T') > 1: insert U = (T' + m T)/D, the unique primitive vertex
// with det(T, U) = 1 in the cone, then recurse on (U, T').
void fill_chain(const WeightVector& T, const WeightVector& Tp, std::vector<WeightVector>& out) {
    long D = det(T, Tp);
    if (D <= 0) throw DomainError("refinement anchors not strictly slope-ordered");
    if (D == 1) {
        out.push_back(Tp);
        return;
    }
    long m = -1;
    for (long cand = 0; cand < D; ++cand) {
        if ((Tp.a + cand * T.a) % D == 0 && (Tp.b + cand * T.b) % D == 0) {
            m = cand;
            break;
        }
    }
    if (m < 0) throw DomainError("no lattice mediant found (non-primitive anchors?)");
    WeightVector U{(Tp.a + m * T.a) / D, (Tp.b + m * T.b) / D};
    fill_chain(T, U, out);
    fill_chain(U, Tp, out);
}

}  // namespace

Subdivision regular_refinement(const std::vector<WeightVector>& anchors) {
    for (const auto& w : anchors) {
        if (w.a <= 0 || w.b <= 0) {
            if (!(w == E1 || w == E2)) throw DomainError("anchor not in the open quadrant");
        }
        if (std::gcd(w.a, w.b) != 1) throw DomainError("anchor not primitive");
    }
    Subdivision s;
    s.vertices.push_back(E1);
    WeightVector prev = E1;
    for (const auto& w : anchors) {
        if (w == E1 || w == E2) continue;
        fill_chain(prev, w, s.vertices);
        prev = w;
    }
    fill_chain(prev, E2, s.vertices);
    return s;
}

Subdivision perturbed_refinement(const std::vector<WeightVector>& anchors, int extra) {
    Subdivision s = regular_refinement(anchors);
    for (int k = 0; k < extra; ++k) {
        // insert the mediant into the widest-index cone not already split this round
        std::size_t pos = 1 + static_cast<std::size_t>(k) % (s.vertices.size() - 1);
        WeightVector T = s.vertices[pos - 1], Tp = s.vertices[pos];
        WeightVector M{T.a + Tp.a, T.b + Tp.b};
        s.vertices.insert(s.vertices.begin() + static_cast<long>(pos), M);
    }
    return s;
}

namespace {

// Face function as c x^r y^s * G with G = sum_j g_j x^(b j) y^(a (delta-j)).
// Returns (c-normalized coefficients g_j as a univariate sequence, r, s, delta).
struct FaceLine {
    std::vector<Rat> g;  // g[0] is the y-pure end
    long r = 0, s = 0;
    long delta = 0;  // number of binomial steps along the face
};

FaceLine face_line(const WeightVector& P, const BiPoly& face) {
    FaceLine fl;
    long rmin = -1, smin = -1;
    for (const auto& [m, c] : face.support()) {
        rmin = rmin < 0 ? m.x : std::min(rmin, m.x);
        smin = smin < 0 ? m.y : std::min(smin, m.y);
    }
    fl.r = rmin;
    fl.s = smin;
    long ymax = 0;
    for (const auto& [m, c] : face.support()) ymax = std::max(ymax, m.y - smin);
    if (P.a <= 0 || ymax % P.a != 0)
        throw DomainError("face function does not align with its weight");
    fl.delta = ymax / P.a;
    fl.g.assign(static_cast<std::size_t>(fl.delta + 1), Rat(0));
    for (const auto& [m, c] : face.support()) {
        long ey = m.y - smin;
        long j = fl.delta - ey / P.a;
        if (ey % P.a != 0 || m.x - rmin != P.b * j)
            throw DomainError("face support not on the expected lattice line");
        fl.g[static_cast<std::size_t>(j)] = c;
    }
    return fl;
}

}  // namespace

NondegReport nondegenerate(const BiPoly& f) {
    NondegReport rep;
    NewtonPolygon np = newton_polygon(f);
    for (const auto& face : np.faces) {
        auto [d, ff] = weight_data(face.weight, f);
        FaceLine fl = face_line(face.weight, ff);
        RationalRoots rr = rational_roots(fl.g);
        if (rr.residual_degree > 0)
            throw NonRationalRoot("face function has a non-rational root for weight " +
                                  face.weight.str());
        long maxnu = 1;
        for (const auto& [root, mult] : rr.roots) maxnu = std::max(maxnu, mult);
        rep.faces.push_back({face.weight, maxnu});
        if (maxnu > 1) rep.nondegenerate = false;
    }
    return rep;
}

FaceRoot single_root_face(const WeightVector& P, const BiPoly& f) {
    auto [d, ff] = weight_data(P, f);
    FaceLine fl = face_line(P, ff);
    if (fl.delta == 0) {
        // vertex: A = 1 convention does not apply; callers must pass a 1-dim face
        throw DomainError("single_root_face on a vertex face");
    }
    FaceRoot out;
    out.weight = P;
    out.r = fl.r;
    out.s = fl.s;
    out.A = fl.delta;
    out.c = fl.g[0];
    if (out.c.is_zero()) throw DomainError("face function has no y-pure corner");
    // xi from the ratio of the two leading coefficients over binom(A,1)
    out.xi = fl.g[1] / (out.c * Rat(out.A));
    // certify by full expansion
    bool ok = !out.xi.is_zero();
    if (ok) {
        for (long j = 0; j <= out.A; ++j) {
            Rat expect = out.c * rat_binomial(Rat(out.A), j) * out.xi.pow(j);
            if (fl.g[static_cast<std::size_t>(j)] != expect) {
                ok = false;
                break;
            }
        }
    }
    if (!ok) {
        RationalRoots rr = rational_roots(fl.g);
        long found = 0;
        for (const auto& [root, mult] : rr.roots) found += mult;
        if (rr.residual_degree > 0 && rr.roots.empty() && fl.delta > 0)
            throw NonRationalRoot("face root is not rational for weight " + P.str());
        if (rr.residual_degree > 0)
            throw NonRationalRoot("face function has a non-rational root for weight " + P.str());
        throw GermError("face function has " + std::to_string(rr.roots.size()) +
                        " distinct roots (germ reducible along face " + P.str() + ")");
    }
    return out;
}

namespace {

using PtQ = std::pair<Rat, Rat>;

Rat cross_q(const PtQ& o, const PtQ& p, const PtQ& q) {
    return (p.first - o.first) * (q.second - o.second) -
           (p.second - o.second) * (q.first - o.first);
}

LatticePolygon convex_hull(std::vector<PtQ> pts) {
    std::sort(pts.begin(), pts.end(), [](const PtQ& a, const PtQ& b) {
        return a.first != b.first ? a.first < b.first : a.second < b.second;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<PtQ> lower, upper;
    for (const auto& p : pts) {
        while (lower.size() >= 2 && cross_q(lower[lower.size() - 2], lower.back(), p).sign() <= 0)
            lower.pop_back();
        lower.push_back(p);
    }
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        while (upper.size() >= 2 && cross_q(upper[upper.size() - 2], upper.back(), *it).sign() <= 0)
            upper.pop_back();
        upper.push_back(*it);
    }
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    return lower;
}

Rat polygon_area2(const LatticePolygon& poly) {
    // twice the signed area, counterclockwise positive
    Rat acc = 0;
    std::size_t n = poly.size();
    if (n < 3) return Rat(0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % n];
        acc += p.first * q.second - q.first * p.second;
    }
    return acc;
}

void check_convex(const LatticePolygon& poly) {
    LatticePolygon h = convex_hull(poly);
    if (h.size() != poly.size() && !(poly.size() <= 2))
        throw DomainError("mixed_area expects convex polygons");
}

}  // namespace

Rat mixed_area(const LatticePolygon& d1, const LatticePolygon& d2) {
    if (d1.empty() || d2.empty()) throw DomainError("mixed_area with empty polygon");
    check_convex(d1);
    check_convex(d2);
    std::vector<PtQ> sums;
    sums.reserve(d1.size() * d2.size());
    for (const auto& p : d1)
        for (const auto& q : d2) sums.emplace_back(p.first + q.first, p.second + q.second);
    LatticePolygon mk = convex_hull(std::move(sums));
    Rat a12 = polygon_area2(mk).abs();
    Rat a1 = polygon_area2(convex_hull(d1)).abs();
    Rat a2 = polygon_area2(convex_hull(d2)).abs();
    return (a12 - a1 - a2) / Rat(2);
}

LatticePolygon support_hull(const BiPoly& f, bool with_origin) {
    std::vector<PtQ> pts;
    for (const auto& [m, c] : f.support()) pts.emplace_back(Rat(m.x), Rat(m.y));
    if (with_origin) pts.emplace_back(Rat(0), Rat(0));
    return convex_hull(std::move(pts));
}

std::string ascii_diagram(const BiPoly& f) {
    NewtonPolygon np = newton_polygon(f);
    long xmax = f.deg_x(), ymax = f.deg_y();
    std::ostringstream os;
    long budget = 80 - 6;
    long step = 1;
    if (xmax + 1 > budget) step = (xmax + budget) / budget;  // coarse columns
    for (long y = ymax; y >= 0; --y) {
        os.width(4);
        os << y << " |";
        std::string row(static_cast<std::size_t>(xmax / step + 1), ' ');
        for (const auto& [m, c] : f.support())
            if (m.y == y) row[static_cast<std::size_t>(m.x / step)] = '*';
        os << row << "\n";
    }
    os << "     +";
    for (long x = 0; x <= xmax / step; ++x) os << '-';
    os << "  x" << (step > 1 ? " (1 col = " + std::to_string(step) + ")" : "") << "\n";
    os << "faces:";
    if (np.faces.empty()) os << " none (single vertex)";
    for (const auto& face : np.faces)
        os << " P=" << face.weight.str() << " d=" << face.d << " (" << face.from.x << ","
           << face.from.y << ")-(" << face.to.x << "," << face.to.y << ")";
    os << "\n";
    return os.str();
}

}  // namespace curvetower
