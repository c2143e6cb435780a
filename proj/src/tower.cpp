#include "curvetower/tower.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <sstream>

#include "curvetower/errors.hpp"

namespace {
struct StageTimer {
    const char* name;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    explicit StageTimer(const char* n) : name(n) {}
    ~StageTimer() {
        if (!std::getenv("CURVETOWER_TRACE")) return;
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        if (ms > 20) std::cerr << "[trace] " << name << ": " << ms << "ms\n";
    }
};
}  // namespace

namespace curvetower {

long Tower::m_h(int i, int ell) const {
    long Al1 = A_of(ell + 1);
    long mi = m_f(i);
    if (mi % Al1 != 0) throw DomainError("m_i(f) not divisible by A_{ell+1}");
    return mi / Al1;
}

namespace {

struct BuildState {
    const BiPoly* f = nullptr;
    long n = 0;
    long scale = 1;
    int refinement_extra = 0;
    std::vector<TowerLevel> levels;
    std::vector<long> chain;   // a_1, a_1 a_2, ...
    TruncSeries local_f;       // Phi_i^* f (bounds shifted by m_i(f))
    TruncSeries local_strict;  // Phi_i^* f / u^{m_i(f)}: the pipeline rep
};

long prod_chain(const BuildState& st) { return st.chain.empty() ? 1 : st.chain.back(); }

// ---- combinatorial order/lead recursion (the (3-j) route) -----------------

OrdLead ord_lead_impl(const std::vector<TowerLevel>& levels, int level_i, const BiPoly& alpha) {
    if (alpha.is_zero()) throw DomainError("ord_lead of the zero polynomial");
    if (alpha.deg_t() > 0) throw DomainError("ord_lead over Q[t]");
    if (level_i == 0) {
        if (alpha.deg_y() > 0) throw DomainError("ord_lead level 0 expects a y-free polynomial");
        long o = alpha.ord_x();
        return {o, alpha.coeff(o, 0, 0)};
    }
    const TowerLevel& L = levels.at(static_cast<std::size_t>(level_i - 1));
    BiPoly base = (level_i == 1) ? BiPoly::variable_y()
                                 : levels.at(static_cast<std::size_t>(level_i - 2)).h;
    long m_base = (level_i == 1) ? 0 : levels.at(static_cast<std::size_t>(level_i - 2)).m_h_self;
    TschirnExpansion ex = euclid_expand(alpha, base);
    long s = static_cast<long>(ex.coefficients.size()) - 1;
    bool have = false;
    long best_d = 0, best_nu = 0, best_r = 0;
    Rat best_lead;
    for (long idx = 0; idx <= s; ++idx) {
        const BiPoly& coeff = ex.coefficients[static_cast<std::size_t>(idx)];
        if (coeff.is_zero()) continue;
        long r = s - idx;  // power of the base
        OrdLead sub = ord_lead_impl(levels, level_i - 1, coeff);
        long nu = sub.ord + r * m_base;
        long d = L.P.a * nu + L.P.b * r;
        if (!have || d < best_d) {
            have = true;
            best_d = d;
            best_nu = nu;
            best_r = r;
            best_lead = sub.lead;
        } else if (d == best_d) {
            throw DomainError("ord_lead: minimizing vertex not unique (contract violation)");
        }
    }
    if (!have) throw DomainError("ord_lead: empty expansion");
    Rat lead = best_lead * (-L.xi).pow(L.Pprime.a * best_nu + L.Pprime.b * best_r);
    return {best_d, lead};
}

// Skeleton of the local Newton data of f at the current level: corner points
// (nu_j, A-j) with unit leads, from the Tschirnhausen expansion of f.
struct SkeletonPoint {
    long x = 0, y = 0;
    Rat lead;
};

std::vector<SkeletonPoint> skeleton_points(const BuildState& st, const BiPoly& G) {
    int i = static_cast<int>(st.levels.size());
    const TowerLevel& L = st.levels.back();
    long A = G.deg_y() / L.h.deg_y();
    TschirnExpansion ex = euclid_expand(G, L.h);
    if (static_cast<long>(ex.coefficients.size()) != A + 1)
        throw DomainError("unexpected Tschirnhausen expansion length");
    if (!(ex.coefficients[0] == BiPoly::constant(Rat(1))))
        throw GermError("Tschirnhausen expansion is not monic");
    if (A >= 1 && !ex.coefficients[1].is_zero())
        throw DomainError("Tschirnhausen expansion has nonzero second coefficient");
    std::vector<SkeletonPoint> pts;
    pts.push_back({A * L.m_h_self, A, Rat(1)});
    for (long j = 2; j <= A; ++j) {
        const BiPoly& cj = ex.coefficients[static_cast<std::size_t>(j)];
        if (cj.is_zero()) continue;
        OrdLead ol = ord_lead_impl(st.levels, i, cj);
        pts.push_back({ol.ord + (A - j) * L.m_h_self, A - j, ol.lead});
    }
    return pts;
}

// Lower hull of the skeleton corners: the Newton boundary of the local germ.
struct SkeletonHull {
    std::vector<SkeletonPoint> pts;       // all corners
    std::vector<SkeletonPoint> vertices;  // hull, ordered from the left end
    std::vector<Face> faces;
};

SkeletonHull skeleton_hull(const BuildState& st, const BiPoly& G) {
    SkeletonHull out;
    out.pts = skeleton_points(st, G);
    std::vector<SkeletonPoint> sorted = out.pts;
    std::sort(sorted.begin(), sorted.end(),
              [](const SkeletonPoint& a, const SkeletonPoint& b) {
                  return a.x != b.x ? a.x < b.x : a.y < b.y;
              });
    std::vector<SkeletonPoint> cand;
    for (const auto& p : sorted) {
        if (!cand.empty() && cand.back().x == p.x) continue;
        cand.push_back(p);
    }
    auto cross = [](const SkeletonPoint& o, const SkeletonPoint& p, const SkeletonPoint& q) {
        return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x);
    };
    std::vector<SkeletonPoint> hull;
    for (const auto& p : cand) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0)
            hull.pop_back();
        hull.push_back(p);
    }
    long ymin = hull.front().y;
    for (const auto& p : hull) ymin = std::min(ymin, p.y);
    for (const auto& p : hull) {
        out.vertices.push_back(p);
        if (p.y == ymin) break;
    }
    for (std::size_t i = 0; i + 1 < out.vertices.size(); ++i) {
        const auto& A = out.vertices[i];
        const auto& B = out.vertices[i + 1];
        long da = A.y - B.y, db = B.x - A.x;
        long g = std::gcd(da, db);
        Face face;
        face.weight = WeightVector{da / g, db / g};
        face.from = LPoint{A.x, A.y};
        face.to = LPoint{B.x, B.y};
        face.d = face.weight.eval(A.x, A.y);
        out.faces.push_back(face);
    }
    return out;
}

// Face function of a skeleton face: only corner points can sit on a face
// line (unit tails strictly increase every positive weight).
BiPoly skeleton_face_function(const SkeletonHull& hull, const Face& face) {
    BiPoly fn;
    for (const auto& p : hull.pts)
        if (face.weight.eval(p.x, p.y) == face.d) fn += BiPoly::monomial(p.x, p.y, 0, p.lead);
    return fn;
}

// Cross-check the stored local series against the skeleton within the box:
// no stored term may undercut the boundary, and stored terms on the first
// face line must carry exactly the skeleton coefficients.
void cross_check_series(const BuildState& st, const SkeletonHull& hull) {
    if (hull.faces.empty()) return;
    const Face& face = hull.faces.front();
    const TruncSeries& S = st.local_f;
    for (const auto& [mo, c] : S.support()) {
        long v = face.weight.eval(mo.first, mo.second);
        if (v < face.d)
            throw DomainError("stored series term undercuts the skeleton boundary");
        if (v == face.d) {
            bool matched = false;
            for (const auto& p : hull.pts)
                if (p.x == mo.first && p.y == mo.second) {
                    if (p.lead != c)
                        throw DomainError("series face coefficient disagrees with the skeleton");
                    matched = true;
                }
            if (!matched)
                throw DomainError("series face term is not a skeleton corner");
        }
    }
    // left-end agreement whenever the box reaches it
    long m_f = st.levels.back().m_f;
    long A = st.n / prod_chain(st);
    if (m_f <= S.nx() && A <= S.ny()) {
        if (S.coeff(m_f, A) != Rat(1))
            throw DomainError("series left-end coefficient is not 1");
    }
}

// ---- per-level mechanics ---------------------------------------------------

struct FaceRead {
    WeightVector P;
    Rat xi;
    long a = 0;
    long A_next = 0;  // A_{i+2}
    long m_next = 0;  // m_{i+1}(f)
    Face face;
    BiPoly face_fn;
    std::vector<WeightVector> all_faces;
};

FaceRead read_level_face(const BuildState& st, long m_cur, long A_cur) {
    LPoint left{};
    std::vector<Face> faces;
    BiPoly face_fn;
    if (st.levels.empty()) {
        // level 0: the exact polynomial itself
        NewtonPolygon np = newton_polygon_series(st.local_f);
        if (np.vertices.empty()) throw GermError("empty Newton data");
        left = np.vertices.front();
        faces = np.faces;
        if (!faces.empty()) face_fn = face_function_series(faces.front().weight, st.local_f);
    } else {
        // deeper levels: the (4.3.3) skeleton carries the exact boundary;
        // the stored series is checked against it within its box
        SkeletonHull hull = skeleton_hull(st, *st.f);
        left = LPoint{hull.vertices.front().x, hull.vertices.front().y};
        faces = hull.faces;
        if (!faces.empty()) face_fn = skeleton_face_function(hull, faces.front());
        cross_check_series(st, hull);
    }
    if (left.x != m_cur || left.y != A_cur) {
        std::ostringstream os;
        os << "left end of the local Newton boundary is (" << left.x << "," << left.y
           << "), expected (" << m_cur << "," << A_cur << ") — germ not irreducible of the "
              "expected multiplicity";
        throw GermError(os.str());
    }
    if (faces.empty())
        throw GermError("local germ is a pure power (non-reduced input)");
    FaceRead out;
    out.face = faces.front();
    for (const auto& fc : faces) out.all_faces.push_back(fc.weight);
    out.face_fn = face_fn;
    FaceRoot fr = single_root_face(out.face.weight, out.face_fn);
    if (!(fr.c.is_one()) || fr.r != m_cur || fr.s != 0)
        throw GermError("local face function has an unexpected monomial prefactor");
    out.P = fr.weight;
    out.xi = fr.xi;
    out.a = fr.weight.a;
    if (out.a == 1) {
        if (st.levels.empty())
            throw GermError("smooth germ / a_1 = 1: swap coordinates or the germ is smooth");
        throw GermError("face with a = 1 below the top level (germ not irreducible)");
    }
    if (A_cur % out.a != 0 || fr.A != A_cur / out.a)
        throw GermError("face multiplicity does not divide the local degree (germ reducible)");
    out.A_next = A_cur / out.a;
    out.m_next = out.face.weight.eval(left.x, left.y);  // a*m_i + b*A_{i+1}
    return out;
}

WeightVector successor_in(const Subdivision& sd, const WeightVector& P) {
    for (std::size_t i = 0; i + 1 < sd.vertices.size(); ++i)
        if (sd.vertices[i] == P) return sd.vertices[i + 1];
    throw DomainError("weight vector not found in its subdivision");
}

// One strict chart step: monomial pull-back, recenter at -xi, divide out the
// exceptional order, then w = W(u, v). The division keeps the series near
// x-order 0, so boxes stay small along the whole chain. `div` is the known
// exceptional order; pass -1 to use the certified stored order.
TruncSeries chart_step_strict(const TruncSeries& S, const TowerLevel& L, long div, long* took) {
    TruncSeries pulled = substitute_monomial_map(S, L.P, L.Pprime, -L.xi, -1);
    long ord = weight_min_series(E1, pulled);
    if (div >= 0 && ord != div)
        throw DomainError("pull-back order disagrees with the expected exceptional order");
    if (took) *took = ord;
    TruncSeries strict = pulled.divide_by_x_power(ord);
    long out_nx = L.W.nx();
    if (!strict.exact_x()) out_nx = std::min(out_nx, strict.nx());
    return compose_second(strict, L.W, out_nx, L.W.ny());
}

// Strict transport of the approximate root h_ell through levels 1..upto; the
// per-level exceptional orders a_j b_j A_{j+1} / A_{ell+1} are Theorem 4.5
// data. Returns Phi_upto^* h_ell / u^{m_upto(h_ell)}.
TruncSeries transport_h_strict(const BiPoly& h, const std::vector<TowerLevel>& levels, int upto,
                               long A_ell1, long n) {
    TruncSeries S = TruncSeries::from_poly(h);
    long Aj = n;  // A_1
    for (int j = 1; j <= upto; ++j) {
        const TowerLevel& L = levels.at(static_cast<std::size_t>(j - 1));
        long Aj1 = Aj / L.P.a;  // A_{j+1}
        long step = L.P.a * L.P.b * Aj1;
        if (step % A_ell1 != 0) throw DomainError("strict transport step not integral");
        S = chart_step_strict(S, L, step / A_ell1, nullptr);
        Aj = Aj1;
    }
    return S;
}

bool series_is_monomial_v(const TruncSeries& S, long m) {
    // S == u^m v within the box (vacuously true when the box cannot see it)
    if (m > S.nx() || S.ny() < 1) return S.support().empty();
    if (S.support().size() != 1) return false;
    const auto& [mo, c] = *S.support().begin();
    return mo.first == m && mo.second == 1 && c.is_one();
}

Tower build_attempt(const BiPoly& f, const TowerOptions& opts, long scale) {
    if (f.deg_t() > 0) throw DomainError("build_tower expects coefficients in Q");
    long n = f.deg_y();
    if (!f.is_monic_in_y()) throw DomainError("build_tower: f not monic in y");
    if (n < 2) throw GermError("smooth germ / a_1 = 1: deg_y f < 2");
    if (!f.coeff(0, 0, 0).is_zero()) throw GermError("germ does not pass through the origin");
    {
        NewtonPolygon np = newton_polygon(f);
        if (!(np.vertices.front() == LPoint{0, n}))
            throw GermError("Newton boundary does not start at (0, n): unit factor or x | f");
    }

    BuildState st;
    st.f = &f;
    st.n = n;
    st.scale = scale;
    st.refinement_extra = opts.refinement_extra;
    st.local_f = TruncSeries::from_poly(f);
    st.local_strict = st.local_f;

    while (true) {
        long chain = prod_chain(st);
        long A_cur = n / chain;
        long m_cur = st.levels.empty() ? 0 : st.levels.back().m_f;
        if (A_cur == 1) break;

        FaceRead fr = [&]{ StageTimer _t("read_face"); return read_level_face(st, m_cur, A_cur); }();
        long a = fr.P.a;
        long new_chain = chain * a;
        int new_index = static_cast<int>(st.levels.size()) + 1;

        // h_{i+1}, its level-i representation and the (4.4.2)/(4.4.3) face check
        BiPoly h_next = [&]{ StageTimer _t("approx_root"); return approximate_root(f, new_chain).root; }();
        if (m_cur % fr.A_next != 0) throw DomainError("m_i(f) not divisible by A_{i+2}");
        long m_i_h = m_cur / fr.A_next;  // m_i(h_{i+1})
        {
            BiPoly expect = (BiPoly::monomial(0, a, 0, Rat(1)) +
                             BiPoly::monomial(fr.P.b, 0, 0, fr.xi))
                                .mul_monomial(m_i_h, 0, 0, Rat(1));
            BiPoly hface;
            if (st.levels.empty()) {
                hface = weight_data(fr.P, h_next).second;
            } else {
                SkeletonHull hh = skeleton_hull(st, h_next);
                Face f_ish;
                f_ish.weight = fr.P;
                f_ish.d = fr.P.a * m_i_h + fr.P.b * a;
                hface = skeleton_face_function(hh, f_ish);
            }
            if (!(hface == expect))
                throw GermError("approximate root face does not match the germ face data");
        }
        // fan for this modification: anchors are all local face weights
        Subdivision sd = opts.refinement_extra > 0
                             ? perturbed_refinement(fr.all_faces, opts.refinement_extra)
                             : regular_refinement(fr.all_faces);
        WeightVector Pp = successor_in(sd, fr.P);

        long m_h_next = fr.m_next / fr.A_next;  // m_{i+1}(h_{i+1}) by Thm 4.5
        if (fr.m_next % fr.A_next != 0)
            throw DomainError("m_{i+1}(f) not divisible by A_{i+2}");

        TowerLevel lvl;
        lvl.index = new_index;
        lvl.P = fr.P;
        lvl.Pprime = Pp;
        lvl.xi = fr.xi;
        lvl.h = h_next;
        lvl.m_f = fr.m_next;
        lvl.m_h_self = m_h_next;
        lvl.subdivision = sd;

        // strict level-i representation of h_{i+1} and its chart data
        TruncSeries local_h_strict =
            [&] {
                StageTimer _t("transport_h");
                return st.levels.empty()
                           ? TruncSeries::from_poly(h_next)
                           : transport_h_strict(h_next, st.levels,
                                                static_cast<int>(st.levels.size()), fr.A_next, n);
            }();
        // V = Phi_{i+1}^* h_{i+1} / u^{m_{i+1}(h_{i+1})}: the strict pull-back
        // sheds exactly a_{i+1} b_{i+1} more exceptional orders
        TruncSeries pulled_h = substitute_monomial_map(local_h_strict, fr.P, Pp, -fr.xi, -1);
        long hstep = fr.P.a * fr.P.b;
        if (!pulled_h.exact_x() && pulled_h.nx() < hstep)
            throw PrecisionExhausted("pull-back of the approximate root lost its leading order");
        if (pulled_h.ord_x() != hstep)
            throw DomainError("m_{i+1}(h) disagrees with the stored pull-back order");
        TruncSeries V = pulled_h.divide_by_x_power(hstep);
        if (!V.coeff(0, 0).is_zero())
            throw DomainError("chart recentering is off the strict transform (sign error?)");
        if (V.coeff(0, 1).is_zero())
            throw DomainError("normalized pull-back is not a local coordinate");

        // box targets (strict coordinates: everything lives near x-order 0)
        long target_nx, target_ny;
        if (fr.A_next == 1) {
            target_nx = scale * 2 * n;
            target_ny = scale * 4;
        } else {
            target_nx = scale * 2 * (n + fr.P.b);
            target_ny = scale * (fr.A_next + 2);
        }
        long v_avail = V.exact_x() ? target_nx : V.nx();
        long w_nx = std::min(target_nx, v_avail);
        TruncSeries W = [&] {
            StageTimer _t("invert_W");
            return series_compose_invert(V.clipped(w_nx, V.ny()), w_nx, target_ny);
        }();
        lvl.W = W;

        TruncSeries pulled_f = substitute_monomial_map(st.local_strict, fr.P, Pp, -fr.xi, -1);
        long fstep = fr.P.a * fr.P.b * fr.A_next;
        if (!pulled_f.exact_x() && pulled_f.nx() < fstep)
            throw PrecisionExhausted("pull-back of f lost its leading order");
        if (pulled_f.ord_x() != fstep)
            throw DomainError("m_{i+1}(f) disagrees with the stored pull-back order");
        TruncSeries strict_f = pulled_f.divide_by_x_power(fstep);
        long f_avail = strict_f.exact_x() ? w_nx : std::min(strict_f.nx(), w_nx);
        TruncSeries local_strict_next = [&] {
            StageTimer _t("compose_f");
            return compose_second(strict_f, W, f_avail, target_ny);
        }();
        if (fr.A_next == 1) {
            // (4.5.1): the strict transform at the top level is exactly v
            if (!series_is_monomial_v(local_strict_next, 0))
                throw DomainError("final normal form (4.5.1) failed");
            TruncSeries exact_v(0, 1, true, true, 0);
            exact_v.set_coeff(0, 1, Rat(1));
            local_strict_next = exact_v;
        }
        lvl.local_f = local_strict_next.mul_monomial(fr.m_next, 0, Rat(1));

        st.levels.push_back(std::move(lvl));
        st.chain.push_back(new_chain);
        st.local_f = st.levels.back().local_f;
        st.local_strict = local_strict_next;

        // pipeline validation: Phi_{i+1}^* h_{i+1} / u^m = v exactly within box
        {
            StageTimer _t("validate_442");
            TruncSeries check = chart_step_strict(local_h_strict, st.levels.back(), hstep, nullptr);
            if (!series_is_monomial_v(check, 0))
                throw DomainError("normal form (4.4.2, i = l) failed for the new level");
        }
    }

    Tower t;
    t.f = f;
    t.n = n;
    t.levels = std::move(st.levels);
    int k = t.k();
    t.A.resize(static_cast<std::size_t>(k) + 1);
    t.A[static_cast<std::size_t>(k)] = 1;
    for (int i = k; i >= 1; --i)
        t.A[static_cast<std::size_t>(i - 1)] = t.A[static_cast<std::size_t>(i)] * t.a(i);
    t.puiseux = puiseux_pairs(t);
    return t;
}

}  // namespace

Tower build_tower(const BiPoly& f, const TowerOptions& opts) {
    long scale = opts.initial_scale;
    for (int attempt = 0;; ++attempt) {
        try {
            return build_attempt(f, opts, scale);
        } catch (const PrecisionExhausted&) {
            if (attempt >= opts.max_retries) throw;
            scale *= 2;
        }
    }
}

MultiplicityTable multiplicities(const Tower& t) {
    MultiplicityTable out;
    int k = t.k();
    long closed_sum = 0;
    for (int i = 1; i <= k; ++i) {
        long ai = t.a(i), bi = t.b(i);
        long Ai1 = t.A_of(i + 1);
        closed_sum += ai * bi * Ai1 * Ai1;
        long closed = closed_sum / Ai1;
        long recursion = (i == 1) ? ai * bi * Ai1
                                  : ai * out.m_f[static_cast<std::size_t>(i - 2)] + ai * bi * Ai1;
        if (closed != recursion || recursion != t.m_f(i))
            throw DomainError("multiplicity recursion and closed form disagree");
        out.m_f.push_back(recursion);
    }
    out.m_h.resize(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) {
        auto& row = out.m_h[static_cast<std::size_t>(i - 1)];
        row.assign(static_cast<std::size_t>(k), 0);
        for (int ell = i; ell <= k; ++ell) row[static_cast<std::size_t>(ell - 1)] = t.m_h(i, ell);
        if (row[static_cast<std::size_t>(i - 1)] * t.A_of(i + 1) != t.m_f(i))
            throw DomainError("m_i(h_i) A_{i+1} != m_i(f)");
    }
    return out;
}

std::vector<PuiseuxPair> puiseux_pairs(const Tower& t) {
    std::vector<PuiseuxPair> out;
    int k = t.k();
    if (k == 0) return out;
    long n1 = std::min(t.a(1), t.b(1));
    long m1 = std::max(t.a(1), t.b(1));
    long m_prev = m1;
    if (n1 > 1) out.push_back({n1, m1});
    for (int i = 2; i <= k; ++i) {
        long mi = t.b(i) + t.a(i) * m_prev;
        out.push_back({t.a(i), mi});
        m_prev = mi;
    }
    return out;
}

long milnor_from_puiseux(const std::vector<PuiseuxPair>& pairs) {
    if (pairs.empty()) return 0;
    std::size_t g = pairs.size();
    // characteristic data: beta_0 = prod n_q, e_q = n_{q+1}...n_g, beta_q = m_q e_q
    std::vector<long> e(g + 1, 1);
    for (std::size_t q = g; q >= 1; --q) e[q - 1] = e[q] * pairs[q - 1].n;
    long beta0 = e[0];
    std::vector<long> beta(g + 1, 0);
    for (std::size_t q = 1; q <= g; ++q) beta[q] = pairs[q - 1].m * e[q];
    // semigroup generators
    std::vector<long> vbar(g + 1, 0);
    vbar[0] = beta0;
    vbar[1] = beta[1];
    for (std::size_t q = 1; q + 1 <= g; ++q)
        vbar[q + 1] = pairs[q - 1].n * vbar[q] + beta[q + 1] - beta[q];
    long mu = 1 - beta0;
    for (std::size_t q = 1; q <= g; ++q) mu += (pairs[q - 1].n - 1) * vbar[q];
    return mu;
}

VerifyReport verify_tower(const BiPoly& f, const Tower& t, int alt_refinements) {
    VerifyReport rep;
    auto fail = [&rep](const std::string& msg) {
        rep.ok = false;
        rep.failures.push_back(msg);
    };
    auto pass = [&rep](const std::string& msg) { rep.checks.push_back(msg); };

    int k = t.k();
    // (i) subdivision independence
    for (int extra = 1; extra <= alt_refinements; ++extra) {
        TowerOptions o;
        o.refinement_extra = extra;
        try {
            Tower alt = build_tower(f, o);
            bool same = alt.k() == k;
            for (int i = 1; same && i <= k; ++i)
                same = alt.level(i).P == t.level(i).P && alt.level(i).xi == t.level(i).xi &&
                       alt.m_f(i) == t.m_f(i);
            if (same)
                pass("refinement +" + std::to_string(extra) + ": identical (k, P_i, xi_i, m_i)");
            else
                fail("refinement +" + std::to_string(extra) + ": tower data changed");
        } catch (const Error& e) {
            fail(std::string("alternate refinement rebuild failed: ") + e.what());
        }
    }

    // (ii) normal forms (4.4.2) / (4.5.1) for every pair i <= ell
    for (int i = 1; i <= k; ++i) {
        for (int ell = i; ell <= k; ++ell) {
            const BiPoly& h_ell = (ell == k) ? f : t.level(ell).h;
            try {
                TruncSeries rep_s = transport_to_level(h_ell, t, i);
                if (ell == i) {
                    if (series_is_monomial_v(rep_s, t.m_h(i, i)))
                        pass("Phi_" + std::to_string(i) + "^* h_" + std::to_string(i) +
                             " = u^m v exactly");
                    else
                        fail("normal form failed at i = ell = " + std::to_string(i));
                } else {
                    const TowerLevel& next = t.level(i + 1);
                    long m = t.m_h(i, ell);
                    long expo = t.A_of(i + 2) / t.A_of(ell + 1);
                    BiPoly expect = (BiPoly::monomial(0, next.P.a, 0, Rat(1)) +
                                     BiPoly::monomial(next.P.b, 0, 0, next.xi))
                                        .pow(expo)
                                        .mul_monomial(m, 0, 0, Rat(1));
                    BiPoly got = face_function_series(next.P, rep_s);
                    if (got == expect)
                        pass("(4.4.2) face of Phi_" + std::to_string(i) + "^* h_" +
                             std::to_string(ell));
                    else
                        fail("(4.4.2) face mismatch at i=" + std::to_string(i) +
                             ", ell=" + std::to_string(ell));
                }
            } catch (const Error& e) {
                fail(std::string("(4.4.2) check errored: ") + e.what());
            }
        }
    }

    // (iii) + (iv): for every divisor a of n with a_1...a_{i+1} | a, the first
    // face of Phi_i^* H_a has slope >= b_{i+1}/a_{i+1}, and its face function
    // is the truncated-binomial approximate root
    for (int i = 1; i < k; ++i) {
        long chain_i = t.n / t.A_of(i + 1);  // a_1 ... a_i
        const TowerLevel& next = t.level(i + 1);
        for (long aa = chain_i; aa <= t.n; aa += chain_i) {
            if (t.n % aa != 0) continue;
            try {
                BiPoly Ha = approximate_root(f, aa).root;
                TruncSeries rep_s = transport_to_level(Ha, t, i);
                NewtonPolygon np = newton_polygon_series(rep_s);
                long mHa = weight_min_series(E1, rep_s);
                if (!np.faces.empty()) {
                    const Face& ff = np.faces.front();
                    if (ff.weight.b * next.P.a >= next.P.b * ff.weight.a)
                        pass("(4.3.8) slope bound for H_" + std::to_string(aa) + " at level " +
                             std::to_string(i));
                    else
                        fail("(4.3.8) violated for H_" + std::to_string(aa));
                }
                BiPoly Hface = face_function_series(next.P, rep_s);
                BiPoly Hprime = Hface.divide_exact(BiPoly::monomial(mHa, 0, 0, Rat(1)));
                BiPoly expect =
                    trunc_binomial_root(next.P.a, next.P.b, t.A_of(i + 2), t.n / aa, next.xi);
                if (Hprime == expect)
                    pass("(4.4.6) truncated-binomial root for H_" + std::to_string(aa) +
                         " at level " + std::to_string(i));
                else
                    fail("(4.4.6) mismatch for H_" + std::to_string(aa) + " at level " +
                         std::to_string(i));
            } catch (const Error& e) {
                fail(std::string("(4.4.6) check errored: ") + e.what());
            }
        }
    }
    return rep;
}

TruncSeries transport_to_level(const BiPoly& g, const Tower& t, int upto) {
    if (upto < 0 || upto > t.k()) throw DomainError("transport level out of range");
    return transport_poly(g, t.levels, upto);
}

OrdLead ord_lead(const Tower& t, int level_i, const BiPoly& alpha) {
    return ord_lead_impl(t.levels, level_i, alpha);
}

std::vector<std::pair<LPoint, Rat>> local_skeleton(const Tower& t, int level_i) {
    if (level_i < 1 || level_i > t.k()) throw DomainError("local_skeleton level out of range");
    const TowerLevel& L = t.level(level_i);
    long A = t.A_of(level_i + 1);
    TschirnExpansion ex = euclid_expand(t.f, L.h);
    std::vector<std::pair<LPoint, Rat>> pts;
    pts.emplace_back(LPoint{A * L.m_h_self, A}, Rat(1));
    for (long j = 2; j <= A; ++j) {
        const BiPoly& cj = ex.coefficients[static_cast<std::size_t>(j)];
        if (cj.is_zero()) continue;
        OrdLead ol = ord_lead_impl(t.levels, level_i, cj);
        pts.emplace_back(LPoint{ol.ord + (A - j) * L.m_h_self, A - j}, ol.lead);
    }
    return pts;
}

long weight_min_skeleton(const Tower& t, int level_i, const WeightVector& P) {
    long d = 0;
    bool first = true;
    for (const auto& [pt, lead] : local_skeleton(t, level_i)) {
        long v = P.eval(pt.x, pt.y);
        if (first || v < d) d = v;
        first = false;
    }
    if (first) throw DomainError("empty skeleton");
    return d;
}

TransformProfile strict_transform_profile(const BiPoly& g, const Tower& t) {
    if (g.is_zero()) throw DomainError("strict transform of the zero germ");
    if (g.deg_t() > 0) throw DomainError("strict transform over Q[t]");
    if (!g.coeff(0, 0, 0).is_zero())
        throw DomainError("germ does not pass through the origin");
    TransformProfile out;
    TruncSeries S = TruncSeries::from_poly(g);
    int k = t.k();
    for (int i = 0; i < k; ++i) {
        const TowerLevel& L = t.level(i + 1);
        long d = weight_min_series(L.P, S);
        out.level_d.push_back(d);
        TruncSeries pulled = substitute_monomial_map(S, L.P, L.Pprime, -L.xi, -1);
        long tot = weight_min_series(E1, pulled);
        if (tot != d) throw DomainError("pull-back order disagrees with d(P; g)");
        TruncSeries strict = pulled.divide_by_x_power(tot);
        long out_nx = std::min(strict.exact_x() ? L.W.nx() : strict.nx(), L.W.nx());
        TruncSeries next = compose_second(strict, L.W, out_nx, L.W.ny());
        if (!next.coeff(0, 0).is_zero()) {
            out.depth = i;
            out.separated = true;
            // face data of the level-i strict representative
            NewtonPolygon np = newton_polygon_series(S);
            for (const auto& fc : np.faces) out.faces.push_back(fc.weight);
            if (np.faces.empty()) {
                out.axis = true;
                out.Aexp = np.vertices.front().y;
            } else {
                try {
                    out.face = single_root_face(np.faces.front().weight,
                                                face_function_series(np.faces.front().weight, S));
                } catch (const Error&) {
                    // reducible along the face: weights reported, no single root
                }
            }
            return out;
        }
        S = next;
    }
    out.depth = k;
    out.separated = false;
    // intersection with the smooth transform {v = 0}: ord_u of the v-free part
    long tail = -1;
    for (const auto& [m, c] : S.support())
        if (m.second == 0) tail = tail < 0 ? m.first : std::min(tail, m.first);
    if (tail < 0) {
        if (S.exact_x())
            throw GermError("germ shares the branch of f (infinite intersection)");
        throw PrecisionExhausted("v-free part of the final transform not visible in the box");
    }
    // certify the ord read on the v = 0 slice
    if (!S.exact_x() && S.nx() < tail)
        throw PrecisionExhausted("tail order not certified");
    out.tail_ord = tail;
    return out;
}

}  // namespace curvetower
