#include "curvetower/series.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "curvetower/errors.hpp"

namespace curvetower {

namespace {
constexpr long kInf = std::numeric_limits<long>::max() / 4;

struct OpStats {
    std::atomic<long> mul_calls{0}, mul_terms{0}, compose_calls{0}, subst_calls{0};
    std::atomic<long> mul_us{0}, compose_us{0}, subst_us{0};
    ~OpStats() {
        if (!std::getenv("CURVETOWER_TRACE")) return;
        fprintf(stderr, "[series] mul: %ld calls %ldus; compose: %ld calls %ldus; subst: %ld calls %ldus; mul term-pairs %ld\n",
                mul_calls.load(), mul_us.load(), compose_calls.load(), compose_us.load(),
                subst_calls.load(), subst_us.load(), mul_terms.load());
    }
};
OpStats g_stats;
struct OpTimer {
    std::atomic<long>& acc;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    explicit OpTimer(std::atomic<long>& a) : acc(a) {}
    ~OpTimer() {
        acc += std::chrono::duration_cast<std::chrono::microseconds>(
                   std::chrono::steady_clock::now() - t0).count();
    }
};
}

TruncSeries TruncSeries::from_poly(const BiPoly& p) {
    if (p.deg_t() > 0) throw DomainError("series over Q[t] are not supported");
    TruncSeries s(std::max(p.deg_x(), 0L), std::max(p.deg_y(), 0L), true, true,
                  std::max(p.ord_x(), 0L));
    for (const auto& [m, c] : p.support()) s.c_[{m.x, m.y}] = c;
    return s;
}

BiPoly TruncSeries::to_poly() const {
    BiPoly p;
    for (const auto& [m, c] : c_) p.set_coeff(m.first, m.second, 0, c);
    return p;
}

Rat TruncSeries::coeff(long ex, long ey) const {
    bool in_x = ex <= nx_, in_y = ey <= ny_;
    if ((in_x || exact_x_) && (in_y || exact_y_)) {
        auto it = c_.find({ex, ey});
        return it == c_.end() ? Rat(0) : it->second;
    }
    throw PrecisionExhausted("series coefficient read outside the truncation box");
}

void TruncSeries::set_coeff(long ex, long ey, const Rat& c) {
    if (ex < 0 || ey < 0) throw DomainError("negative exponent");
    if (ex > nx_ || ey > ny_) throw DomainError("set_coeff outside the box");
    if (c.is_zero())
        c_.erase({ex, ey});
    else
        c_[{ex, ey}] = c;
}

long TruncSeries::ord_x() const {
    long d = -1;
    for (const auto& [m, c] : c_) d = (d < 0) ? m.first : std::min(d, m.first);
    return d;
}

long TruncSeries::deg_y_stored() const {
    long d = -1;
    for (const auto& [m, c] : c_) d = std::max(d, m.second);
    return d;
}

TruncSeries TruncSeries::clipped(long nx, long ny) const {
    nx = std::min(nx, nx_);
    ny = std::min(ny, ny_);
    TruncSeries out(nx, ny, exact_x_, exact_y_, min_xord_);
    bool dropped_x = false, dropped_y = false;
    for (const auto& [m, c] : c_) {
        if (m.first > nx) { dropped_x = true; continue; }
        if (m.second > ny) { dropped_y = true; continue; }
        out.c_[m] = c;
    }
    if (dropped_x) out.exact_x_ = false;
    if (dropped_y) out.exact_y_ = false;
    return out;
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries out(nx_, ny_, exact_x_, exact_y_, min_xord_);
    for (const auto& [m, c] : c_) out.c_[m] = -c;
    return out;
}

TruncSeries combine_like(const TruncSeries& a, const TruncSeries& b, int sign) {
    long effx = std::min(a.exact_x_ ? kInf : a.nx_, b.exact_x_ ? kInf : b.nx_);
    long effy = std::min(a.exact_y_ ? kInf : a.ny_, b.exact_y_ ? kInf : b.ny_);
    bool ex = a.exact_x_ && b.exact_x_, ey = a.exact_y_ && b.exact_y_;
    long nx = ex ? std::max(a.nx_, b.nx_) : effx;
    long ny = ey ? std::max(a.ny_, b.ny_) : effy;
    TruncSeries out(nx, ny, ex, ey, std::min(a.min_xord_, b.min_xord_));
    for (const auto& [m, c] : a.c_)
        if (m.first <= nx && m.second <= ny) out.c_[m] = c;
    for (const auto& [m, c] : b.c_) {
        if (m.first > nx || m.second > ny) continue;
        auto it = out.c_.find(m);
        Rat v = sign > 0 ? c : -c;
        if (it == out.c_.end()) {
            if (!v.is_zero()) out.c_[m] = v;
        } else {
            it->second += v;
            if (it->second.is_zero()) out.c_.erase(it);
        }
    }
    return out;
}

TruncSeries add(const TruncSeries& a, const TruncSeries& b) { return combine_like(a, b, +1); }
TruncSeries sub(const TruncSeries& a, const TruncSeries& b) { return combine_like(a, b, -1); }

TruncSeries mul(const TruncSeries& a, const TruncSeries& b) {
    ++g_stats.mul_calls;
    g_stats.mul_terms += (long)a.support().size() * (long)b.support().size();
    OpTimer _t(g_stats.mul_us);
    long effx = std::min(a.exact_x() ? kInf : a.nx(), b.exact_x() ? kInf : b.nx());
    long effy = std::min(a.exact_y() ? kInf : a.ny(), b.exact_y() ? kInf : b.ny());
    bool ex = a.exact_x() && b.exact_x(), ey = a.exact_y() && b.exact_y();
    long nx = ex ? a.nx() + b.nx() : effx;
    long ny = ey ? a.ny() + b.ny() : effy;
    TruncSeries out(nx, ny, ex, ey, a.min_xord() + b.min_xord());
    TruncSeries::Support acc;
    for (const auto& [ma, ca] : a.support()) {
        if (ma.first > nx || ma.second > ny) continue;
        for (const auto& [mb, cb] : b.support()) {
            long x = ma.first + mb.first, y = ma.second + mb.second;
            if (x > nx || y > ny) continue;
            auto it = acc.find({x, y});
            if (it == acc.end()) {
                Rat p = ca * cb;
                if (!p.is_zero()) acc[{x, y}] = p;
            } else {
                it->second += ca * cb;
                if (it->second.is_zero()) acc.erase(it);
            }
        }
    }
    for (auto& [m, c] : acc) out.set_coeff(m.first, m.second, c);
    return out;
}

TruncSeries TruncSeries::scaled(const Rat& r) const {
    TruncSeries out(nx_, ny_, exact_x_, exact_y_, min_xord_);
    if (r.is_zero()) return out;
    for (const auto& [m, c] : c_) out.c_[m] = c * r;
    return out;
}

TruncSeries TruncSeries::mul_monomial(long ex, long ey, const Rat& c) const {
    TruncSeries out(nx_ + ex, ny_ + ey, exact_x_, exact_y_, min_xord_ + ex);
    if (c.is_zero()) return out;
    for (const auto& [m, v] : c_) out.c_[{m.first + ex, m.second + ey}] = v * c;
    return out;
}

TruncSeries TruncSeries::divide_by_x_power(long m) const {
    for (const auto& [mo, c] : c_)
        if (mo.first < m) throw DomainError("divide_by_x_power: term below the divisor order");
    TruncSeries out(nx_ - m, ny_, exact_x_, exact_y_, std::max(min_xord_ - m, 0L));
    for (const auto& [mo, c] : c_) out.c_[{mo.first - m, mo.second}] = c;
    return out;
}

bool TruncSeries::box_equal(const TruncSeries& o) const {
    long cx = std::min(nx_, o.nx_), cy = std::min(ny_, o.ny_);
    for (const auto& [m, c] : c_) {
        if (m.first > cx || m.second > cy) continue;
        auto it = o.c_.find(m);
        if (it == o.c_.end() || it->second != c) return false;
    }
    for (const auto& [m, c] : o.c_) {
        if (m.first > cx || m.second > cy) continue;
        if (c_.find(m) == c_.end()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

TruncSeries substitute_monomial_map(const TruncSeries& f, const WeightVector& P,
                                    const WeightVector& Pp, const Rat& shift, long target_nx) {
    ++g_stats.subst_calls;
    OpTimer _t(g_stats.subst_us);
    if (det(P, Pp) != 1) throw DomainError("chart matrix is not unimodular");
    if (P.a < 0 || P.b < 0 || Pp.a < 0 || Pp.b < 0)
        throw DomainError("chart matrix entries must be nonnegative");

    // exactness bound: terms missing from f map to x-exponents at or beyond
    // the nearest missing corner
    long bound = kInf;
    if (!f.exact_x()) bound = std::min(bound, P.a * (f.nx() + 1));
    if (!f.exact_y()) bound = std::min(bound, P.a * f.min_xord() + P.b * (f.ny() + 1));
    bool fully_exact = f.exact_x() && f.exact_y();
    long out_nx;
    if (fully_exact) {
        out_nx = target_nx >= 0 ? target_nx : P.a * f.nx() + P.b * f.ny();
    } else {
        long certified = bound - 1;
        if (target_nx >= 0 && target_nx > certified)
            throw PrecisionExhausted("substitute_monomial_map: requested box exceeds certified range");
        out_nx = target_nx >= 0 ? target_nx : certified;
    }

    // group surviving terms by their y_sigma exponent, then recenter
    std::map<long, std::map<long, Rat>> rows;  // y_sigma-exp -> (x-exp -> coeff)
    long max_ys = 0;
    long out_minx = fully_exact ? kInf : bound;
    for (const auto& [m, c] : f.support()) {
        long xs = P.a * m.first + P.b * m.second;
        out_minx = std::min(out_minx, xs);
        if (xs > out_nx) continue;
        long ys = Pp.a * m.first + Pp.b * m.second;
        auto& row = rows[ys];
        auto it = row.find(xs);
        if (it == row.end())
            row[xs] = c;
        else {
            it->second += c;
            if (it->second.is_zero()) row.erase(it);
        }
        max_ys = std::max(max_ys, ys);
    }
    if (out_minx == kInf) out_minx = out_nx + 1;  // stored empty, fully exact zero

    // powers of (w + shift) computed incrementally
    std::vector<std::vector<Rat>> wpow(static_cast<std::size_t>(max_ys + 1));
    wpow[0] = {Rat(1)};
    for (long e = 1; e <= max_ys; ++e) {
        const auto& prev = wpow[static_cast<std::size_t>(e - 1)];
        std::vector<Rat> cur(static_cast<std::size_t>(e + 1), Rat(0));
        for (std::size_t i = 0; i < prev.size(); ++i) {
            cur[i] += prev[i] * shift;
            cur[i + 1] += prev[i];
        }
        wpow[static_cast<std::size_t>(e)] = std::move(cur);
    }

    long out_ny = 0;
    TruncSeries::Support acc;
    for (const auto& [ys, row] : rows) {
        const auto& pw = wpow[static_cast<std::size_t>(ys)];
        for (const auto& [xs, c] : row) {
            for (long k = 0; k < static_cast<long>(pw.size()); ++k) {
                if (pw[static_cast<std::size_t>(k)].is_zero()) continue;
                Rat v = c * pw[static_cast<std::size_t>(k)];
                auto it = acc.find({xs, k});
                if (it == acc.end())
                    acc[{xs, k}] = v;
                else {
                    it->second += v;
                    if (it->second.is_zero()) acc.erase(it);
                }
            }
        }
        out_ny = std::max(out_ny, ys);
    }

    TruncSeries out(out_nx, out_ny, fully_exact, true, std::min(out_minx, out_nx + 1));
    for (auto& [m, c] : acc) out.set_coeff(m.first, m.second, c);
    return out;
}

TruncSeries substitute_monomial_map(const BiPoly& f, const WeightVector& P,
                                    const WeightVector& Pp, const Rat& shift, long target_nx) {
    return substitute_monomial_map(TruncSeries::from_poly(f), P, Pp, shift, target_nx);
}

TruncSeries compose_second(const TruncSeries& A, const TruncSeries& S, long out_nx, long out_ny) {
    ++g_stats.compose_calls;
    OpTimer _t(g_stats.compose_us);
    if (!A.exact_y())
        throw DomainError("compose_second requires the outer series exact in its second variable");
    if (!S.coeff(0, 0).is_zero())
        throw DomainError("compose_second: inner series must vanish at the origin");

    long effx = std::min(A.exact_x() ? kInf : A.nx(), S.exact_x() ? kInf : S.nx());
    long effy = S.exact_y() ? kInf : S.ny();
    if (out_nx > effx)
        throw PrecisionExhausted("compose_second: requested x-box exceeds certified range");
    if (out_ny > effy)
        throw PrecisionExhausted("compose_second: requested y-box exceeds certified range");
    bool ex = A.exact_x() && S.exact_x();
    bool ey = S.exact_y();

    // rows of A by w-degree; rows beyond the reachable cap cannot land in the
    // box: every S-factor adds v >= 1 or (if v-free) x >= rho
    long rho = kInf;
    for (const auto& [m, c] : S.support())
        if (m.second == 0) rho = std::min(rho, m.first);
    long m_cap = out_ny + (rho >= kInf ? 0 : (rho > 0 ? out_nx / rho : out_nx));
    long M = std::min(A.deg_y_stored(), m_cap);
    std::vector<TruncSeries> rows(static_cast<std::size_t>(std::max(M, 0L) + 1));
    for (auto& r : rows) r = TruncSeries(out_nx, 0, ex, true, 0);
    for (const auto& [m, c] : A.support()) {
        if (m.first > out_nx || m.second > M) continue;
        rows[static_cast<std::size_t>(m.second)].set_coeff(m.first, 0, c);
    }

    TruncSeries acc(out_nx, out_ny, ex, ey, 0);
    TruncSeries Sc = S.clipped(out_nx, out_ny);
    for (long m = M; m >= 0; --m) {
        if (m != M) acc = mul(acc, Sc).clipped(out_nx, out_ny);
        acc = add(acc, rows[static_cast<std::size_t>(m)]);
        acc = acc.clipped(out_nx, out_ny);
    }
    TruncSeries out(out_nx, out_ny, ex, ey, A.min_xord());
    for (const auto& [m, c] : acc.support()) out.set_coeff(m.first, m.second, c);
    return out;
}

TruncSeries series_compose_invert(const TruncSeries& V, long out_nx, long out_ny) {
    if (!V.exact_y())
        throw DomainError("series_compose_invert: input must be exact in its second variable");
    if (out_ny < 1) throw DomainError("series_compose_invert: y-box must admit the v term");
    if (!V.coeff(0, 0).is_zero())
        throw DomainError("series_compose_invert: v(0,0) != 0 (not a local coordinate)");
    Rat c = V.coeff(0, 1);
    if (c.is_zero())
        throw DomainError("series_compose_invert: dv/dw vanishes at the origin");
    long effx = V.exact_x() ? kInf : V.nx();
    if (out_nx > effx)
        throw PrecisionExhausted("series_compose_invert: requested box exceeds the input box");

    TruncSeries v_series(0, 1, true, true, 0);
    v_series.set_coeff(0, 1, Rat(1));

    auto rebox = [&](const TruncSeries& S, long bx) {
        TruncSeries out(bx, out_ny, false, false, 0);
        for (const auto& [m, cc] : S.support())
            if (m.first <= bx) out.set_coeff(m.first, m.second, cc);
        return out;
    };

    // x^0 slice: univariate inverse of V(0, w) by the order-by-order fixed
    // point (cheap: the box is one-dimensional)
    TruncSeries W(0, out_ny, false, false, 0);
    {
        TruncSeries V0(0, V.deg_y_stored(), false, true, 0);
        for (const auto& [m, cc] : V.support())
            if (m.first == 0) V0.set_coeff(0, m.second, cc);
        TruncSeries R0 = V0;
        TruncSeries cw(0, 1, true, true, 0);
        cw.set_coeff(0, 1, c);
        R0 = sub(R0, cw);
        for (long r = 0; r <= out_ny; ++r) {
            TruncSeries Rw = R0.stored_zero() ? TruncSeries(0, out_ny, false, false, 0)
                                              : compose_second(R0, W, 0, out_ny);
            TruncSeries next = sub(v_series, Rw).scaled(c.inv()).clipped(0, out_ny);
            TruncSeries Wn(0, out_ny, false, false, 0);
            for (const auto& [m, cc] : next.support()) Wn.set_coeff(m.first, m.second, cc);
            if (Wn.box_equal(W)) break;
            W = Wn;
        }
        W = rebox(W, out_nx);
    }

    // Newton in the x-precision: W correct mod x^s doubles per step
    TruncSeries Vw(V.nx(), std::max(V.deg_y_stored() - 1, 0L), V.exact_x(), true, 0);
    for (const auto& [m, cc] : V.support())
        if (m.second >= 1) Vw.set_coeff(m.first, m.second - 1, cc * Rat(m.second));
    // reciprocal of V_w(0, W0(v)): refine a constant seed on the x^0 slice
    TruncSeries Dinv(0, out_ny, false, false, 0);
    Dinv.set_coeff(0, 0, c.inv());
    {
        TruncSeries D0 = compose_second(Vw, rebox(W, 0), 0, out_ny);
        for (long r = 0; r <= out_ny + 1; ++r) {
            TruncSeries prod = mul(D0, Dinv);
            TruncSeries two(0, 0, true, true, 0);
            two.set_coeff(0, 0, Rat(2));
            TruncSeries next = mul(Dinv, sub(two, prod)).clipped(0, out_ny);
            TruncSeries Dn(0, out_ny, false, false, 0);
            for (const auto& [m, cc] : next.support()) Dn.set_coeff(m.first, m.second, cc);
            if (Dn.box_equal(Dinv)) break;
            Dinv = Dn;
        }
        Dinv = rebox(Dinv, out_nx);
    }
    for (long s = 1; s <= out_nx;) {
        long s2 = std::min(2 * s, out_nx + 1);
        long bx = s2 - 1;
        TruncSeries Wb = rebox(W, bx);
        TruncSeries E = sub(compose_second(V.clipped(bx, V.ny()), Wb, bx, out_ny), v_series);
        TruncSeries D = compose_second(Vw.clipped(bx, Vw.ny()), Wb, bx, out_ny);
        // one reciprocal refinement keeps Dinv in step with the doubling
        {
            TruncSeries two(0, 0, true, true, 0);
            two.set_coeff(0, 0, Rat(2));
            TruncSeries Di = rebox(Dinv, bx);
            Di = mul(Di, sub(two, mul(D, Di))).clipped(bx, out_ny);
            Dinv = rebox(Di, out_nx);
        }
        TruncSeries Wn = sub(Wb, mul(E, rebox(Dinv, bx))).clipped(bx, out_ny);
        W = rebox(Wn, out_nx);
        s = s2;
    }

    // certification: V(x, W) must reproduce v on the whole box
    TruncSeries check = compose_second(V, W, out_nx, out_ny);
    TruncSeries target(out_nx, out_ny, false, false, 0);
    target.set_coeff(0, 1, Rat(1));
    if (!check.box_equal(target))
        throw PrecisionExhausted("series_compose_invert: inverse failed certification");
    return W;
}

// ---------------------------------------------------------------------------

namespace {

long series_cross(const std::pair<long, long>& o, const std::pair<long, long>& p,
                  const std::pair<long, long>& q) {
    return (p.first - o.first) * (q.second - o.second) -
           (p.second - o.second) * (q.first - o.first);
}

void certify_weight(const WeightVector& P, long d, const TruncSeries& s, bool strict) {
    if (!s.exact_x()) {
        long corner = P.a * (s.nx() + 1);
        if (strict ? corner <= d : corner < d)
            throw PrecisionExhausted("weight " + P.str() + " not certified within x-box");
    }
    if (!s.exact_y()) {
        long corner = P.a * s.min_xord() + P.b * (s.ny() + 1);
        if (strict ? corner <= d : corner < d)
            throw PrecisionExhausted("weight " + P.str() + " not certified within y-box");
    }
}

}  // namespace

long weight_min_series(const WeightVector& P, const TruncSeries& s) {
    if (s.stored_zero()) throw PrecisionExhausted("weight_min_series on an empty box");
    long d = 0;
    bool first = true;
    for (const auto& [m, c] : s.support()) {
        long v = P.eval(m.first, m.second);
        if (first || v < d) d = v;
        first = false;
    }
    certify_weight(P, d, s, /*strict=*/false);
    return d;
}

BiPoly face_function_series(const WeightVector& P, const TruncSeries& s) {
    long d = weight_min_series(P, s);
    certify_weight(P, d, s, /*strict=*/true);
    BiPoly face;
    for (const auto& [m, c] : s.support())
        if (P.eval(m.first, m.second) == d) face.set_coeff(m.first, m.second, 0, c);
    return face;
}

NewtonPolygon newton_polygon_series(const TruncSeries& s) {
    if (s.stored_zero()) throw PrecisionExhausted("newton_polygon_series on an empty box");
    // lower hull of the stored support
    std::vector<std::pair<long, long>> cand;
    {
        std::vector<std::pair<long, long>> pts;
        pts.reserve(s.support().size());
        for (const auto& [m, c] : s.support()) pts.push_back(m);
        std::sort(pts.begin(), pts.end());
        for (const auto& p : pts) {
            if (!cand.empty() && cand.back().first == p.first) continue;
            cand.push_back(p);
        }
    }
    std::vector<std::pair<long, long>> hull;
    for (const auto& p : cand) {
        while (hull.size() >= 2 && series_cross(hull[hull.size() - 2], hull.back(), p) <= 0)
            hull.pop_back();
        hull.push_back(p);
    }
    long ymin = hull.front().second;
    for (const auto& p : hull) ymin = std::min(ymin, p.second);
    std::vector<std::pair<long, long>> boundary;
    for (const auto& p : hull) {
        boundary.push_back(p);
        if (p.second == ymin) break;
    }

    NewtonPolygon np;
    for (const auto& p : boundary) np.vertices.push_back(LPoint{p.first, p.second});
    for (std::size_t i = 0; i + 1 < boundary.size(); ++i) {
        LPoint A{boundary[i].first, boundary[i].second};
        LPoint B{boundary[i + 1].first, boundary[i + 1].second};
        long da = A.y - B.y, db = B.x - A.x;
        long g = std::gcd(da, db);
        Face face;
        face.weight = WeightVector{da / g, db / g};
        face.from = A;
        face.to = B;
        face.d = face.weight.eval(A.x, A.y);
        certify_weight(face.weight, face.d, s, /*strict=*/true);
        np.faces.push_back(face);
    }
    // the left-end vertex is an ord_x read: require the certified lower bound
    // to meet the stored order, else the vertex itself is unconfirmed
    if (!s.exact_y() && s.min_xord() < boundary.front().first)
        throw PrecisionExhausted("left-end vertex not certified (x-order bound too weak)");
    return np;
}

}  // namespace curvetower
