#include "curvetower/bipoly.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "curvetower/errors.hpp"

namespace curvetower {

BiPoly BiPoly::constant(const Rat& r) { return monomial(0, 0, 0, r); }

BiPoly BiPoly::monomial(long ex, long ey, long et, const Rat& c) {
    BiPoly p;
    if (ex < 0 || ey < 0 || et < 0) throw DomainError("negative exponent in monomial");
    if (!c.is_zero()) p.c_[Mono{ex, ey, et}] = c;
    return p;
}

Rat BiPoly::coeff(long ex, long ey, long et) const {
    auto it = c_.find(Mono{ex, ey, et});
    return it == c_.end() ? Rat(0) : it->second;
}

void BiPoly::set_coeff(long ex, long ey, long et, const Rat& c) {
    if (ex < 0 || ey < 0 || et < 0) throw DomainError("negative exponent");
    if (c.is_zero())
        c_.erase(Mono{ex, ey, et});
    else
        c_[Mono{ex, ey, et}] = c;
}

long BiPoly::deg_x() const {
    long d = -1;
    for (const auto& [m, c] : c_) d = std::max(d, m.x);
    return d;
}

long BiPoly::deg_y() const {
    long d = -1;
    for (const auto& [m, c] : c_) d = std::max(d, m.y);
    return d;
}

long BiPoly::deg_t() const {
    long d = 0;
    for (const auto& [m, c] : c_) d = std::max(d, m.t);
    return d;
}

long BiPoly::deg_total() const {
    long d = -1;
    for (const auto& [m, c] : c_) d = std::max(d, m.x + m.y);
    return d;
}

long BiPoly::ord_x() const {
    long d = -1;
    for (const auto& [m, c] : c_) d = (d < 0) ? m.x : std::min(d, m.x);
    return d;
}

bool BiPoly::is_monic_in_y() const {
    long n = deg_y();
    if (n < 0) return false;
    BiPoly lead = coeff_of_y(n);
    return lead.term_count() == 1 && lead.coeff(0, 0, 0).is_one();
}

BiPoly BiPoly::operator-() const {
    BiPoly r;
    for (const auto& [m, c] : c_) r.c_[m] = -c;
    return r;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    for (const auto& [m, c] : o.c_) {
        auto it = c_.find(m);
        if (it == c_.end()) {
            c_[m] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
    for (const auto& [m, c] : o.c_) {
        auto it = c_.find(m);
        if (it == c_.end()) {
            c_[m] = -c;
        } else {
            it->second -= c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ma, ca] : a.c_) {
        for (const auto& [mb, cb] : b.c_) {
            Mono m{ma.x + mb.x, ma.y + mb.y, ma.t + mb.t};
            auto it = r.c_.find(m);
            if (it == r.c_.end()) {
                Rat p = ca * cb;
                if (!p.is_zero()) r.c_[m] = p;
            } else {
                it->second += ca * cb;
                if (it->second.is_zero()) r.c_.erase(it);
            }
        }
    }
    return r;
}

BiPoly BiPoly::scaled(const Rat& r) const {
    BiPoly out;
    if (r.is_zero()) return out;
    for (const auto& [m, c] : c_) out.c_[m] = c * r;
    return out;
}

BiPoly BiPoly::pow(long e) const {
    if (e < 0) throw DomainError("negative power of a polynomial");
    BiPoly acc = constant(Rat(1));
    BiPoly base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = (e >>= 1) ? base * base : base;
    }
    return acc;
}

BiPoly BiPoly::mul_monomial(long ex, long ey, long et, const Rat& c) const {
    BiPoly r;
    if (c.is_zero()) return r;
    for (const auto& [m, v] : c_) r.c_[Mono{m.x + ex, m.y + ey, m.t + et}] = v * c;
    return r;
}

BiPoly BiPoly::coeff_of_y(long j) const {
    BiPoly r;
    for (const auto& [m, c] : c_)
        if (m.y == j) r.c_[Mono{m.x, 0, m.t}] = c;
    return r;
}

BiPoly BiPoly::coeff_of_x(long i) const {
    BiPoly r;
    for (const auto& [m, c] : c_)
        if (m.x == i) r.c_[Mono{0, m.y, m.t}] = c;
    return r;
}

std::vector<BiPoly> BiPoly::y_coeffs() const {
    long n = deg_y();
    std::vector<BiPoly> out(static_cast<std::size_t>(std::max(n + 1, 1L)));
    for (const auto& [m, c] : c_)
        out[static_cast<std::size_t>(m.y)].c_[Mono{m.x, 0, m.t}] = c;
    return out;
}

BiPoly BiPoly::divide_exact(const BiPoly& divisor) const {
    if (divisor.is_zero()) throw DomainError("division by zero polynomial");
    BiPoly rem = *this, quot;
    // leading term under the Mono ordering; coefficient division is exact over Q
    const auto& dl = *divisor.c_.rbegin();
    while (!rem.is_zero()) {
        const auto& rl = *rem.c_.rbegin();
        Mono q{rl.first.x - dl.first.x, rl.first.y - dl.first.y, rl.first.t - dl.first.t};
        if (q.x < 0 || q.y < 0 || q.t < 0) throw DomainError("non-exact polynomial division");
        Rat qc = rl.second / dl.second;
        quot.c_[q] = qc;
        rem -= divisor.mul_monomial(q.x, q.y, q.t, qc);
    }
    return quot;
}

std::pair<BiPoly, BiPoly> BiPoly::divmod_y_monic(const BiPoly& divisor) const {
    long a = divisor.deg_y();
    if (a < 0 || !divisor.is_monic_in_y())
        throw DomainError("divmod_y_monic: divisor not monic in y");
    BiPoly rem = *this, quot;
    long dy = rem.deg_y();
    while (dy >= a) {
        BiPoly lead = rem.coeff_of_y(dy);  // in x,t only
        BiPoly term = lead.mul_monomial(0, dy - a, 0, Rat(1));
        quot += term;
        rem -= term * divisor;
        long ndy = rem.deg_y();
        if (ndy >= dy && !rem.coeff_of_y(dy).is_zero())
            throw DomainError("divmod_y_monic failed to reduce degree");
        dy = ndy;
    }
    return {quot, rem};
}

BiPoly BiPoly::subst(const BiPoly& px, const BiPoly& py) const {
    // Horner over y, powers of px cached.
    long dx = std::max(deg_x(), 0L);
    std::vector<BiPoly> xpow(static_cast<std::size_t>(dx + 1));
    xpow[0] = constant(Rat(1));
    for (long i = 1; i <= dx; ++i) xpow[static_cast<std::size_t>(i)] = xpow[static_cast<std::size_t>(i - 1)] * px;

    auto ycs = y_coeffs();
    BiPoly acc;
    for (auto it = ycs.rbegin(); it != ycs.rend(); ++it) {
        acc = acc * py;
        BiPoly c;
        for (const auto& [m, v] : it->support())
            c += xpow[static_cast<std::size_t>(m.x)].mul_monomial(0, 0, m.t, v);
        acc += c;
    }
    return acc;
}

BiPoly BiPoly::eval_t(const Rat& tau) const {
    BiPoly r;
    for (const auto& [m, c] : c_) {
        Rat v = c * tau.pow(m.t);
        if (v.is_zero()) continue;
        auto it = r.c_.find(Mono{m.x, m.y, 0});
        if (it == r.c_.end())
            r.c_[Mono{m.x, m.y, 0}] = v;
        else {
            it->second += v;
            if (it->second.is_zero()) r.c_.erase(it);
        }
    }
    return r;
}

Rat BiPoly::eval(const Rat& x0, const Rat& y0) const {
    Rat acc = 0;
    for (const auto& [m, c] : c_) {
        if (m.t != 0) throw DomainError("eval on a polynomial with t-dependence");
        acc += c * x0.pow(m.x) * y0.pow(m.y);
    }
    return acc;
}

BiPoly BiPoly::derivative_x() const {
    BiPoly r;
    for (const auto& [m, c] : c_)
        if (m.x > 0) r.c_[Mono{m.x - 1, m.y, m.t}] = c * Rat(m.x);
    return r;
}

BiPoly BiPoly::derivative_y() const {
    BiPoly r;
    for (const auto& [m, c] : c_)
        if (m.y > 0) r.c_[Mono{m.x, m.y - 1, m.t}] = c * Rat(m.y);
    return r;
}

BiPoly BiPoly::swap_xy() const {
    BiPoly r;
    for (const auto& [m, c] : c_) r.c_[Mono{m.y, m.x, m.t}] = c;
    return r;
}

namespace {

void append_tpoly(std::string& out, const std::map<long, Rat>& tc, bool need_parens) {
    // univariate display in t, descending degree
    std::ostringstream os;
    bool first = true;
    for (auto it = tc.rbegin(); it != tc.rend(); ++it) {
        const Rat& c = it->second;
        if (!first) os << (c.sign() < 0 ? " - " : " + ");
        else if (c.sign() < 0) os << "-";
        Rat a = c.abs();
        if (it->first == 0) {
            os << a.str();
        } else {
            if (!a.is_one()) os << a.str() << "*";
            os << "t";
            if (it->first > 1) os << "^" << it->first;
        }
        first = false;
    }
    std::string s = os.str();
    if (need_parens && tc.size() > 1) out += "(" + s + ")";
    else out += s;
}

}  // namespace

std::string BiPoly::str(const std::string& xname, const std::string& yname) const {
    if (c_.empty()) return "0";
    // group terms by (x,y) monomial; order graded lex, x before y, descending
    std::map<std::pair<long, long>, std::map<long, Rat>> groups;
    for (const auto& [m, c] : c_) groups[{m.x, m.y}][m.t] = c;
    std::vector<std::pair<long, long>> keys;
    keys.reserve(groups.size());
    for (const auto& [k, v] : groups) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        long da = a.first + a.second, db = b.first + b.second;
        if (da != db) return da > db;
        return a.first > b.first;
    });

    std::string out;
    bool first = true;
    for (const auto& k : keys) {
        const auto& tc = groups[k];
        bool pure_rat = (tc.size() == 1 && tc.begin()->first == 0);
        std::string monostr;
        if (k.first > 0) {
            monostr += xname;
            if (k.first > 1) monostr += "^" + std::to_string(k.first);
        }
        if (k.second > 0) {
            if (!monostr.empty()) monostr += "*";
            monostr += yname;
            if (k.second > 1) monostr += "^" + std::to_string(k.second);
        }
        if (pure_rat) {
            Rat c = tc.begin()->second;
            if (!first) out += (c.sign() < 0 ? " - " : " + ");
            else if (c.sign() < 0) out += "-";
            Rat a = c.abs();
            if (monostr.empty()) out += a.str();
            else if (a.is_one()) out += monostr;
            else out += a.str() + "*" + monostr;
        } else {
            if (!first) out += " + ";
            if (monostr.empty()) {
                append_tpoly(out, tc, false);
            } else {
                append_tpoly(out, tc, true);
                out += "*" + monostr;
            }
        }
        first = false;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const BiPoly& p) { return os << p.str(); }

// ---------------------------------------------------------------------------
// Parser: recursive descent over the grammar in the CLI interface section.

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    CoefRing ring;

    explicit Parser(const std::string& text, CoefRing r) : s(text), ring(r) {}

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n')) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    BiPoly parse() {
        BiPoly e = expr();
        if (!eof()) throw SyntaxError("unexpected trailing input", pos);
        return e;
    }

    BiPoly expr() {
        bool neg = false;
        if (accept('-')) neg = true;
        else accept('+');
        BiPoly acc = term();
        if (neg) acc = -acc;
        while (true) {
            char c = peek();
            if (c == '+') {
                ++pos;
                acc += term();
            } else if (c == '-') {
                ++pos;
                acc -= term();
            } else {
                break;
            }
        }
        return acc;
    }

    BiPoly term() {
        BiPoly acc = factor();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos;
                acc *= factor();
            } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '(') {
                throw SyntaxError("implicit multiplication not allowed; use '*'", pos);
            } else {
                break;
            }
        }
        return acc;
    }

    BiPoly factor() {
        BiPoly b = base();
        while (peek() == '^') {
            ++pos;
            long e = integer();
            if (e < 0) throw SyntaxError("negative exponent", pos);
            b = b.pow(e);
        }
        return b;
    }

    long integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw SyntaxError("expected integer", pos);
        try {
            return std::stol(s.substr(start, pos - start));
        } catch (const std::exception&) {
            throw SyntaxError("exponent out of range", start);
        }
    }

    BiPoly base() {
        skip_ws();
        if (pos >= s.size()) throw SyntaxError("unexpected end of input", pos);
        char c = s[pos];
        if (c == '(') {
            ++pos;
            BiPoly e = expr();
            if (!accept(')')) throw SyntaxError("expected ')'", pos);
            return e;
        }
        if (c == '-') {
            ++pos;
            return -factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            mpz_class num(s.substr(start, pos - start), 10);
            if (pos < s.size() && s[pos] == '/') {
                std::size_t save = pos;
                ++pos;
                std::size_t dstart = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (pos == dstart) throw SyntaxError("expected denominator", save + 1);
                mpz_class den(s.substr(dstart, pos - dstart), 10);
                if (den == 0) throw SyntaxError("zero denominator", dstart);
                mpq_class q(num, den);
                q.canonicalize();
                return BiPoly::constant(Rat(q));
            }
            return BiPoly::constant(Rat(mpz_class(num)));
        }
        if (c == 'x' || c == 'u') {
            ++pos;
            return BiPoly::variable_x();
        }
        if (c == 'y' || c == 'v') {
            ++pos;
            return BiPoly::variable_y();
        }
        if (c == 't') {
            if (ring != CoefRing::Qt)
                throw SyntaxError("variable t not allowed over Q; use the family ring", pos);
            ++pos;
            return BiPoly::variable_t();
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos);
    }
};

}  // namespace

BiPoly parse_bipoly(const std::string& text, CoefRing ring) {
    Parser p(text, ring);
    return p.parse();
}

}  // namespace curvetower
