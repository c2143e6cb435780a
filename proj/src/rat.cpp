#include "curvetower/rat.hpp"

#include <ostream>

namespace curvetower {

Rat Rat::from_string(const std::string& s) {
    if (s.empty()) throw DomainError("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw DomainError("bad rational literal: " + s);
    if (q.get_den() == 0) throw DomainError("rational with zero denominator: " + s);
    q.canonicalize();
    return Rat(q);
}

Rat Rat::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), static_cast<unsigned long>(e));
    mpq_class r(n, d);
    // already canonical: num/den of a canonical rational stay coprime under powers
    return Rat(r);
}

std::string Rat::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat rat_binomial(const Rat& r, long j) {
    if (j < 0) throw DomainError("binomial with negative index");
    Rat acc = 1;
    for (long i = 0; i < j; ++i) {
        acc *= (r - Rat(i));
        acc /= Rat(i + 1);
    }
    return acc;
}

}  // namespace curvetower
