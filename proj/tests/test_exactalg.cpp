#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "curvetower/bipoly.hpp"
#include "curvetower/errors.hpp"
#include "curvetower/resultant.hpp"

using namespace curvetower;

namespace {

BiPoly random_bipoly(std::mt19937_64& rng, int max_deg, int max_terms) {
    std::uniform_int_distribution<long> e(0, max_deg), c(-5, 5), nt(1, max_terms);
    BiPoly p;
    long terms = nt(rng);
    for (long i = 0; i < terms; ++i) p += BiPoly::monomial(e(rng), e(rng), 0, Rat(c(rng)));
    return p;
}

}  // namespace

TEST_CASE("rational canonical form and arithmetic") {
    Rat a(6, 4);
    CHECK(a.numerator() == 3);
    CHECK(a.denominator() == 2);
    CHECK((a + Rat(1, 2)) == Rat(2));
    CHECK((Rat(1, 3) * Rat(3)) == Rat(1));
    CHECK(Rat(-4, 8).str() == "-1/2");
    CHECK(Rat::from_string("7/21") == Rat(1, 3));
    CHECK(rat_binomial(Rat(3, 2), 1) == Rat(3, 2));
    CHECK(rat_binomial(Rat(1, 2), 2) == Rat(-1, 8));
    CHECK_THROWS_AS(Rat(1, 0), DomainError);
}

TEST_CASE("parse the running example: support size 8") {
    BiPoly f = parse_bipoly("(y^4+x^3)^6+x^17*y^3");
    CHECK(f.term_count() == 8);
    CHECK(f.deg_y() == 24);
    CHECK(f.deg_x() == 18);
    CHECK(f.coeff(3, 20, 0) == Rat(6));
    CHECK(f.coeff(17, 3, 0) == Rat(1));
}

TEST_CASE("parse zero and cancellation") {
    CHECK(parse_bipoly("0").is_zero());
    CHECK(parse_bipoly("(1/2)*x*y - x*y*(1/2)").is_zero());
}

TEST_CASE("parse rejects t over Q but accepts it over Q[t]") {
    CHECK_THROWS_AS(parse_bipoly("t*x"), SyntaxError);
    BiPoly p = parse_bipoly("t*x + y", CoefRing::Qt);
    CHECK(p.deg_t() == 1);
}

TEST_CASE("parse rejects implicit multiplication, annotates position") {
    try {
        parse_bipoly("2x");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.position == 1);
    }
    CHECK_THROWS_AS(parse_bipoly("x + "), SyntaxError);
    CHECK_THROWS_AS(parse_bipoly("(x"), SyntaxError);
}

TEST_CASE("u, v alias the infinity chart") {
    CHECK(parse_bipoly("v^3+u+u^3") == parse_bipoly("y^3+x+x^3"));
}

TEST_CASE("print/parse round trip on random polynomials") {
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 200; ++i) {
        BiPoly p = random_bipoly(rng, 6, 8);
        CHECK(parse_bipoly(p.str()) == p);
    }
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(777);
    for (int i = 0; i < 100; ++i) {
        BiPoly a = random_bipoly(rng, 5, 5), b = random_bipoly(rng, 5, 5),
               c = random_bipoly(rng, 5, 5);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("resultant: hand-expanded Sylvester values") {
    BiPoly f = parse_bipoly("y^2-x");
    BiPoly g = parse_bipoly("y-x");
    BiPoly r = resultant_y(f, g);
    // 3x3 Sylvester determinant: x^2 - x (up to sign)
    bool match = (r == parse_bipoly("x^2-x")) || (r == parse_bipoly("x-x^2"));
    CHECK(match);

    CHECK(resultant_y(parse_bipoly("y"), parse_bipoly("y")).is_zero());

    BiPoly c = resultant_y(parse_bipoly("y-1"), parse_bipoly("y+1"));
    bool cmatch = (c == BiPoly::constant(Rat(2))) || (c == BiPoly::constant(Rat(-2)));
    CHECK(cmatch);
}

TEST_CASE("resultant vanishes iff common factor") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 40; ++i) {
        BiPoly common = parse_bipoly("y-x") + BiPoly::constant(Rat(i % 3));
        BiPoly a = random_bipoly(rng, 3, 4);
        BiPoly b = random_bipoly(rng, 3, 4);
        if (a.is_zero() || b.is_zero() || a.deg_y() < 0 || b.deg_y() < 0) continue;
        BiPoly fa = common * a, fb = common * b;
        if (fa.deg_y() < 1 || fb.deg_y() < 1) continue;
        CHECK(resultant_y(fa, fb).is_zero());
    }
    // coprime pair
    CHECK(!resultant_y(parse_bipoly("y^2+x"), parse_bipoly("y+1")).is_zero());
}

TEST_CASE("resultant over Q[t]: additive deformation") {
    BiPoly f = parse_bipoly("y^2+x^3");
    BiPoly g = parse_bipoly("y^2+x^3+t*x^2", CoefRing::Qt);
    BiPoly r = resultant_y(f, g);
    // product over the two roots of f: (t x^2)^2 = t^2 x^4
    CHECK(r == parse_bipoly("t^2*x^4", CoefRing::Qt));
}

TEST_CASE("exact division and monic divmod") {
    BiPoly a = parse_bipoly("(x+y)^3*(x^2+1)");
    CHECK(a.divide_exact(parse_bipoly("(x+y)^2")) == parse_bipoly("(x+y)*(x^2+1)"));
    auto [q, r] = parse_bipoly("y^3+1").divmod_y_monic(parse_bipoly("y"));
    CHECK(q == parse_bipoly("y^2"));
    CHECK(r == parse_bipoly("1"));
}

TEST_CASE("rational root extraction with multiplicities") {
    // (w-1)^2 (w+2) = w^3 - 3w + 2
    RationalRoots rr = rational_roots({Rat(2), Rat(-3), Rat(0), Rat(1)});
    CHECK(rr.residual_degree == 0);
    bool saw1 = false, saw2 = false;
    for (auto& [root, mult] : rr.roots) {
        if (root == Rat(1)) {
            saw1 = true;
            CHECK(mult == 2);
        }
        if (root == Rat(-2)) {
            saw2 = true;
            CHECK(mult == 1);
        }
    }
    CHECK(saw1);
    CHECK(saw2);
    // w^2 - 2: no rational roots
    RationalRoots ir = rational_roots({Rat(-2), Rat(0), Rat(1)});
    CHECK(ir.roots.empty());
    CHECK(ir.residual_degree == 2);
}
