#include <doctest.h>

#include "polarcalc/parser.hpp"

using namespace polarcalc;

TEST_CASE("polynomial parsing: worked examples") {
    BivarPoly f = parse_poly("x^3 - y^4 + y^5");
    CHECK(f.coeff(3, 0).exact() == GaussRat(Rat(1)));
    CHECK(f.coeff(0, 4).exact() == GaussRat(Rat(-1)));
    CHECK(f.coeff(0, 5).exact() == GaussRat(Rat(1)));
    CHECK(f.coeffs().size() == 3);

    BivarPoly g = parse_poly("1/6*x^6 + 1/4*x^4*y^4 - 1/5*x^5*y - 1/3*x^3*y^5");
    CHECK(g.coeff(6, 0).exact() == GaussRat(Rat(1, 6)));
    CHECK(g.coeff(4, 4).exact() == GaussRat(Rat(1, 4)));
    CHECK(g.coeff(5, 1).exact() == GaussRat(Rat(-1, 5)));
    CHECK(g.coeff(3, 5).exact() == GaussRat(Rat(-1, 3)));
    CHECK(g.coeffs().size() == 4);
}

TEST_CASE("polynomial parsing: syntax forms") {
    CHECK(parse_poly("x y") == parse_poly("x*y"));
    CHECK(parse_poly("2x") == parse_poly("2*x"));
    CHECK(parse_poly("-x + -y") == parse_poly("-(x + y)"));
    CHECK(parse_poly("(x + y)*(x - y)") == parse_poly("x^2 - y^2"));
    CHECK(parse_poly("(x - y)^2") == parse_poly("x^2 - 2*x*y + y^2"));
    CHECK(parse_poly("(x^2 - y^2)*(x^2 - y^4)") ==
          parse_poly("x^4 - x^2*y^2 - x^2*y^4 + y^6"));
    CHECK(parse_poly("i*y^2").coeff(0, 2).exact() == GaussRat::i());
    CHECK(parse_poly("3i*x").coeff(1, 0).exact() == GaussRat(Rat(0), Rat(3)));
    CHECK(parse_poly("  x ^ 2  -  y ^ 3 ") == parse_poly("x^2-y^3"));
    CHECK(parse_poly("0").is_zero());
}

TEST_CASE("polynomial parsing: rejections") {
    CHECK_THROWS_AS(parse_poly("x^(1/2)"), FractionalExponentInPolynomial);
    CHECK_THROWS_AS(parse_poly("y^(-1)"), NegativeExponent);
    CHECK_THROWS_AS(parse_poly("x +"), SyntaxError);
    CHECK_THROWS_AS(parse_poly("(x"), SyntaxError);
    CHECK_THROWS_AS(parse_poly("x ** 2"), SyntaxError);
    CHECK_THROWS_AS(parse_poly("z^2"), SyntaxError);
    CHECK_THROWS_AS(parse_poly(""), SyntaxError);
    CHECK_THROWS_AS(parse_poly("1/0"), SyntaxError);
}

TEST_CASE("arc parsing: worked examples") {
    PuiseuxSeries phi = parse_arc("x = y^(4/3)");
    REQUIRE(phi.terms().size() == 1);
    CHECK(phi.terms()[0].exp == Rat(4, 3));
    CHECK(phi.denom() == 3);
    CHECK(phi.truncation().is_infinite());

    PuiseuxSeries gamma = parse_arc("x = i*y^2");
    REQUIRE(gamma.terms().size() == 1);
    CHECK(gamma.terms()[0].exp == Rat(2));
    CHECK(gamma.terms()[0].coeff.exact() == GaussRat::i());

    PuiseuxSeries zero = parse_arc("x = 0");
    CHECK(zero.is_structural_zero());
    CHECK(zero.truncation().is_infinite());
}

TEST_CASE("arc parsing: multi-term, truncation marker, signs") {
    PuiseuxSeries s = parse_arc("x = y^(4/3) - 1/3*y^(7/3) + O(y^3)");
    REQUIRE(s.terms().size() == 2);
    CHECK(s.coeff_at(Rat(7, 3)).exact() == GaussRat(Rat(-1, 3)));
    CHECK(s.truncation() == ExtRat(Rat(3)));

    PuiseuxSeries t = parse_arc("x = -y^(3/2)");
    CHECK(t.coeff_at(Rat(3, 2)).exact() == GaussRat(Rat(-1)));

    PuiseuxSeries c = parse_arc("x = (1 + i)*y");
    CHECK(c.coeff_at(Rat(1)).exact() == GaussRat(Rat(1), Rat(1)));

    // terms at equal exponents merge
    PuiseuxSeries m = parse_arc("x = y + 2*y");
    REQUIRE(m.terms().size() == 1);
    CHECK(m.coeff_at(Rat(1)).exact() == GaussRat(Rat(3)));

    // a bare O-marker gives the unknown zero arc
    PuiseuxSeries u = parse_arc("x = O(y^2)");
    CHECK(u.is_structural_zero());
    CHECK(u.truncation() == ExtRat(Rat(2)));
}

TEST_CASE("arc parsing: rejections") {
    CHECK_THROWS_AS(parse_arc("x = x"), SyntaxError);
    CHECK_THROWS_AS(parse_arc("y = x"), SyntaxError);
    CHECK_THROWS_AS(parse_arc("x = y^(-1/2)"), NegativeExponent);
    CHECK_THROWS_AS(parse_arc("x = y + O(y^2) + y^3"), SyntaxError);
    CHECK_THROWS_AS(parse_arc("x = "), SyntaxError);
    CHECK_THROWS_AS(parse_arc("x = y^2 + O(y)"), SyntaxError);
}

TEST_CASE("canonical polynomial serialization round trips") {
    const char* inputs[] = {
        "x^3 - y^4 + y^5",
        "1/6*x^6 + 1/4*x^4*y^4 - 1/5*x^5*y - 1/3*x^3*y^5",
        "x^2 - y^3",
        "i*x*y - 2*y^2",
        "x^4 - x^2*y^2 - x^2*y^4 + y^6",
    };
    for (const char* in : inputs) {
        BivarPoly f = parse_poly(in);
        CHECK(parse_poly(serialize_poly(f)) == f);
        // canonical form is a fixed point
        CHECK(serialize_poly(parse_poly(serialize_poly(f))) == serialize_poly(f));
    }
    CHECK(serialize_poly(parse_poly("x^2 - y^3")) == "x^2 - y^3");
    CHECK(serialize_poly(BivarPoly::zero()) == "0");
}

TEST_CASE("canonical arc serialization round trips") {
    const char* inputs[] = {
        "x = y^(4/3) - 1/3*y^(7/3)",
        "x = i*y^2",
        "x = -y^(3/2)",
        "x = 0",
        "x = y + 1/2*y^2 + O(y^(5/2))",
    };
    for (const char* in : inputs) {
        PuiseuxSeries s = parse_arc(in);
        CHECK(parse_arc(serialize_arc(s)) == s);
        CHECK(serialize_arc(parse_arc(serialize_arc(s))) == serialize_arc(s));
    }
}

TEST_CASE("scalar serialization helpers") {
    CHECK(serialize_rat(Rat(10, 11)) == "10/11");
    CHECK(serialize_ext(ExtRat::infinity()) == "inf");
    CHECK(serialize_ext(ExtRat(Rat(9, 2))) == "9/2");
    CHECK(serialize_coeff(Coefficient(GaussRat(Rat(1), Rat(-1)))) == "(1-i)");
    CHECK(serialize_coeff(Coefficient(GaussRat(Rat(0), Rat(1)))) == "i");
    CHECK(serialize_coeff(Coefficient(GaussRat(Rat(-1, 3)))) == "-1/3");
}
