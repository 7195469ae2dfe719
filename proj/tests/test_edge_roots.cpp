#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "polarcalc/edge_roots.hpp"

using namespace polarcalc;

namespace {
Coefficient C(long n, long d = 1) { return Coefficient(GaussRat(Rat(n, d))); }
Coefficient Ci(long n) { return Coefficient(GaussRat(Rat(0), Rat(n))); }

std::vector<Coefficient> poly(std::initializer_list<Coefficient> cs) { return cs; }
}  // namespace

TEST_CASE("polynomial evaluation and derivative") {
    // p(z) = 1 + 3z (highest-edge polynomial of the worked cubic example)
    auto p = poly({C(1), C(3)});
    CHECK(eval_poly(p, C(-1, 3)).is_structural_zero());
    CHECK(eval_poly(p, C(1)).exact() == GaussRat(Rat(4)));
    auto dp = derive_poly(p);
    REQUIRE(dp.size() == 1);
    CHECK(dp[0].exact() == GaussRat(Rat(3)));

    // d/dz (z^3 + 3z^2 + 3z) = 3z^2 + 6z + 3
    auto q = poly({C(0), C(3), C(3), C(1)});
    auto dq = derive_poly(q);
    REQUIRE(dq.size() == 3);
    CHECK(dq[0].exact() == GaussRat(Rat(3)));
    CHECK(dq[1].exact() == GaussRat(Rat(6)));
    CHECK(dq[2].exact() == GaussRat(Rat(3)));
}

TEST_CASE("exact roots of simple edge polynomials") {
    Tower tower;
    // z^2 - 1: roots +1, -1, simple
    auto roots = distinct_nonzero_roots(poly({C(-1), C(0), C(1)}), tower);
    REQUIRE(roots.size() == 2);
    for (const auto& r : roots) {
        CHECK(r.multiplicity == 1);
        REQUIRE(r.value.is_exact());
        CHECK(r.value.exact().norm() == Rat(1));
        CHECK(r.value.exact().is_real());
    }

    // 3z + 1: single root -1/3
    auto single = distinct_nonzero_roots(poly({C(1), C(3)}), tower);
    REQUIRE(single.size() == 1);
    CHECK(single[0].value.exact() == GaussRat(Rat(-1, 3)));
    CHECK(single[0].multiplicity == 1);
}

TEST_CASE("multiplicities come from exact squarefree structure") {
    Tower tower;
    // (z - 2)^2 (z + 3) = z^3 - z^2 - 8z + 12
    auto roots = distinct_nonzero_roots(poly({C(12), C(-8), C(-1), C(1)}), tower);
    REQUIRE(roots.size() == 2);
    auto two = std::find_if(roots.begin(), roots.end(), [](const EdgeRoot& r) {
        return r.value.is_exact() && r.value.exact() == GaussRat(Rat(2));
    });
    auto m3 = std::find_if(roots.begin(), roots.end(), [](const EdgeRoot& r) {
        return r.value.is_exact() && r.value.exact() == GaussRat(Rat(-3));
    });
    REQUIRE(two != roots.end());
    REQUIRE(m3 != roots.end());
    CHECK(two->multiplicity == 2);
    CHECK(m3->multiplicity == 1);
}

TEST_CASE("zero roots are excluded, Gaussian roots are recognized") {
    Tower tower;
    // z^3 + z = z (z - i)(z + i): the zero root is dropped
    auto roots = distinct_nonzero_roots(poly({C(0), C(1), C(0), C(1)}), tower);
    REQUIRE(roots.size() == 2);
    for (const auto& r : roots) {
        REQUIRE(r.value.is_exact());
        CHECK(r.value.exact().re == Rat(0));
        CHECK(abs(r.value.exact().im) == Rat(1));
    }

    // 2z^2 + 5: roots +- i sqrt(5/2), not Gaussian rational -> stay numeric
    auto irr = distinct_nonzero_roots(poly({C(5), C(0), C(2)}), tower);
    REQUIRE(irr.size() == 2);
    for (const auto& r : irr) {
        CHECK_FALSE(r.value.is_exact());
        double re = r.value.approx().to_double_re();
        double im = r.value.approx().to_double_im();
        CHECK(re == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(std::abs(im) == doctest::Approx(std::sqrt(2.5)));
    }
}

TEST_CASE("rational roots with awkward denominators are reconstructed") {
    Tower tower;
    // 72z + 5 -> root -5/72 (seen in a deep expansion of a worked sextic)
    auto r = distinct_nonzero_roots(poly({C(5), C(72)}), tower);
    REQUIRE(r.size() == 1);
    CHECK(r[0].value.exact() == GaussRat(Rat(-5, 72)));

    // (6z - 5)(11z + 3) = 66z^2 - 37z - 15
    auto r2 = distinct_nonzero_roots(poly({C(-15), C(-37), C(66)}), tower);
    REQUIRE(r2.size() == 2);
    bool saw56 = false, saw311 = false;
    for (const auto& e : r2) {
        if (e.value.is_exact() && e.value.exact() == GaussRat(Rat(5, 6))) saw56 = true;
        if (e.value.is_exact() && e.value.exact() == GaussRat(Rat(-3, 11))) saw311 = true;
    }
    CHECK(saw56);
    CHECK(saw311);
}

TEST_CASE("approximate coefficients: roots clustered by tolerance") {
    Tower tower;
    auto approx = [&](double v) {
        return Coefficient(ApproxComplex::from_double(v, 0.0, tower.prec));
    };
    // (z - 1)^2 (numerically): z^2 - 2z + 1
    auto roots = distinct_nonzero_roots(poly({approx(1.0), approx(-2.0), approx(1.0)}),
                                        tower);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].multiplicity == 2);
    CHECK(roots[0].value.approx().to_double_re() == doctest::Approx(1.0));
}

TEST_CASE("simultaneous iteration finds all complex roots") {
    mpfr_prec_t prec = 256;
    // z^4 - 1: the four fourth roots of unity
    std::vector<ApproxComplex> cs;
    cs.push_back(ApproxComplex::from_double(-1.0, 0.0, prec));
    for (int k = 0; k < 3; ++k) cs.push_back(ApproxComplex::from_double(0.0, 0.0, prec));
    cs.push_back(ApproxComplex::from_double(1.0, 0.0, prec));
    auto roots = aberth_roots(cs, prec);
    REQUIRE(roots.size() == 4);
    for (const auto& r : roots) {
        double m = r.mag().to_double_re();
        CHECK(m == doctest::Approx(1.0).epsilon(1e-30));
        // each root's fourth power is 1
        double re = r.to_double_re(), im = r.to_double_im();
        std::complex<double> z(re, im);
        std::complex<double> z4 = z * z * z * z;
        CHECK(z4.real() == doctest::Approx(1.0));
        CHECK(z4.imag() == doctest::Approx(0.0).epsilon(1e-9));
    }
}
