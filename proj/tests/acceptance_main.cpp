// Acceptance suite for the invariants engine.  Each criterion prints one
// PASS/FAIL line; exact rational results are compared with zero tolerance,
// the numeric slope oracle with the pinned tolerance below.  The final
// criterion re-runs everything and demands byte-identical JSON output.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "polarcalc/bivar_poly.hpp"
#include "polarcalc/invariants.hpp"
#include "polarcalc/newton_polygon.hpp"
#include "polarcalc/parser.hpp"
#include "polarcalc/puiseux.hpp"
#include "polarcalc/puiseux_solver.hpp"
#include "polarcalc/rational.hpp"
#include "polarcalc/report_io.hpp"

using namespace polarcalc;

namespace {

// ---- pinned tolerances and budgets ----------------------------------------
constexpr double kSlopeTolerance = 0.02;  // numeric log-log slope vs exact value
constexpr double kTMin = 1e-6;
constexpr double kTMax = 1e-3;
constexpr long kSamples = 64;
// wall-clock budget per criterion, seconds (0 = no budget)
constexpr double kBudget[10] = {1, 5, 5, 1, 60, 2, 600, 600, 30, 0};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool expect(bool cond, const std::string& what, std::string& note) {
    if (!cond && note.empty()) note = what;
    return cond;
}

OutputContext ctx_for(const std::string& command, const BivarPoly& f, long seed,
                      ScalarField field = ScalarField::Complex) {
    return OutputContext{command, serialize_poly(f), field, seed};
}

// ---- criterion 1: relative Newton polygon ----------------------------------
bool crit_polygon(std::string& digest, std::string& note) {
    Tower tower;
    BivarPoly f = parse_poly("x^3 - y^4 + y^5");
    NewtonDiagram dia = relative_diagram(f, parse_arc("x = y^(4/3)"), tower);
    digest += render_diagram_json(dia);

    bool ok = expect(dia.dots.size() == 4, "expected exactly four dots", note);
    const std::vector<std::pair<long, Rat>> want = {
        {0, Rat(5)}, {1, Rat(8, 3)}, {2, Rat(4, 3)}, {3, Rat(0)}};
    for (std::size_t k = 0; ok && k < want.size(); ++k) {
        ok &= expect(dia.dots[k].i == want[k].first && dia.dots[k].h == want[k].second,
                     "dot " + std::to_string(k) + " is (" +
                         std::to_string(dia.dots[k].i) + ", " + dia.dots[k].h.str() + ")",
                     note);
    }
    ok &= expect(dia.edges.size() == 2, "expected two compact edges", note);
    if (ok) {
        ok &= expect(dia.edges[0].tan_theta == Rat(4, 3) &&
                         dia.edges[1].tan_theta == Rat(7, 3),
                     "edge angles are " + dia.edges[0].tan_theta.str() + ", " +
                         dia.edges[1].tan_theta.str(),
                     note);
    }
    ok &= expect(dia.highest_edge.has_value(), "no highest edge", note);
    if (ok) {
        const auto& ep = dia.highest_edge->edge_poly;
        ok &= expect(ep.size() == 2 && serialize_coeff(ep[0]) == "1" &&
                         serialize_coeff(ep[1]) == "3",
                     "highest-edge polynomial is not 1 + 3*z", note);
    }
    return ok;
}

// ---- criterion 2: polar data of the order-6 model curve --------------------
const char* kSexticText = "1/6*x^6 + 1/4*x^4*y^4 - 1/5*x^5*y - 1/3*x^3*y^5";

bool crit_sextic(std::string& digest, std::string& note) {
    Tower tower;
    BivarPoly f = parse_poly(kSexticText);

    BranchSet gamma = polar_branches(f, Rat(1), tower);
    bool ok = expect(gamma.branches.size() == 3, "expected three polar branches", note);
    std::map<std::string, Rat> ls;
    for (const Branch& b : gamma.branches)
        ls[serialize_arc(b.series)] = ell_of_arc(f, b.series, tower);
    ok &= expect(ls.size() == 3 && ls.count("x = y") && ls.count("x = i*y^2") &&
                     ls.count("x = -i*y^2"),
                 "polar branch arcs differ from {y, i*y^2, -i*y^2}", note);
    if (ok) {
        ok &= expect(ls["x = y"] == Rat(5, 6), "ell along x = y is not 5/6", note);
        ok &= expect(ls["x = i*y^2"] == Rat(10, 11) && ls["x = -i*y^2"] == Rat(10, 11),
                     "ell along the quadratic polar branches is not 10/11", note);
    }

    const std::vector<Rat> want = {Rat(6), Rat(11)};
    for (QuotientRoute route : {QuotientRoute::PolarBranches, QuotientRoute::Approximations,
                                QuotientRoute::Both}) {
        QuotientSet qs = polar_quotients(f, route, 0, tower);
        ok &= expect(qs.values == want, "a quotient route disagrees with {6, 11}", note);
        digest += render_quotients_json(qs, Rat(0), f.order(), f.degree(),
                                        ctx_for("quotients", f, 0));
    }

    InvariantReport rep = gradient_exponent_complex(f, 0, tower);
    digest += render_report_json(rep, ctx_for("lojasiewicz", f, 0));
    ok &= expect(rep.L == Rat(10, 11), "gradient exponent is " + rep.L.str(), note);
    return ok;
}

// ---- criterion 3: real gradient exponent with one-sided values -------------
bool crit_real_sides(std::string& digest, std::string& note) {
    Tower tower;
    BivarPoly f = parse_poly("x^3 + 3*x*y^3");
    InvariantReport rep = gradient_exponent_real(f, 0, tower);
    digest += render_report_json(rep, ctx_for("lojasiewicz", f, 0, ScalarField::Real));
    bool ok = expect(rep.L_plus && *rep.L_plus == Rat(2, 3),
                     "exponent on the side y > 0 is not 2/3", note);
    ok &= expect(rep.L_minus && *rep.L_minus == Rat(7, 9),
                 "exponent on the side y < 0 is not 7/9", note);
    ok &= expect(rep.L == Rat(7, 9), "real gradient exponent is " + rep.L.str(), note);
    return ok;
}

// ---- criterion 4: the classical cusps ---------------------------------------
bool crit_cusps(std::string& digest, std::string& note) {
    Tower tower;
    bool ok = true;
    const std::vector<std::pair<std::string, Rat>> cases = {
        {"x^2 - y^3", Rat(2, 3)}, {"x^2 - y^5", Rat(4, 5)}};
    for (const auto& [text, want] : cases) {
        BivarPoly f = parse_poly(text);
        InvariantReport rc = gradient_exponent_complex(f, 0, tower);
        InvariantReport rr = gradient_exponent_real(f, 0, tower);
        digest += render_report_json(rc, ctx_for("lojasiewicz", f, 0));
        digest += render_report_json(rr, ctx_for("lojasiewicz", f, 0, ScalarField::Real));
        ok &= expect(rc.L == want,
                     "complex exponent of " + text + " is " + rc.L.str(), note);
        ok &= expect(rr.L == want, "real exponent of " + text + " is " + rr.L.str(), note);
    }
    return ok;
}

// ---- criterion 5: homogeneous law L = 1 - 1/d -------------------------------
BivarPoly product_of_lines(const std::vector<Rat>& slopes) {
    BivarPoly f = BivarPoly::constant(Coefficient(1));
    for (const Rat& a : slopes) {
        BivarPoly line = BivarPoly::monomial(Coefficient(1), 1, 0) -
                         BivarPoly::monomial(Coefficient(a), 0, 1);
        f = f * line;
    }
    return f;
}

bool crit_homogeneous(std::string& digest, std::string& note) {
    Tower tower;
    bool ok = true;
    for (long d = 2; d <= 6; ++d) {
        for (long i = 0; i < 50; ++i) {
            long seed = 7000 + 100 * d + i;
            Sampler s(static_cast<unsigned long long>(seed));
            std::vector<Rat> slopes;
            while (static_cast<long>(slopes.size()) < d) {
                Rat a = s.nonzero_int();
                bool fresh = true;
                for (const Rat& b : slopes) fresh &= !(a == b);
                if (fresh) slopes.push_back(a);
            }
            BivarPoly f = product_of_lines(slopes);
            InvariantReport rep = gradient_exponent_complex(f, seed, tower);
            digest += render_report_json(rep, ctx_for("lojasiewicz", f, seed));
            if (!(rep.L == Rat(d - 1, d))) {
                ok = expect(false,
                            "degree " + std::to_string(d) + " instance " +
                                std::to_string(i) + ": L = " + rep.L.str() +
                                " for " + serialize_poly(f),
                            note);
            }
        }
    }
    return ok;
}

// ---- criterion 6: two-level quotient set vs a closed-form oracle ------------
bool crit_two_level(std::string& digest, std::string& note) {
    Tower tower;
    BivarPoly f = parse_poly("(x^2 - y^2)*(x^2 - y^4)");

    // Closed-form oracle, independent of the solver.  The four roots are read
    // off the factored form: y, -y, y^2, -y^2, all simple.  Their pairwise
    // contact orders come from direct subtraction: contact(y, -y) = 1,
    // contact(y^2, -y^2) = 2, every cross contact 1.  Each pair's quotient is
    // the contact-weighted sum over all four roots.
    std::vector<std::vector<ExtRat>> C(4, std::vector<ExtRat>(4, ExtRat(1)));
    for (int k = 0; k < 4; ++k) C[k][k] = ExtRat::infinity();
    C[2][3] = C[3][2] = ExtRat(Rat(2));
    std::set<Rat> oracle;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Rat v(0);
            for (int k = 0; k < 4; ++k) v += min(C[i][k], C[j][k]).finite();
            oracle.insert(v);
        }
    std::vector<Rat> want(oracle.begin(), oracle.end());
    bool ok = expect(want == std::vector<Rat>{Rat(4), Rat(6)},
                     "closed-form oracle did not yield {4, 6}", note);

    QuotientSet qs = polar_quotients(f, QuotientRoute::Both, 0, tower);
    digest += render_quotients_json(qs, Rat(0), f.order(), f.degree(),
                                    ctx_for("quotients", f, 0));
    ok &= expect(qs.values == want, "engine quotient set differs from the oracle", note);

    // Branch-route closed form: order 6 along x = 0 and order 4 along each
    // root of 2x^2 = y^2 + y^4.
    BranchSet gamma = polar_branches(f, Rat(1), tower);
    std::multiset<Rat> orders;
    for (const Branch& b : gamma.branches)
        orders.insert(slide_to_stability(f, b.series, tower).second);
    ok &= expect(orders == std::multiset<Rat>{Rat(4), Rat(4), Rat(6)},
                 "certified polar orders differ from {4, 4, 6}", note);

    InvariantReport rep = gradient_exponent_complex(f, 0, tower);
    digest += render_report_json(rep, ctx_for("lojasiewicz", f, 0));
    ok &= expect(rep.L == Rat(5, 6), "gradient exponent is " + rep.L.str(), note);
    return ok;
}

// ---- criterion 7: route agreement + multiplicity formula on branch products -
struct BranchFactor {
    long q;     // exponent denominator (number of conjugate roots)
    long p;     // exponent numerator, coprime to q
    Rat c;      // root coefficient scale
    long mult;  // factor multiplicity
    Rat exp;    // p/q
};

BivarPoly product_of_factors(const std::vector<BranchFactor>& factors) {
    BivarPoly f = BivarPoly::constant(Coefficient(1));
    for (const BranchFactor& b : factors) {
        BivarPoly factor = BivarPoly::monomial(Coefficient(1), b.q, 0) -
                           BivarPoly::monomial(Coefficient(pow(b.c, b.q)), 0, b.p);
        f = f * factor.pow(b.mult);
    }
    return f;
}

bool crit_branch_products(std::string& digest, std::string& note) {
    Tower tower;
    bool ok = true;
    for (long inst = 0; inst < 200 && ok; ++inst) {
        long seed = 50000 + inst;
        Sampler s(static_cast<unsigned long long>(seed));

        // Up to four Puiseux roots in total; denominators 1, 2, 4 keep every
        // conjugate coefficient an exact Gaussian rational, so the suite
        // exercises the two routes without numeric noise of its own making.
        long target = 1 + static_cast<long>(s.below(4));
        std::vector<BranchFactor> factors;
        std::set<std::tuple<long, long, std::string>> seen;
        long used = 0;
        while (used < target) {
            long rem = target - used;
            std::vector<long> qs;
            for (long q : {1L, 2L, 4L})
                if (q <= rem) qs.push_back(q);
            long q = qs[s.below(qs.size())];
            long p = (q == 1) ? 2 + static_cast<long>(s.below(3))
                              : (q == 2) ? 3 + 2 * static_cast<long>(s.below(3))
                                         : 5 + 2 * static_cast<long>(s.below(3));
            Rat c = s.nonzero_int();
            auto key = std::make_tuple(q, p, pow(c, q).str());
            if (seen.count(key)) continue;
            seen.insert(key);
            long mult = 1 + static_cast<long>(s.below(3));
            factors.push_back({q, p, c, mult, Rat(p, q)});
            used += q;
        }
        if (factors.size() == 1 && factors[0].q == 1 && factors[0].mult == 1)
            factors[0].mult = 2;  // the polar machinery needs order >= 2
        BivarPoly f = product_of_factors(factors);

        try {
            QuotientSet qs = polar_quotients(f, QuotientRoute::Both, seed, tower);
            digest += render_quotients_json(qs, Rat(0), f.order(), f.degree(),
                                            ctx_for("quotients", f, seed));
        } catch (const CertificationError& e) {
            ok = expect(false,
                        "instance " + std::to_string(inst) + " (" + serialize_poly(f) +
                            "): " + e.what(),
                        note);
            break;
        }

        // Multiplicity formula: the order of f along a fresh generic arc
        // x = c0 * y^{e0} equals the multiplicity-weighted sum of its contact
        // orders with the roots.  The expected value has a closed form for
        // these products; the engine's expanded branches must reproduce it.
        long rsel = static_cast<long>(s.below(factors.size()));
        Rat e0 = factors[rsel].exp;
        Rat c0;
        for (;;) {
            c0 = s.nonzero_rat();
            bool clash = false;
            for (const BranchFactor& b : factors)
                if (b.exp == e0 && pow(c0, b.q) == pow(b.c, b.q)) clash = true;
            if (!clash) break;
        }
        PuiseuxSeries garc = PuiseuxSeries::monomial(Coefficient(c0), e0);

        ExtRat direct = series_order(f.subst_series(garc));
        Rat expected(0);
        for (const BranchFactor& b : factors)
            expected += Rat(b.mult) * Rat(b.q) * std::min(e0, b.exp);

        BranchSet roots = expand_roots(f, Rat(2), tower);
        Rat via_branches(0);
        bool contacts_finite = true;
        long mult_sum = 0;
        for (const Branch& b : roots.branches) {
            mult_sum += b.multiplicity;
            ExtRat ct = contact_order(garc, b.series, tower);
            if (ct.is_infinite()) {
                contacts_finite = false;
                break;
            }
            via_branches += Rat(b.multiplicity) * ct.finite();
        }
        bool inst_ok = contacts_finite && mult_sum == f.order() &&
                       direct == ExtRat(expected) && via_branches == expected;
        if (!inst_ok) {
            ok = expect(false,
                        "multiplicity formula failed on instance " +
                            std::to_string(inst) + " (" + serialize_poly(f) +
                            "): direct " + direct.str() + ", closed form " +
                            expected.str() + ", branch sum " + via_branches.str(),
                        note);
        }
    }
    return ok;
}

// ---- criterion 8: degree bounds, order bound, unit invariance ----------------
BivarPoly random_curve(long d, Sampler& s) {
    BivarPoly f;
    for (long tot = 2; tot <= d; ++tot)
        for (long i = 0; i <= tot; ++i) {
            long a = static_cast<long>(s.below(7)) - 3;
            if (a != 0) f.add_term(Coefficient(a), i, tot - i);
        }
    if (f.degree() != d) {
        long i = static_cast<long>(s.below(static_cast<unsigned long long>(d + 1)));
        f.add_term(Coefficient(s.nonzero_int()), i, d - i);
    }
    return f;
}

bool crit_bounds_suite(std::string& digest, std::string& note) {
    Tower tower;
    BivarPoly unit = BivarPoly::constant(Coefficient(1)) +
                     BivarPoly::monomial(Coefficient(1), 1, 0) +
                     BivarPoly::monomial(Coefficient(1), 0, 1);
    bool ok = true;
    for (long d = 2; d <= 5 && ok; ++d) {
        for (long i = 0; i < 100 && ok; ++i) {
            long base = 900000 + 4096 * (100 * d + i);
            // Rejection loop: the inequalities assume the curve germ is
            // reduced, so re-draw until every expanded branch is simple.
            BivarPoly f;
            bool found = false;
            for (long attempt = 0; attempt < 50 && !found; ++attempt) {
                Sampler s(static_cast<unsigned long long>(base + attempt));
                BivarPoly cand = random_curve(d, s);
                try {
                    auto [f1, shear, m] = mini_regularize(cand, base + attempt, tower);
                    BranchSet bs = expand_roots(f1, Rat(2), tower);
                    bool reduced = true;
                    for (const Branch& b : bs.branches) reduced &= b.multiplicity == 1;
                    if (!reduced) continue;
                } catch (const Error&) {
                    continue;
                }
                f = cand;
                found = true;
            }
            if (!expect(found, "no reduced curve found at degree " + std::to_string(d),
                        note)) {
                ok = false;
                break;
            }

            InvariantReport rep;
            InvariantReport rep_u;
            try {
                rep = gradient_exponent_complex(f, base, tower);
                rep_u = gradient_exponent_complex(f * unit, base, tower);
            } catch (const Error& e) {
                ok = expect(false,
                            "degree " + std::to_string(d) + " instance " +
                                std::to_string(i) + " (" + serialize_poly(f) +
                                "): " + e.what(),
                            note);
                break;
            }
            digest += render_report_json(rep, ctx_for("lojasiewicz", f, base));
            digest += render_report_json(rep_u, ctx_for("lojasiewicz", f * unit, base));

            std::string tag = "degree " + std::to_string(d) + " instance " +
                              std::to_string(i) + " (" + serialize_poly(f) + ")";
            ok &= expect(rep.d == f.degree(), tag + ": degree bookkeeping", note);
            Rat cap = Rat(1) - Rat(1, (rep.d - 1) * (rep.d - 1) + 1);
            ok &= expect(rep.L <= cap, tag + ": degree bound violated, L = " + rep.L.str(),
                         note);
            ok &= expect(Rat(rep.m - 1, rep.m) <= rep.L,
                         tag + ": order lower bound violated, L = " + rep.L.str(), note);
            ok &= expect(rep.L < Rat(1), tag + ": exponent not below 1", note);
            ok &= expect(rep_u.L == rep.L,
                         tag + ": unit multiplication changed L from " + rep.L.str() +
                             " to " + rep_u.L.str(),
                         note);
            ok &= expect(rep_u.m == rep.m, tag + ": unit multiplication changed the order",
                         note);
        }
    }
    return ok;
}

// ---- criterion 9: numeric slope oracle --------------------------------------
bool crit_numeric(std::string& digest, std::string& note) {
    Tower tower;
    struct NumericPair {
        BivarPoly f;
        PuiseuxSeries arc;
        Rat ell;
    };
    std::vector<NumericPair> pairs;

    BivarPoly sextic = parse_poly(kSexticText);
    for (const Branch& b : polar_branches(sextic, Rat(1), tower).branches) {
        Rat ell = serialize_arc(b.series) == "x = y" ? Rat(5, 6) : Rat(10, 11);
        pairs.push_back({sextic, b.series, ell});
    }

    BivarPoly real3 = parse_poly("x^3 + 3*x*y^3");
    for (const Branch& b : real_polar_branches(real3, Rat(1), 0, tower).branches)
        pairs.push_back({real3, b.series, Rat(2, 3)});
    BivarPoly real3m = real3.mirrored_y();
    for (const Branch& b : real_polar_branches(real3m, Rat(1), 0, tower).branches)
        pairs.push_back({real3m, b.series, Rat(7, 9)});

    for (const auto& [text, ell] :
         std::vector<std::pair<std::string, Rat>>{{"x^2 - y^3", Rat(2, 3)},
                                                  {"x^2 - y^5", Rat(4, 5)}}) {
        BivarPoly f = parse_poly(text);
        for (const Branch& b : polar_branches(f, Rat(1), tower).branches)
            pairs.push_back({f, b.series, ell});
    }

    BivarPoly two_level = parse_poly("(x^2 - y^2)*(x^2 - y^4)");
    for (const Branch& b : polar_branches(two_level, Rat(1), tower).branches) {
        Rat ell = serialize_arc(b.series) == "x = 0" ? Rat(5, 6) : Rat(3, 4);
        pairs.push_back({two_level, b.series, ell});
    }

    bool ok = expect(pairs.size() >= 10, "fewer example branches than expected", note);
    for (const NumericPair& p : pairs) {
        double est = numeric_exponent_estimate(p.f, p.arc, kTMin, kTMax, kSamples);
        digest += render_estimate_json(est, serialize_arc(p.arc), kTMin, kTMax, kSamples,
                                       ctx_for("estimate", p.f, 0));
        double err = std::fabs(est - p.ell.to_double());
        if (err > kSlopeTolerance) {
            ok = expect(false,
                        "slope along " + serialize_arc(p.arc) + " of " +
                            serialize_poly(p.f) + " is " + std::to_string(est) +
                            ", exact value " + p.ell.str(),
                        note);
        }
    }
    return ok;
}

struct Criterion {
    const char* name;
    std::function<bool(std::string&, std::string&)> fn;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"relative polygon: dots, angles, highest-edge polynomial", crit_polygon},
        {"polar branches, ell values, quotient set (two routes), gradient exponent",
         crit_sextic},
        {"real gradient exponent with one-sided values", crit_real_sides},
        {"gradient exponents of the classical cusps", crit_cusps},
        {"homogeneous law L = 1 - 1/d on 250 random products of lines", crit_homogeneous},
        {"two-level quotient set against a closed-form pairwise oracle", crit_two_level},
        {"route agreement and multiplicity formula on 200 random branch products",
         crit_branch_products},
        {"degree bound, order bound, and unit invariance on 400 random curves",
         crit_bounds_suite},
        {"numeric slope within 0.02 of the exact value on every example branch",
         crit_numeric},
    };

    std::vector<std::string> digests(criteria.size());
    bool all = true;

    for (std::size_t k = 0; k < criteria.size(); ++k) {
        auto t0 = std::chrono::steady_clock::now();
        std::string note;
        bool ok = false;
        try {
            ok = criteria[k].fn(digests[k], note);
        } catch (const std::exception& e) {
            note = e.what();
        }
        double sec = seconds_since(t0);
        if (kBudget[k] > 0 && sec > kBudget[k]) {
            ok = false;
            note = "exceeded the " + std::to_string(kBudget[k]) + "s budget";
        }
        std::printf("[%2zu] %s %8.3fs  %s%s%s\n", k + 1, ok ? "PASS" : "FAIL", sec,
                    criteria[k].name, note.empty() ? "" : " -- ", note.c_str());
        std::fflush(stdout);
        all &= ok;
    }

    // criterion 10: a full re-run must reproduce every JSON byte
    {
        auto t0 = std::chrono::steady_clock::now();
        std::string note;
        bool ok = true;
        for (std::size_t k = 0; k < criteria.size() && ok; ++k) {
            std::string digest2, note2;
            try {
                criteria[k].fn(digest2, note2);
            } catch (const std::exception&) {
            }
            if (digest2 != digests[k]) {
                ok = false;
                note = "criterion " + std::to_string(k + 1) + " JSON changed on re-run";
            }
        }
        double sec = seconds_since(t0);
        std::printf("[10] %s %8.3fs  byte-identical JSON on a complete re-run%s%s\n",
                    ok ? "PASS" : "FAIL", sec, note.empty() ? "" : " -- ", note.c_str());
        all &= ok;
    }

    std::printf("%s\n", all ? "acceptance: all criteria passed"
                            : "acceptance: FAILURES PRESENT");
    return all ? 0 : 1;
}
