// Standalone timing probe for the randomized acceptance workloads.  Not part
// of the test suite; builds only when POLARCALC_BUILD_PROBE is set.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "polarcalc/bivar_poly.hpp"
#include "polarcalc/invariants.hpp"
#include "polarcalc/parser.hpp"
#include "polarcalc/puiseux_solver.hpp"
#include "polarcalc/rational.hpp"

using namespace polarcalc;

namespace {

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct BranchFactor {
    long q, p;
    Rat c;
    long mult;
    Rat exp;
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

BivarPoly gen_product(long seed) {
    Sampler s(static_cast<unsigned long long>(seed));
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
        factors[0].mult = 2;
    return product_of_factors(factors);
}

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

}  // namespace

int main(int argc, char** argv) {
    const std::string mode = argc > 1 ? argv[1] : "products";
    long lo = argc > 2 ? std::atol(argv[2]) : 0;
    long hi = argc > 3 ? std::atol(argv[3]) : 20;
    Tower tower;

    if (mode == "gen") {
        for (long inst = lo; inst < hi; ++inst) {
            BivarPoly f = gen_product(50000 + inst);
            std::printf("inst %3ld deg %2ld ord %2ld  %s\n", inst, f.degree(), f.order(),
                        serialize_poly(f).c_str());
        }
    } else if (mode == "polar_only") {
        for (long inst = lo; inst < hi; ++inst) {
            long seed = 50000 + inst;
            BivarPoly f = gen_product(seed);
            double t0 = now_s();
            QuotientSet qa = polar_quotients(f, QuotientRoute::PolarBranches, seed, tower);
            double t1 = now_s();
            std::string vals;
            for (const Rat& v : qa.values) vals += v.str() + " ";
            std::printf("inst %3ld deg %2ld ord %2ld  polar %7.2fs  {%s}\n", inst,
                        f.degree(), f.order(), t1 - t0, vals.c_str());
            std::fflush(stdout);
        }
    } else if (mode == "approx_only") {
        for (long inst = lo; inst < hi; ++inst) {
            long seed = 50000 + inst;
            BivarPoly f = gen_product(seed);
            double t0 = now_s();
            QuotientSet qb = polar_quotients(f, QuotientRoute::Approximations, seed, tower);
            double t1 = now_s();
            std::string vals;
            for (const Rat& v : qb.values) vals += v.str() + " ";
            std::printf("inst %3ld deg %2ld ord %2ld  approx %7.2fs  {%s}\n", inst,
                        f.degree(), f.order(), t1 - t0, vals.c_str());
            std::fflush(stdout);
        }
    } else if (mode == "products") {
        for (long inst = lo; inst < hi; ++inst) {
            long seed = 50000 + inst;
            BivarPoly f = gen_product(seed);
            double t0 = now_s();
            QuotientSet qa = polar_quotients(f, QuotientRoute::PolarBranches, seed, tower);
            double t1 = now_s();
            QuotientSet qb = polar_quotients(f, QuotientRoute::Approximations, seed, tower);
            double t2 = now_s();
            std::string vals;
            for (const Rat& v : qa.values) vals += v.str() + " ";
            std::printf("inst %3ld deg %2ld ord %2ld  polar %7.2fs approx %7.2fs  {%s} %s\n",
                        inst, f.degree(), f.order(), t1 - t0, t2 - t1, vals.c_str(),
                        serialize_poly(f).c_str());
            std::fflush(stdout);
        }
    } else if (mode == "bounds") {
        BivarPoly unit = BivarPoly::constant(Coefficient(1)) +
                         BivarPoly::monomial(Coefficient(1), 1, 0) +
                         BivarPoly::monomial(Coefficient(1), 0, 1);
        for (long d = lo; d <= hi; ++d) {
            for (long i = 0; i < 100; ++i) {
                long base = 900000 + 4096 * (100 * d + i);
                BivarPoly f;
                bool found = false;
                double t0 = now_s();
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
                double t1 = now_s();
                if (!found) {
                    std::printf("d %ld inst %3ld: NO REDUCED CURVE\n", d, i);
                    continue;
                }
                InvariantReport rep = gradient_exponent_complex(f, base, tower);
                double t2 = now_s();
                InvariantReport rep_u = gradient_exponent_complex(f * unit, base, tower);
                double t3 = now_s();
                std::printf("d %ld inst %3ld  gen %6.2fs L %7.2fs Lu %7.2fs  L=%s\n", d, i,
                            t1 - t0, t2 - t1, t3 - t2, rep.L.str().c_str());
                std::fflush(stdout);
            }
        }
    }
    return 0;
}
