#include "polarcalc/edge_roots.hpp"

#include <algorithm>

#include "polarcalc/detail/upoly.hpp"

namespace polarcalc {

Coefficient eval_poly(const std::vector<Coefficient>& poly, const Coefficient& z) {
    Coefficient acc{GaussRat{}};
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::vector<Coefficient> derive_poly(const std::vector<Coefficient>& poly) {
    std::vector<Coefficient> out;
    for (std::size_t k = 1; k < poly.size(); ++k)
        out.push_back(poly[k] * Coefficient(GaussRat(Rat(static_cast<long>(k)))));
    return out;
}

namespace {

ApproxComplex eval_approx(const std::vector<ApproxComplex>& p, const ApproxComplex& z) {
    ApproxComplex acc = ApproxComplex::from_double(0.0, 0.0, z.prec());
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
    return acc;
}

}  // namespace

std::vector<ApproxComplex> aberth_roots(const std::vector<ApproxComplex>& coeffs,
                                        mpfr_prec_t prec) {
    std::vector<ApproxComplex> p = coeffs;
    while (!p.empty() && p.back().exactly_zero()) p.pop_back();
    if (p.size() <= 1) return {};
    std::size_t n = p.size() - 1;

    std::vector<ApproxComplex> dp;
    for (std::size_t k = 1; k < p.size(); ++k)
        dp.push_back(p[k] * ApproxComplex::from_double(static_cast<double>(k), 0.0, prec));

    // Deterministic start: points on a circle of radius 1 + max |a_k / a_n|.
    ApproxComplex radius = ApproxComplex::from_double(1.0, 0.0, prec);
    for (std::size_t k = 0; k < n; ++k) {
        ApproxComplex q = (p[k] / p.back()).mag();
        radius = ApproxComplex::max_real(radius, q + ApproxComplex::from_double(1.0, 0.0, prec));
    }
    std::vector<ApproxComplex> z;
    z.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        z.push_back(radius * ApproxComplex::unit_circle(static_cast<long>(k),
                                                        static_cast<long>(n), prec));

    ApproxComplex eps = ApproxComplex::pow2(-static_cast<long>(prec) + 8, prec);
    const int max_iter = 2000;
    for (int iter = 0; iter < max_iter; ++iter) {
        ApproxComplex worst = ApproxComplex::from_double(0.0, 0.0, prec);
        for (std::size_t k = 0; k < n; ++k) {
            ApproxComplex pv = eval_approx(p, z[k]);
            if (pv.exactly_zero()) continue;
            ApproxComplex dv = eval_approx(dp, z[k]);
            if (dv.exactly_zero()) {
                // Nudge off a critical point deterministically.
                z[k] = z[k] + ApproxComplex::pow2(-static_cast<long>(prec) / 2, prec);
                worst = ApproxComplex::max_real(worst, ApproxComplex::from_double(1.0, 0.0, prec));
                continue;
            }
            ApproxComplex w = pv / dv;
            ApproxComplex repulse = ApproxComplex::from_double(0.0, 0.0, prec);
            bool skip = false;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                ApproxComplex diff = z[k] - z[j];
                if (diff.exactly_zero()) {
                    skip = true;
                    break;
                }
                repulse = repulse + ApproxComplex::from_double(1.0, 0.0, prec) / diff;
            }
            if (skip) {
                z[k] = z[k] + ApproxComplex::pow2(-static_cast<long>(prec) / 2, prec);
                worst = ApproxComplex::max_real(worst, ApproxComplex::from_double(1.0, 0.0, prec));
                continue;
            }
            ApproxComplex denom = ApproxComplex::from_double(1.0, 0.0, prec) - w * repulse;
            ApproxComplex corr = denom.exactly_zero() ? w : w / denom;
            z[k] = z[k] - corr;
            ApproxComplex rel = corr.mag();
            worst = ApproxComplex::max_real(worst, rel);
        }
        ApproxComplex bound = eps * ApproxComplex::max_real(
                                        ApproxComplex::from_double(1.0, 0.0, prec), radius);
        if (ApproxComplex::cmp_real(worst, bound) <= 0) break;
    }
    return z;
}

namespace {

using QPoly = detail::UPoly<GaussRat>;

std::vector<ApproxComplex> to_approx_vec(const QPoly& q, mpfr_prec_t prec) {
    std::vector<ApproxComplex> out;
    out.reserve(q.coeffs().size());
    for (const auto& c : q.coeffs()) out.push_back(ApproxComplex::from_gauss(c, prec));
    return out;
}

// Numeric roots of an exact squarefree polynomial, each promoted to an exact
// Gaussian rational when reconstruction verifies.
std::vector<Coefficient> roots_of_squarefree(const QPoly& q, const Tower& tower) {
    std::vector<Coefficient> out;
    if (q.degree() <= 0) return out;
    // Linear factor: solve exactly.
    if (q.degree() == 1) {
        GaussRat root = (GaussRat{} - q.coeff(0)) / q.coeff(1);
        out.emplace_back(root);
        return out;
    }
    auto numeric = aberth_roots(to_approx_vec(q, tower.prec), tower.prec);
    unsigned den_bits = static_cast<unsigned>(std::max<long>(8, tower.prec / 4));
    for (const auto& z : numeric) {
        GaussRat guess{z.reconstruct_re(den_bits), z.reconstruct_im(den_bits)};
        if (q.eval(guess).is_zero()) {
            out.emplace_back(guess);
        } else {
            out.emplace_back(z);
        }
    }
    return out;
}

}  // namespace

std::vector<EdgeRoot> distinct_nonzero_roots(const std::vector<Coefficient>& poly,
                                             const Tower& tower) {
    bool all_exact = std::all_of(poly.begin(), poly.end(),
                                 [](const Coefficient& c) { return c.is_exact(); });
    std::vector<EdgeRoot> out;

    if (all_exact) {
        std::vector<GaussRat> cs;
        cs.reserve(poly.size());
        for (const auto& c : poly) cs.push_back(c.exact());
        QPoly q{std::move(cs)};
        if (q.is_zero()) throw DomainError("roots of the zero polynomial");
        // Strip the power of z (zero roots are not wanted).
        std::size_t v = 0;
        while (detail::FieldOps<GaussRat>::is_zero(q.coeff(v))) ++v;
        if (v > 0) {
            std::vector<GaussRat> shifted(q.coeffs().begin() + static_cast<long>(v),
                                          q.coeffs().end());
            q = QPoly{std::move(shifted)};
        }
        for (const auto& [factor, mult] : detail::squarefree_yun(q))
            for (const auto& root : roots_of_squarefree(factor, tower))
                out.push_back({root, mult});
        std::stable_sort(out.begin(), out.end(), [](const EdgeRoot& a, const EdgeRoot& b) {
            return a.multiplicity > b.multiplicity;
        });
        return out;
    }

    // Approximate path: full numeric solve, cluster by tolerance.
    std::vector<ApproxComplex> ap;
    ap.reserve(poly.size());
    mpfr_prec_t prec = tower.prec;
    for (const auto& c : poly) {
        ap.push_back(c.is_exact() ? ApproxComplex::from_gauss(c.exact(), prec)
                                  : c.approx());
        prec = std::max(prec, ap.back().prec());
    }
    // Scale for both the zero test on coefficients and root clustering.
    ApproxComplex scale = ApproxComplex::from_double(1.0, 0.0, prec);
    for (const auto& a : ap) scale = ApproxComplex::max_real(scale, a.mag());
    ApproxComplex tol = tower.tau() * scale;
    // Drop tolerance-zero leading/trailing coefficients.
    auto is_small = [&](const ApproxComplex& a) {
        return ApproxComplex::cmp_real(a.mag(), tol) <= 0;
    };
    while (!ap.empty() && is_small(ap.back())) ap.pop_back();
    std::size_t v = 0;
    while (v < ap.size() && is_small(ap[v])) ++v;
    if (ap.size() <= v + 1) return out;
    std::vector<ApproxComplex> deflated(ap.begin() + static_cast<long>(v), ap.end());
    auto numeric = aberth_roots(deflated, prec);
    std::vector<bool> used(numeric.size(), false);
    for (std::size_t a = 0; a < numeric.size(); ++a) {
        if (used[a]) continue;
        std::vector<std::size_t> cluster{a};
        for (std::size_t b = a + 1; b < numeric.size(); ++b) {
            if (used[b]) continue;
            if (ApproxComplex::cmp_real((numeric[a] - numeric[b]).mag(), tol) <= 0) {
                cluster.push_back(b);
                used[b] = true;
            }
        }
        used[a] = true;
        if (ApproxComplex::cmp_real(numeric[a].mag(), tol) <= 0) continue;  // zero root
        ApproxComplex sum = ApproxComplex::from_double(0.0, 0.0, prec);
        for (std::size_t idx : cluster) sum = sum + numeric[idx];
        ApproxComplex mean =
            sum / ApproxComplex::from_double(static_cast<double>(cluster.size()), 0.0, prec);
        out.push_back({Coefficient(mean), static_cast<long>(cluster.size())});
    }
    std::stable_sort(out.begin(), out.end(), [](const EdgeRoot& a, const EdgeRoot& b) {
        return a.multiplicity > b.multiplicity;
    });
    return out;
}

}  // namespace polarcalc
