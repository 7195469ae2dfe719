#include "polarcalc/invariants.hpp"

#include "polarcalc/edge_roots.hpp"
#include "polarcalc/newton_polygon.hpp"
#include "polarcalc/parser.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <tuple>

namespace polarcalc {

namespace {

// Internal expansion depth: public operations rely on structural separation
// plus truncation extension, so the expansion only needs to run until every
// branch has separated and reached exponent 1.
const Rat kPipelineDepth(1);

Rat ell_from_heights(const Rat& h0, const ExtRat& h1) {
    Rat a = (h0 - Rat(1)) / h0;
    if (h1.is_infinite()) return a;
    Rat b = h1.finite() / h0;
    return b < a ? b : a;
}

bool vec_all_exact(const std::vector<Coefficient>& v) {
    for (const Coefficient& c : v)
        if (!c.is_exact()) return false;
    return true;
}

ApproxComplex vec_scale(const std::vector<Coefficient>& p, const Tower& tower) {
    ApproxComplex s = ApproxComplex::from_double(0.0, 0.0, tower.prec);
    for (const Coefficient& c : p)
        s = ApproxComplex::max_real(s, c.mag(tower.prec));
    return s;
}

bool vec_nonzero_at(const std::vector<Coefficient>& p, const Coefficient& z,
                    const Tower& tower) {
    Coefficient val = eval_poly(p, z);
    if (val.is_exact() && vec_all_exact(p) && z.is_exact())
        return !val.is_structural_zero();
    return !tower.is_zero(val, vec_scale(p, tower));
}

// Arc x = g*y transverse to every tangent direction of f: the order form
// and its x-derivative are nonzero along the direction (g, 1), which pins
// ell(arc) = (m-1)/m.
Branch generic_line_branch(const BivarPoly& f, long seed, const Tower& tower) {
    const long m = f.order();
    std::vector<Coefficient> p;  // order form on the line y = 1, dense in x
    for (const auto& [k, c] : f.coeffs())
        if (k.first + k.second == m) {
            if (static_cast<long>(p.size()) <= k.first)
                p.resize(static_cast<std::size_t>(k.first) + 1, Coefficient(GaussRat()));
            p[static_cast<std::size_t>(k.first)] = c;
        }
    std::vector<Coefficient> dp = derive_poly(p);
    Sampler smp(static_cast<unsigned long long>(seed) + 0x6a09e667ull);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Coefficient g{GaussRat(smp.nonzero_rat())};
        if (!vec_nonzero_at(p, g, tower)) continue;
        if (!dp.empty() && !vec_nonzero_at(dp, g, tower)) continue;
        return Branch{PuiseuxSeries::monomial(g, Rat(1)), 1, BranchSource::Approximation};
    }
    throw GenericityFailed("no transverse line direction found after 64 attempts");
}

QuotientSet quotients_via_polar(const BivarPoly& f1, const Tower& tower) {
    QuotientSet qs;
    qs.route = QuotientRoute::PolarBranches;
    if (f1.order() < 2) return qs;
    BranchSet pb = polar_branches(f1, kPipelineDepth, tower);
    for (const Branch& b : pb.branches) {
        auto [arc, ord] = slide_to_stability(f1, b.series, tower);
        auto it = qs.witnesses.find(ord);
        if (it == qs.witnesses.end()) {
            QuotientWitness w;
            w.branch = b;  // branches arrive sorted: first realizer is canonical
            qs.witnesses.emplace(ord, std::move(w));
        }
    }
    for (const auto& [v, w] : qs.witnesses) qs.values.push_back(v);
    return qs;
}

// Substitute a generic approximating arc of the pair (i, j) into f1 and read
// the order off the polygon; it must match the contact-sum formula.
void verify_pair_by_substitution(const BivarPoly& f1, const BranchSet& roots,
                                 long i, long j, const Rat& expected, long seed,
                                 const Tower& tower) {
    const Branch& bi = roots.branches[static_cast<std::size_t>(i)];
    const Branch& bj = roots.branches[static_cast<std::size_t>(j)];
    for (int attempt = 0; attempt < 3; ++attempt) {
        GenericConstant g =
            make_generic_for_pair(f1, bi, bj, seed + 7919 * (attempt + 1), tower);
        ExtRat rho_e = contact_order(bi.series, bj.series, tower);
        PuiseuxSeries arc = bi.series.prefix_as_exact(rho_e.finite());
        arc.append_term(g.value, rho_e.finite());
        DiagramResult dr = build_relative_diagram(f1, arc, tower);
        if (!dr.diagram.h0.is_infinite() && dr.diagram.h0.finite() == expected) return;
    }
    throw RouteMismatch("pairwise quotient formula disagrees with direct substitution "
                        "for branch pair (" +
                        std::to_string(i) + ", " + std::to_string(j) + ")");
}

QuotientSet quotients_via_pairs(const BivarPoly& f1, long seed, const Tower& tower) {
    QuotientSet qs;
    qs.route = QuotientRoute::Approximations;
    if (f1.order() < 2) return qs;
    BranchSet roots = expand_roots(f1, kPipelineDepth, tower);
    const long r = static_cast<long>(roots.branches.size());
    if (r <= 1) return qs;
    for (long i = 0; i < r; ++i)
        for (long j = i + 1; j < r; ++j) {
            // order of f along a generic arc separating branches i and j:
            // the multiplicity-weighted sum of contacts with every branch
            Rat v(0);
            for (long k = 0; k < r; ++k) {
                ExtRat mk = min(roots.contact[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                                roots.contact[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
                v = v + Rat(roots.branches[static_cast<std::size_t>(k)].multiplicity) * mk.finite();
            }
            verify_pair_by_substitution(f1, roots, i, j, v, seed, tower);
            auto it = qs.witnesses.find(v);
            if (it == qs.witnesses.end()) {
                QuotientWitness w;
                w.pair = std::make_pair(i, j);
                qs.witnesses.emplace(v, std::move(w));
            }
        }
    for (const auto& [v, w] : qs.witnesses) qs.values.push_back(v);
    return qs;
}

std::string join_values(const std::vector<Rat>& vals) {
    std::string out = "{";
    for (std::size_t k = 0; k < vals.size(); ++k) {
        if (k) out += ", ";
        out += vals[k].str();
    }
    return out + "}";
}

}  // namespace

Rat ell_of_arc(const BivarPoly& f, const PuiseuxSeries& phi, const Tower& tower) {
    if (f.is_zero() || f.order() < 1)
        throw DomainError("the exponent of an arc requires f nonzero with f(0,0) = 0");
    if (!phi.is_structural_zero() && phi.terms().front().exp < Rat(1))
        throw DomainError("arc order below 1: the arc is tangent to the x-axis");
    auto [h0e, h1e] = ell_heights(f, phi, tower);
    return ell_from_heights(h0e.finite(), h1e);
}

QuotientSet polar_quotients(const BivarPoly& f, QuotientRoute route, long seed,
                            const Tower& tower) {
    if (!f.all_exact())
        throw NonExactInput("polar quotients require exact coefficients");
    auto [f1, shear, m] = mini_regularize(f, seed, tower);
    (void)m;
    switch (route) {
        case QuotientRoute::PolarBranches:
            return quotients_via_polar(f1, tower);
        case QuotientRoute::Approximations:
            return quotients_via_pairs(f1, seed, tower);
        case QuotientRoute::Both:
            break;
    }
    QuotientSet a = quotients_via_polar(f1, tower);
    QuotientSet b = quotients_via_pairs(f1, seed, tower);
    if (a.values != b.values)
        throw RouteMismatch("polar quotient routes disagree: branch route " +
                            join_values(a.values) + " vs pairwise route " +
                            join_values(b.values));
    QuotientSet qs;
    qs.route = QuotientRoute::Both;
    qs.values = a.values;
    for (const Rat& v : qs.values) {
        QuotientWitness w;
        w.branch = a.witnesses.at(v).branch;
        w.pair = b.witnesses.at(v).pair;
        qs.witnesses.emplace(v, std::move(w));
    }
    return qs;
}

namespace {

void fill_degree_fields(InvariantReport& rep) {
    Rat dm1 = Rat(rep.d) - Rat(1);
    rep.bound_classical = dm1 * dm1 + Rat(1);
    rep.bound_gradient = Rat(1) - Rat(1) / rep.bound_classical;
    rep.bound_classical_via_L = Rat(1) / (Rat(1) - rep.L);
}

}  // namespace

InvariantReport gradient_exponent_complex(const BivarPoly& f, long seed, const Tower& tower) {
    if (!f.all_exact())
        throw NonExactInput("the gradient exponent requires exact coefficients");
    auto [f1, shear, m] = mini_regularize(f, seed, tower);

    InvariantReport rep;
    rep.field = ScalarField::Complex;
    rep.m = m;
    rep.d = f1.degree();
    rep.shear = shear.value.exact().re;
    rep.seed = seed;
    for (const std::string& s : shear.conditions_checked) rep.certificates.push_back(s);

    if (m == 1) {
        rep.L = Rat(0);
        rep.quotients.route = QuotientRoute::Both;
        rep.witness = generic_line_branch(f1, seed, tower);
        rep.certificates.push_back("smooth point: the exponent is 0 along a transverse line");
        fill_degree_fields(rep);
        return rep;
    }

    BranchSet pb = polar_branches(f1, kPipelineDepth, tower);
    if (pb.branches.empty()) {
        rep.L = Rat(m - 1) / Rat(m);
        rep.witness = generic_line_branch(f1, seed, tower);
        rep.quotients = polar_quotients(f1, QuotientRoute::Both, seed, tower);
        rep.certificates.push_back(
            "no polar branches off f: the exponent (m-1)/m is realized by a transverse line");
        fill_degree_fields(rep);
        return rep;
    }

    bool have = false;
    Rat best;
    const Branch* best_branch = nullptr;
    for (const Branch& b : pb.branches) {
        auto [arc, ord] = slide_to_stability(f1, b.series, tower);
        Rat ell = (ord - Rat(1)) / ord;  // gradient branches have infinite co-height
        if (!have || ell > best) {
            have = true;
            best = ell;
            best_branch = &b;  // sorted order: first maximizer is canonical
        }
    }
    // The transverse-line value (m-1)/m is a lower bound; with polar
    // branches present the maximum over them dominates it.
    Rat base = Rat(m - 1) / Rat(m);
    if (best < base) {
        rep.witness = generic_line_branch(f1, seed, tower);
        rep.L = base;
    } else {
        rep.witness = *best_branch;
        rep.L = best;
    }

    rep.quotients = polar_quotients(f1, QuotientRoute::Both, seed, tower);
    if (!rep.quotients.values.empty()) {
        Rat qmax = rep.quotients.values.back();
        if (rep.L != Rat(1) - Rat(1) / qmax)
            throw RouteMismatch(
                "gradient exponent disagrees with the maximal polar quotient identity: L = " +
                rep.L.str() + " but max quotient is " + qmax.str());
        rep.certificates.push_back("identity held: L = 1 - 1/max(polar quotients)");
    }
    rep.certificates.push_back("polar quotient routes agreed (branch orders vs pairwise contacts)");
    fill_degree_fields(rep);
    return rep;
}

namespace {

// One side of the real exponent: max of the transverse-line value and the
// exponents of the real polar arcs of fr.
Rat real_side_exponent(const BivarPoly& fr, long seed, const Tower& tower, Branch* witness) {
    const long m = fr.order();
    Rat best = Rat(m - 1) / Rat(m);
    *witness = generic_line_branch(fr, seed, tower);
    BranchSet rpb = real_polar_branches(fr, kPipelineDepth, seed, tower);
    for (const Branch& b : rpb.branches) {
        Rat ell;
        if (b.series.truncation().is_infinite()) {
            ell = ell_of_arc(fr, b.series, tower);
        } else {
            auto [arc, ord] = slide_to_stability(fr, b.series, tower);
            ell = (ord - Rat(1)) / ord;  // whole real polar branch: infinite co-height
        }
        if (ell > best) {
            best = ell;
            *witness = b;
        }
    }
    return best;
}

}  // namespace

InvariantReport gradient_exponent_real(const BivarPoly& f, long seed, const Tower& tower) {
    for (const auto& [k, c] : f.coeffs())
        if (!c.is_exact() || !c.exact().is_real())
            throw DomainError("the real gradient exponent requires exact real coefficients");
    auto [f1, shear, m] = mini_regularize(f, seed, tower);

    InvariantReport rep;
    rep.field = ScalarField::Real;
    rep.m = m;
    rep.d = f1.degree();
    rep.shear = shear.value.exact().re;
    rep.seed = seed;
    for (const std::string& s : shear.conditions_checked) rep.certificates.push_back(s);

    if (m == 1) {
        rep.L = Rat(0);
        rep.L_plus = Rat(0);
        rep.L_minus = Rat(0);
        rep.quotients.route = QuotientRoute::Both;
        rep.witness = generic_line_branch(f1, seed, tower);
        rep.certificates.push_back("smooth point: the exponent is 0 along a transverse line");
        fill_degree_fields(rep);
        return rep;
    }

    Branch wit_plus, wit_minus;
    Rat lp = real_side_exponent(f1, seed, tower, &wit_plus);
    Rat lm = real_side_exponent(f1.mirrored_y(), seed, tower, &wit_minus);
    rep.L_plus = lp;
    rep.L_minus = lm;
    if (lm > lp) {
        rep.L = lm;
        rep.witness = wit_minus;
        rep.certificates.push_back(
            "maximum attained on the side y < 0; the witness arc is in the coordinates (x, -y)");
    } else {
        rep.L = lp;
        rep.witness = wit_plus;
        rep.certificates.push_back("maximum attained on the side y > 0");
    }
    rep.quotients = polar_quotients(f1, QuotientRoute::Both, seed, tower);
    fill_degree_fields(rep);
    return rep;
}

ExtRat intersection_multiplicity(const BivarPoly& fin, const BivarPoly& gin,
                                 const Tower& tower) {
    if (!fin.all_exact() || !gin.all_exact())
        throw NonExactInput("the intersection number requires exact coefficients");
    if (fin.is_zero())
        throw DomainError("the intersection number requires a nonzero first polynomial");
    if (fin.order() < 1)
        throw DomainError("the intersection number at the origin requires f(0,0) = 0");
    if (gin.is_zero()) return ExtRat::infinity();
    if (gin.order() == 0) return ExtRat(Rat(0));  // g does not pass through the origin

    BivarPoly f = fin, g = gin;
    if (!f.is_mini_regular()) {
        // intersection numbers are invariant under y -> y + c*x applied to both
        auto [f1, c, m] = mini_regularize(f, 0, tower);
        (void)m;
        f = std::move(f1);
        g = g.sheared(c.value);
    }

    Rat total(0);
    for (const FactorBranches& fb : expand_by_factor(f, kPipelineDepth, tower)) {
        for (const PuiseuxSeries& root : fb.roots) {
            ExtRat ord;
            if (root.truncation().is_infinite()) {
                ord = series_order(g.subst_series(root));
                if (ord.is_infinite()) return ExtRat::infinity();  // shared branch
            } else {
                auto cert = certify_order_along(g, fb.factor, root, tower);
                if (!cert) return ExtRat::infinity();  // the branch lies on g as well
                ord = ExtRat(cert->second);
            }
            total = total + Rat(fb.multiplicity) * ord.finite();
        }
    }
    if (!total.is_integer())
        throw Error("internal: intersection number came out non-integral: " + total.str());
    return ExtRat(total);
}

DegreeBounds degree_bounds(const BivarPoly& f, const Tower& tower) {
    InvariantReport rep = gradient_exponent_complex(f, 0, tower);
    DegreeBounds b;
    b.L = rep.L;
    b.bound_gradient = rep.bound_gradient;
    b.bound_classical = rep.bound_classical;
    b.bound_classical_via_L = rep.bound_classical_via_L;
    b.within_bounds =
        (b.L <= b.bound_gradient) && (b.bound_classical_via_L <= b.bound_classical);
    return b;
}

namespace {

// Term-magnitude evaluator: sum of |c| |x|^i |y|^j.  An evaluated value far
// below this scale is the residue of catastrophic cancellation, not signal
// (along an exact root of f, |f| evaluates to rounding noise).
class MagnitudeScale {
  public:
    explicit MagnitudeScale(const BivarPoly& f) {
        for (const auto& [key, c] : f.coeffs())
            terms_.emplace_back(key.first, key.second, c.mag(53).to_double_re());
    }
    double at(double ax, double ay) const {
        double s = 0.0;
        for (const auto& [i, j, m] : terms_)
            s += m * std::pow(ax, static_cast<double>(i)) *
                 std::pow(ay, static_cast<double>(j));
        return s;
    }

  private:
    std::vector<std::tuple<long, long, double>> terms_;
};

// Fraction of the term-magnitude sum below which a sample is noise.  Doubles
// carry ~2e-16 relative error; the extra orders leave room for degree-many
// accumulated operations.
constexpr double kCancellationGuard = 1e-12;

}  // namespace

double numeric_exponent_estimate(const BivarPoly& f, const PuiseuxSeries& phi,
                                 double t_min, double t_max, long samples) {
    if (!(t_min > 0.0) || !(t_max > t_min))
        throw DomainError("numeric estimation requires 0 < t_min < t_max");
    if (samples < 2)
        throw DegenerateSamples("at least two sample points are required");
    BivarPoly fx = f.derivative_x();
    BivarPoly fy = f.derivative_y();
    MagnitudeScale fm(f), fxm(fx), fym(fy);
    std::vector<double> xs, ys;
    const double lo = std::log(t_min), hi = std::log(t_max);
    for (long k = 0; k < samples; ++k) {
        double t = std::exp(lo + (hi - lo) * static_cast<double>(k) /
                                     static_cast<double>(samples - 1));
        std::complex<double> x = phi.eval_double(t);
        std::complex<double> y(t, 0.0);
        double fmag = std::abs(f.eval_double(x, y));
        double grad = std::hypot(std::abs(fx.eval_double(x, y)),
                                 std::abs(fy.eval_double(x, y)));
        double ax = std::abs(x), ay = std::abs(y);
        double fscale = fm.at(ax, ay);
        double gscale = std::hypot(fxm.at(ax, ay), fym.at(ax, ay));
        if (!std::isfinite(fmag) || !std::isfinite(grad) ||
            !(fmag > kCancellationGuard * fscale) ||
            !(grad > kCancellationGuard * gscale))
            continue;  // overflow, underflow, or cancellation noise: skip
        xs.push_back(std::log(fmag));
        ys.push_back(std::log(grad));
    }
    if (xs.size() < 2)
        throw DegenerateSamples("fewer than two usable sample points along the arc");
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double cov = 0, var = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        cov += (xs[k] - mx) * (ys[k] - my);
        var += (xs[k] - mx) * (xs[k] - mx);
    }
    if (var == 0.0)
        throw DegenerateSamples("the sampled values of |f| do not vary along the arc");
    return cov / var;
}

}  // namespace polarcalc
