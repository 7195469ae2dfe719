#include "polarcalc/puiseux_solver.hpp"

#include "polarcalc/edge_roots.hpp"
#include "polarcalc/parser.hpp"

#include <algorithm>
#include <tuple>

namespace polarcalc {

namespace {

// ---------------------------------------------------------------- helpers

bool all_exact_vec(const std::vector<Coefficient>& v) {
    for (const Coefficient& c : v)
        if (!c.is_exact()) return false;
    return true;
}

ApproxComplex poly_scale(const std::vector<Coefficient>& p, const Tower& tower) {
    ApproxComplex s = ApproxComplex::from_double(0.0, 0.0, tower.prec);
    for (const Coefficient& c : p)
        s = ApproxComplex::max_real(s, c.mag(tower.prec));
    return s;
}

// Nonvanishing of a dense polynomial at a point, exactly when everything is
// exact and at the tower's tolerance otherwise.
bool nonzero_at(const std::vector<Coefficient>& p, const Coefficient& z,
                const ApproxComplex& scale, const Tower& tower) {
    Coefficient val = eval_poly(p, z);
    if (val.is_exact() && !z.is_exact()) val = Coefficient(val.to_approx(tower.prec));
    if (val.is_exact()) return !val.is_structural_zero();
    return !tower.is_zero(val, scale);
}

bool coeff_is_real(const Coefficient& c, const Tower& tower) {
    if (c.is_exact()) return c.exact().is_real();
    const ApproxComplex& a = c.approx();
    ApproxComplex two_im = a - a.conj();
    ApproxComplex limit = tower.tau() * a.mag();
    limit = limit + tower.tau();  // absolute floor for tiny coefficients
    return ApproxComplex::cmp_real(two_im.mag(), limit + limit) <= 0;
}

bool coeffs_equal_tol(const Coefficient& a, const Coefficient& b, const Tower& tower) {
    if (a.is_exact() && b.is_exact()) return (a - b).is_structural_zero();
    Coefficient diff = a - b;
    ApproxComplex scale = ApproxComplex::max_real(
        ApproxComplex::max_real(a.mag(tower.prec), b.mag(tower.prec)),
        ApproxComplex::from_double(1.0, 0.0, tower.prec));
    return tower.is_zero(diff, scale);
}

// One admissible continuation of a prefix along a curve: the next exponent,
// the leading coefficient, and the multiplicity of the edge-polynomial root.
struct Continuation {
    Rat rho;
    Coefficient coeff;
    long multiplicity = 1;
};

std::vector<Continuation> extract_continuations(const NewtonDiagram& dia,
                                                const Rat& bound, const Tower& tower) {
    std::vector<Continuation> out;
    for (const NewtonEdge& e : dia.edges) {
        if (!(e.tan_theta > bound)) continue;
        for (const EdgeRoot& r : distinct_nonzero_roots(e.edge_poly, tower))
            out.push_back({e.tan_theta, r.value, r.multiplicity});
    }
    std::sort(out.begin(), out.end(), [](const Continuation& a, const Continuation& b) {
        if (a.rho != b.rho) return a.rho < b.rho;
        if (a.multiplicity != b.multiplicity) return a.multiplicity > b.multiplicity;
        return serialize_coeff(a.coeff) < serialize_coeff(b.coeff);
    });
    return out;
}

std::vector<Continuation> continuations_along(const BivarPoly& q, const PuiseuxSeries& prefix,
                                              const Rat& bound, const Tower& tower) {
    DiagramResult dr = build_relative_diagram(q, prefix.as_exact(), tower);
    return extract_continuations(dr.diagram, bound, tower);
}

// min over all diagram dots of rho*i + h: the order of the polynomial along
// any arc extending the prefix at exponent rho.  Lower-bounds the order
// along every such extension.
ExtRat functional_min(const NewtonDiagram& dia, const Rat& rho) {
    ExtRat best = ExtRat::infinity();
    for (const NewtonDot& d : dia.dots)
        best = min(best, ExtRat(rho * Rat(d.i) + d.h));
    return best;
}

// ------------------------------------------------------ branch expansion

struct ExpandContext {
    const BivarPoly* poly = nullptr;  // squarefree factor being expanded
    Rat depth;
    Rat hard_cap;
    const Tower* tower = nullptr;
    std::vector<PuiseuxSeries>* out = nullptr;
};

void expand_from(const ExpandContext& cx, const PuiseuxSeries& prefix, const Rat& bound) {
    if (bound > cx.hard_cap)
        throw TruncationTooShallow("branch expansion exceeded the exponent cap " +
                                   cx.hard_cap.str());
    DiagramResult dr = build_relative_diagram(*cx.poly, prefix, *cx.tower);
    const bool exact_root = dr.diagram.h0.is_infinite();
    if (exact_root) cx.out->push_back(prefix);
    std::vector<Continuation> cands = extract_continuations(dr.diagram, bound, *cx.tower);
    if (cands.empty()) {
        if (!exact_root)
            throw Error("internal: expansion dead end at a prefix that is not a root");
        return;
    }
    if (!exact_root && cands.size() == 1 && cands[0].multiplicity == 1 &&
        bound >= cx.depth) {
        // From here the continuation is unique and simple, so the branch is
        // fully determined; emit the prefix truncated strictly between its
        // last exponent and the next one.
        Rat mid = (bound + cands[0].rho) / Rat(2);
        cx.out->push_back(prefix.with_truncation(ExtRat(mid)));
        return;
    }
    for (const Continuation& c : cands) {
        PuiseuxSeries next = prefix;
        next.append_term(c.coeff, c.rho);
        expand_from(cx, next, c.rho);
    }
}

void sort_branches(std::vector<Branch>& v) {
    std::stable_sort(v.begin(), v.end(), [](const Branch& a, const Branch& b) {
        return serialize_arc(a.series) < serialize_arc(b.series);
    });
}

// Pairwise contact matrix; throws IndeterminateContact if some pair agrees
// up to a finite truncation.
void fill_contacts(BranchSet& bs, const Tower& tower) {
    const std::size_t n = bs.branches.size();
    bs.contact.assign(n, std::vector<ExtRat>(n, ExtRat::infinity()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            ExtRat c = contact_order(bs.branches[i].series, bs.branches[j].series, tower);
            if (c.is_infinite())
                throw Error("internal: two distinct branches compare as identical");
            bs.contact[i][j] = c;
            bs.contact[j][i] = c;
        }
}

BranchSet expand_roots_once(const BivarPoly& f, const Rat& depth, const Tower& tower) {
    BranchSet bs;
    bs.regularity = Regularity{Rat(0), f.order()};
    for (const FactorBranches& fb : expand_by_factor(f, depth, tower))
        for (const PuiseuxSeries& s : fb.roots)
            bs.branches.push_back(Branch{s, fb.multiplicity, BranchSource::RootOfF});
    long total = 0;
    for (const Branch& b : bs.branches) total += b.multiplicity;
    if (total != f.order())
        throw Error("internal: branch multiplicities sum to " + std::to_string(total) +
                    " but the order is " + std::to_string(f.order()));
    sort_branches(bs.branches);
    return bs;
}

}  // namespace

// ----------------------------------------------------------------- Sampler

unsigned long long Sampler::below(unsigned long long n) {
    return n == 0 ? 0 : gen_() % n;
}

Rat Sampler::nonzero_rat() {
    long p = static_cast<long>(below(12)) + 1;
    long q = static_cast<long>(below(12)) + 1;
    bool neg = below(2) == 1;
    return Rat(neg ? -p : p, q);
}

Rat Sampler::nonzero_int() {
    long p = static_cast<long>(below(9)) + 1;
    bool neg = below(2) == 1;
    return Rat(neg ? -p : p);
}

// --------------------------------------------------------- mini_regularize

std::tuple<BivarPoly, GenericConstant, long>
mini_regularize(const BivarPoly& f, long seed, const Tower& tower) {
    if (f.is_zero()) throw DomainError("cannot regularize the zero polynomial");
    if (f.order() < 1) throw DomainError("regularization requires f(0,0) = 0");
    const long m = f.order();
    GenericConstant g;
    g.seed = seed;
    if (f.is_mini_regular()) {
        g.value = Coefficient(GaussRat());
        g.has_value = true;
        return {f, g, m};
    }
    // The order-m form of f, restricted to the line x = 1, as a dense
    // polynomial in c: sum over i+j = m of c_ij * c^j.  Shearing y -> y + c*x
    // makes f mini-regular exactly when this polynomial is nonzero at c.
    std::vector<Coefficient> mpoly;
    for (const auto& [k, c] : f.coeffs())
        if (k.first + k.second == m) {
            if (static_cast<long>(mpoly.size()) <= k.second)
                mpoly.resize(static_cast<std::size_t>(k.second) + 1, Coefficient(GaussRat()));
            mpoly[static_cast<std::size_t>(k.second)] = c;
        }
    ApproxComplex scale = poly_scale(mpoly, tower);
    Sampler smp(static_cast<unsigned long long>(seed));
    for (int attempt = 0; attempt < 64; ++attempt) {
        Rat c = smp.nonzero_int();
        Coefficient cc{GaussRat(c)};
        if (!nonzero_at(mpoly, cc, scale, tower)) continue;
        BivarPoly sheared = f.sheared(cc);
        if (!sheared.is_mini_regular()) continue;
        g.value = cc;
        g.has_value = true;
        g.conditions_checked.push_back("order form nonzero along the shear direction: f_" +
                                       std::to_string(m) + "(1, " + c.str() + ") != 0");
        return {std::move(sheared), g, m};
    }
    throw GenericityFailed("no shear constant made the polynomial mini-regular after 64 attempts");
}

// ------------------------------------------------------------------- slide

PuiseuxSeries slide(const BivarPoly& f, const PuiseuxSeries& phi,
                    const Coefficient& root_choice, const Tower& tower) {
    NewtonDiagram dia = relative_diagram(f, phi, tower);
    if (dia.h0.is_infinite())
        throw PhiIsRoot("cannot slide: the arc is already a root");
    if (!dia.highest_edge)
        throw DomainError("no compact edge reaches the height axis; nothing to slide along");
    const NewtonEdge& he = *dia.highest_edge;
    if (nonzero_at(he.edge_poly, root_choice, poly_scale(he.edge_poly, tower), tower))
        throw NotARoot("the chosen constant is not a root of the highest edge polynomial");
    if (!(ExtRat(he.tan_theta) < phi.truncation()))
        throw TruncationTooShallow("sliding step at exponent " + he.tan_theta.str() +
                                   " is not visible below the arc's truncation order");
    return phi + PuiseuxSeries::monomial(root_choice, he.tan_theta);
}

// ------------------------------------------------------------ expand_roots

std::vector<FactorBranches>
expand_by_factor(const BivarPoly& f, const Rat& depth, const Tower& tower) {
    if (!f.all_exact())
        throw NonExactInput("branch expansion requires exact coefficients");
    if (f.is_zero() || f.order() < 1)
        throw DomainError("branch expansion requires a nonzero polynomial vanishing at the origin");
    if (!f.is_mini_regular())
        throw DomainError("branch expansion requires a mini-regular polynomial; shear first");
    if (!(depth > Rat(0)))
        throw DomainError("expansion depth must be positive");
    const long d = std::max<long>(f.degree(), 1);
    const Rat cap = Rat(16) * Rat(d) * Rat(d);
    std::vector<FactorBranches> out;
    for (const auto& [p, mult] : squarefree_decompose_x(f)) {
        FactorBranches fb{p, mult, {}};
        ExpandContext cx{&p, depth, cap, &tower, &fb.roots};
        expand_from(cx, PuiseuxSeries::zero(), Rat(0));
        out.push_back(std::move(fb));
    }
    return out;
}

BranchSet expand_roots(const BivarPoly& f, const Rat& depth, const Tower& tower) {
    const long d = std::max<long>(f.degree(), 1);
    const Rat cap = Rat(16) * Rat(d) * Rat(d);
    Rat dk = depth;
    for (;;) {
        BranchSet bs = expand_roots_once(f, dk, tower);
        try {
            fill_contacts(bs, tower);
            return bs;
        } catch (const IndeterminateContact&) {
            dk = dk * Rat(2);
            if (dk > cap)
                throw TruncationTooShallow(
                    "contact orders remain indeterminate at the expansion depth cap");
        }
    }
}

// ------------------------------------------------------- slide_to_stability

std::pair<PuiseuxSeries, Rat>
slide_to_stability(const BivarPoly& f, const PuiseuxSeries& phi, const Tower& tower) {
    if (phi.truncation().is_infinite()) {
        NewtonDiagram dia = relative_diagram(f, phi, tower);
        if (dia.h0.is_infinite())
            throw PhiIsRoot("the arc is a root; its order along f is infinite");
        return {phi, dia.h0.finite()};
    }
    // Truncated arc: the height is certified for every admissible completion
    // exactly when the truncation order exceeds the highest edge angle of
    // the polygon relative to the stored prefix, so that any further term
    // lies strictly above the support line through (0, h0).
    DiagramResult dr = build_relative_diagram(f, phi.as_exact(), tower);
    const NewtonDiagram& dia = dr.diagram;
    if (dia.h0.is_infinite())
        throw TruncationTooShallow(
            "the stored prefix is a root of f; the truncation cannot certify a finite order");
    if (dia.highest_edge && !(phi.truncation() > ExtRat(dia.highest_edge->tan_theta)))
        throw TruncationTooShallow("truncation order " + phi.truncation().str() +
                                   " does not exceed the highest edge angle " +
                                   dia.highest_edge->tan_theta.str());
    return {phi, dia.h0.finite()};
}

// ---------------------------------------------------- certify_order_along

std::optional<std::pair<PuiseuxSeries, Rat>>
certify_order_along(const BivarPoly& target, const BivarPoly& guide,
                    const PuiseuxSeries& prefix, const Tower& tower) {
    const long dt = std::max<long>(target.degree(), 1);
    const long dg = std::max<long>(guide.degree(), 1);
    // A branch of the guide that is not a root of the target meets it with
    // total multiplicity at most deg(guide) * deg(target); any certified
    // lower bound on the order beyond that proves the branch is a root.
    const Rat degree_cap = Rat(dt) * Rat(dg);
    const Rat hard_cap = Rat(16) * Rat(dt + dg) * Rat(dt + dg);

    PuiseuxSeries psi = prefix.as_exact();
    bool complete = prefix.truncation().is_infinite();
    Rat bound = psi.is_structural_zero() ? Rat(0) : psi.last_exponent();

    for (;;) {
        DiagramResult dr = build_relative_diagram(target, psi, tower);
        const NewtonDiagram& dia = dr.diagram;

        if (complete) {
            if (dia.h0.is_infinite()) return std::nullopt;  // exact root of target
            return std::make_pair(psi, dia.h0.finite());
        }

        std::vector<Continuation> cands = continuations_along(guide, psi, bound, tower);
        if (cands.empty()) {
            // The stored prefix is itself a polynomial root of the guide;
            // the branch ends here.
            complete = true;
            continue;
        }
        if (cands.size() != 1 || cands[0].multiplicity != 1)
            throw Error("internal: truncated branch prefix does not determine a unique "
                        "simple continuation along the guide");
        const Rat rho = cands[0].rho;

        if (!dia.h0.is_infinite() &&
            (!dia.highest_edge || rho > dia.highest_edge->tan_theta)) {
            // Frozen: every admissible completion leaves the height at h0.
            return std::make_pair(psi.with_truncation(ExtRat(rho)), dia.h0.finite());
        }
        ExtRat lower = functional_min(dia, rho);
        if (lower > ExtRat(degree_cap))
            return std::nullopt;  // order along the branch exceeds the degree bound
        psi.append_term(cands[0].coeff, rho);
        bound = rho;
        if (bound > hard_cap)
            throw TruncationTooShallow("order certification exceeded the exponent cap");
    }
}

// ---------------------------------------------------------- polar_branches

BranchSet polar_branches(const BivarPoly& f, const Rat& depth, const Tower& tower) {
    if (!f.all_exact())
        throw NonExactInput("polar branches require exact coefficients");
    if (f.is_zero() || f.order() < 2)
        throw DomainError("polar branches require order at least 2 at the origin");
    if (!f.is_mini_regular())
        throw DomainError("polar branches require a mini-regular polynomial; shear first");

    BivarPoly q = f.derivative_x();
    BranchSet roots = expand_roots(q, depth, tower);

    BranchSet out;
    out.regularity = Regularity{Rat(0), f.order()};
    for (const Branch& b : roots.branches) {
        auto cert = certify_order_along(f, q, b.series, tower);
        if (!cert) continue;  // the branch lies on f itself; not a polar branch
        out.branches.push_back(Branch{cert->first, b.multiplicity, BranchSource::Polar});
    }
    sort_branches(out.branches);
    fill_contacts(out, tower);
    return out;
}

// ----------------------------------------------------------- approximation

PuiseuxSeries approximation(const Branch& xi_i, const Branch& xi_j,
                            const GenericConstant& g, const Tower& tower) {
    if (!g.has_value || g.value.is_structural_zero())
        throw GenericityFailed("approximation requires a prepared nonzero generic constant");
    ExtRat rho_e = contact_order(xi_i.series, xi_j.series, tower);
    if (rho_e.is_infinite())
        throw DomainError("identical branches have no approximation arc");
    const Rat rho = rho_e.finite();
    PuiseuxSeries arc = xi_i.series.prefix_as_exact(rho);
    arc.append_term(g.value, rho);
    Rat cut = rho + Rat(1, arc.denom());
    return arc.with_truncation(ExtRat(cut));
}

GenericConstant make_generic_for_pair(const BivarPoly& f, const Branch& xi_i,
                                      const Branch& xi_j, long seed, const Tower& tower) {
    ExtRat rho_e = contact_order(xi_i.series, xi_j.series, tower);
    if (rho_e.is_infinite())
        throw DomainError("identical branches have no approximation arc");
    const Rat rho = rho_e.finite();
    PuiseuxSeries prefix = xi_i.series.prefix_as_exact(rho);
    DiagramResult dr = build_relative_diagram(f, prefix, tower);
    std::vector<Coefficient> e0 = delta_poly(dr.diagram, rho);
    std::vector<Coefficient> e1 = derive_poly(e0);
    ApproxComplex scale0 = poly_scale(e0, tower);
    ApproxComplex scale1 = poly_scale(e1, tower);

    GenericConstant g;
    g.seed = seed;
    Sampler smp(static_cast<unsigned long long>(seed));
    for (int attempt = 0; attempt < 64; ++attempt) {
        Coefficient cc{GaussRat(smp.nonzero_rat())};
        if (!nonzero_at(e0, cc, scale0, tower)) continue;
        if (e1.size() > 0 && !nonzero_at(e1, cc, scale1, tower)) continue;
        g.value = cc;
        g.has_value = true;
        g.conditions_checked.push_back(
            "support-minimum polynomial at contact order " + rho.str() + " nonzero at g");
        g.conditions_checked.push_back(
            "derivative of the support-minimum polynomial nonzero at g");
        return g;
    }
    throw GenericityFailed(
        "no constant satisfied the approximation genericity conditions after 64 attempts");
}

// ----------------------------------------------------- real_polar_branches

namespace {

std::optional<Rat> first_nonreal_exponent(const PuiseuxSeries& s, const Tower& tower) {
    for (const PuiseuxTerm& t : s.terms())
        if (!coeff_is_real(t.coeff, tower)) return t.exp;
    return std::nullopt;
}

}  // namespace

BranchSet real_polar_branches(const BivarPoly& f, const Rat& depth, long seed,
                              const Tower& tower) {
    for (const auto& [k, c] : f.coeffs())
        if (!c.is_exact() || !c.exact().is_real())
            throw DomainError("real polar branches require exact real coefficients");
    BranchSet pb = polar_branches(f, depth, tower);

    BranchSet out;
    out.regularity = pb.regularity;
    out.seed = seed;

    // Branches with a non-real coefficient are grouped by (real prefix,
    // first non-real exponent); conjugate branches share a group and
    // collapse into one real replacement arc.
    struct Group {
        PuiseuxSeries prefix;
        Rat s;
        long mult = 0;
    };
    std::map<std::string, Group> groups;
    for (const Branch& b : pb.branches) {
        std::optional<Rat> s = first_nonreal_exponent(b.series, tower);
        if (!s) {
            // All stored coefficients are real.  The continuation past the
            // truncation is unique and simple, so it coincides with its own
            // conjugate: the whole branch is real and is kept as is.
            out.branches.push_back(Branch{b.series, b.multiplicity, BranchSource::RealPolar});
            continue;
        }
        PuiseuxSeries prefix = b.series.prefix_as_exact(*s);
        std::string key = serialize_arc(prefix) + " @ " + s->str();
        auto [it, fresh] = groups.try_emplace(key, Group{prefix, *s, 0});
        it->second.mult += b.multiplicity;
    }

    Sampler smp(static_cast<unsigned long long>(seed));
    for (auto& [key, grp] : groups) {
        DiagramResult dr = build_relative_diagram(f, grp.prefix, tower);
        std::vector<Coefficient> e0 = delta_poly(dr.diagram, grp.s);
        std::vector<Coefficient> e1 = derive_poly(e0);
        ApproxComplex scale0 = poly_scale(e0, tower);
        ApproxComplex scale1 = poly_scale(e1, tower);
        // Coefficients already occupying the replacement exponent on any
        // polar branch with the same real prefix must be avoided, so the
        // replacement is a genuinely new arc with contact exactly s.
        std::vector<Coefficient> excluded;
        for (const Branch& b : pb.branches) {
            if (!(ExtRat(grp.s) < b.series.truncation())) continue;
            if (!(b.series.prefix_as_exact(grp.s) == grp.prefix)) continue;
            Coefficient at_s = b.series.coeff_at(grp.s);
            if (!at_s.is_structural_zero()) excluded.push_back(at_s);
        }
        bool placed = false;
        for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
            Coefficient cc{GaussRat(smp.nonzero_rat())};
            if (!nonzero_at(e0, cc, scale0, tower)) continue;
            if (e1.size() > 0 && !nonzero_at(e1, cc, scale1, tower)) continue;
            bool clash = false;
            for (const Coefficient& ex : excluded)
                if (coeffs_equal_tol(cc, ex, tower)) { clash = true; break; }
            if (clash) continue;
            PuiseuxSeries arc = grp.prefix;
            arc.append_term(cc, grp.s);
            out.branches.push_back(Branch{arc, grp.mult, BranchSource::RealPolar});
            placed = true;
        }
        if (!placed)
            throw GenericityFailed(
                "no real constant satisfied the realification conditions after 64 attempts");
    }

    sort_branches(out.branches);
    fill_contacts(out, tower);
    return out;
}

}  // namespace polarcalc
