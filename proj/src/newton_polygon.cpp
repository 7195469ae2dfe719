#include "polarcalc/newton_polygon.hpp"

#include <algorithm>
#include <map>

namespace polarcalc {

namespace {

// Orientation of the path O -> A -> B in the (i, h) plane; > 0 is a left turn.
Rat cross(const NewtonDot& o, const NewtonDot& a, const NewtonDot& b) {
    return (Rat(a.i) - Rat(o.i)) * (b.h - o.h) - (a.h - o.h) * (Rat(b.i) - Rat(o.i));
}

std::vector<NewtonEdge> hull_edges(const std::vector<NewtonDot>& dots) {
    // Per-column minimum dots, sorted by i.
    std::map<long, NewtonDot> col_min;
    for (const auto& d : dots) {
        auto it = col_min.find(d.i);
        if (it == col_min.end() || d.h < it->second.h) col_min.insert_or_assign(d.i, d);
    }
    std::vector<NewtonDot> pts;
    pts.reserve(col_min.size());
    for (auto& [i, d] : col_min) pts.push_back(d);

    // Lower convex hull (monotone chain); collinear middle points removed.
    std::vector<NewtonDot> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2 &&
               cross(hull[hull.size() - 2], hull[hull.size() - 1], p).sign() <= 0)
            hull.pop_back();
        hull.push_back(p);
    }

    // Compact edges are the hull segments with negative slope; walking the
    // chain right-to-left lists them by increasing tan_theta.
    std::vector<NewtonEdge> edges;
    for (std::size_t k = hull.size(); k >= 2; --k) {
        const NewtonDot& L = hull[k - 2];
        const NewtonDot& R = hull[k - 1];
        if (!(L.h > R.h)) continue;  // not a descending segment
        NewtonEdge e;
        e.left = L;
        e.right = R;
        e.tan_theta = (L.h - R.h) / (Rat(R.i) - Rat(L.i));
        // Dots exactly on the segment contribute to the edge polynomial.
        e.edge_poly.assign(static_cast<std::size_t>(R.i) + 1, Coefficient(GaussRat{}));
        for (const auto& d : dots) {
            if (d.i < L.i || d.i > R.i) continue;
            Rat lhs = (d.h - L.h) * (Rat(R.i) - Rat(L.i));
            Rat rhs = (R.h - L.h) * (Rat(d.i) - Rat(L.i));
            if (lhs == rhs)
                e.edge_poly[static_cast<std::size_t>(d.i)] =
                    e.edge_poly[static_cast<std::size_t>(d.i)] + d.coeff;
        }
        edges.push_back(std::move(e));
    }
    return edges;
}

}  // namespace

DiagramResult build_relative_diagram(const BivarPoly& f, const PuiseuxSeries& phi,
                                     const Tower& tower) {
    if (f.is_zero()) throw DomainError("diagram of the zero polynomial");
    for (const auto& t : phi.terms())
        if (t.exp.sign() < 0) throw DomainError("arc with negative exponent");

    auto cols = f.columns_relative(phi);

    DiagramResult out;
    NewtonDiagram& dg = out.diagram;

    // One scale for the whole elimination: the largest coefficient magnitude
    // across every column.
    ApproxComplex scale = ApproxComplex::from_double(0.0, 0.0, tower.prec);
    bool any_approx = false;
    for (const auto& col : cols) {
        scale = ApproxComplex::max_real(scale, col.coeff_scale(tower.prec));
        for (const auto& t : col.terms())
            if (!t.coeff.is_exact()) any_approx = true;
    }
    dg.tolerance_used = any_approx;

    for (long i = 0; i < static_cast<long>(cols.size()); ++i) {
        for (const auto& t : cols[static_cast<std::size_t>(i)].terms()) {
            if (t.coeff.is_exact()) {
                if (t.coeff.exact().is_zero()) continue;
            } else if (tower.is_zero(t.coeff, scale)) {
                continue;
            }
            dg.dots.push_back({i, t.exp, t.coeff, true});
        }
    }
    std::sort(dg.dots.begin(), dg.dots.end(), [](const NewtonDot& a, const NewtonDot& b) {
        if (a.i != b.i) return a.i < b.i;
        return a.h < b.h;
    });

    auto column_height = [&](long i, bool& certified) -> ExtRat {
        for (const auto& d : dg.dots)
            if (d.i == i) {
                certified = true;
                return ExtRat(d.h);
            }
        const PuiseuxSeries& col = i < static_cast<long>(cols.size())
                                       ? cols[static_cast<std::size_t>(i)]
                                       : cols.front();  // unused fallback
        bool in_range = i < static_cast<long>(cols.size());
        certified = !in_range || col.truncation().is_infinite();
        return ExtRat::infinity();
    };
    dg.h0 = column_height(0, out.h0_certified);
    dg.h1 = column_height(1, out.h1_certified);

    dg.edges = hull_edges(dg.dots);
    if (!dg.edges.empty() && dg.edges.back().left.i == 0)
        dg.highest_edge = dg.edges.back();
    return out;
}

NewtonDiagram relative_diagram(const BivarPoly& f, const PuiseuxSeries& phi,
                               const Tower& tower) {
    DiagramResult r = build_relative_diagram(f, phi, tower);
    if (!r.h0_certified)
        throw TruncationTooShallow(
            "lowest dot on X=0 cannot be certified: substitution vanishes to the "
            "arc's truncation budget");
    if (!r.h1_certified)
        throw TruncationTooShallow(
            "lowest dot on X=1 cannot be certified against the arc's truncation");
    return std::move(r.diagram);
}

std::vector<NewtonEdge> polygon_edges(const NewtonDiagram& diagram) {
    if (diagram.dots.empty()) throw DomainError("polygon of an empty diagram");
    return hull_edges(diagram.dots);
}

std::pair<ExtRat, ExtRat> ell_heights(const BivarPoly& f, const PuiseuxSeries& phi,
                                      const Tower& tower) {
    NewtonDiagram dg = relative_diagram(f, phi, tower);
    if (dg.h0.is_infinite())
        throw PhiIsRoot("arc is a Newton-Puiseux root of the polynomial; "
                        "no dot on X=0");
    return {dg.h0, dg.h1};
}

namespace {

bool coeff_match(const Coefficient& a, const Coefficient& b) {
    if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
    return true;  // approximate coefficients compare position-only
}

}  // namespace

bool same_polygon(const NewtonDiagram& a, const NewtonDiagram& b) {
    if (a.h0 != b.h0) return false;
    if (a.edges.size() != b.edges.size()) return false;
    for (std::size_t k = 0; k < a.edges.size(); ++k) {
        const NewtonEdge& ea = a.edges[k];
        const NewtonEdge& eb = b.edges[k];
        if (ea.left.i != eb.left.i || ea.right.i != eb.right.i) return false;
        if (ea.left.h != eb.left.h || ea.right.h != eb.right.h) return false;
        if (ea.tan_theta != eb.tan_theta) return false;
        if (ea.edge_poly.size() != eb.edge_poly.size()) return false;
        for (std::size_t t = 0; t < ea.edge_poly.size(); ++t)
            if (!coeff_match(ea.edge_poly[t], eb.edge_poly[t])) return false;
    }
    return true;
}

std::vector<Coefficient> delta_poly(const NewtonDiagram& diagram, const Rat& rho) {
    if (diagram.dots.empty()) throw DomainError("delta set of an empty diagram");
    std::optional<Rat> best;
    for (const auto& d : diagram.dots) {
        Rat v = rho * Rat(d.i) + d.h;
        if (!best || v < *best) best = v;
    }
    long max_i = 0;
    for (const auto& d : diagram.dots)
        if (rho * Rat(d.i) + d.h == *best) max_i = std::max(max_i, d.i);
    std::vector<Coefficient> poly(static_cast<std::size_t>(max_i) + 1,
                                  Coefficient(GaussRat{}));
    for (const auto& d : diagram.dots)
        if (rho * Rat(d.i) + d.h == *best)
            poly[static_cast<std::size_t>(d.i)] =
                poly[static_cast<std::size_t>(d.i)] + d.coeff;
    return poly;
}

}  // namespace polarcalc
