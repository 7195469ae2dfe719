#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "polarcalc/bivar_poly.hpp"
#include "polarcalc/puiseux.hpp"

namespace polarcalc {

/// One point of the Newton diagram of f(X + phi(y), y): the coefficient of
/// X^i y^h is nonzero (under the active tower's zero test).
struct NewtonDot {
    long i;
    Rat h;
    Coefficient coeff;
    bool certified = true;
};

/// Compact edge of the Newton polygon, slope -tan_theta in the (i, h) plane.
/// edge_poly[k] is the z^k coefficient of the associated polynomial
/// E(z) = sum of c_ih z^i over the dots lying on the edge.
struct NewtonEdge {
    NewtonDot left;   // smaller i
    NewtonDot right;  // larger i
    Rat tan_theta;
    std::vector<Coefficient> edge_poly;
};

struct NewtonDiagram {
    std::vector<NewtonDot> dots;     // all dots, sorted by (i, h)
    std::vector<NewtonEdge> edges;   // ascending tan_theta
    ExtRat h0;                       // lowest dot on X=0 (Infinity if none)
    ExtRat h1;                       // lowest dot on X=1 (Infinity if none)
    std::optional<NewtonEdge> highest_edge;  // edge with vertex (0, h0)
    bool tolerance_used = false;     // an approximate zero test was consulted
};

/// Non-throwing construction: h0/h1 certification is reported instead of
/// enforced, for pipelines that handle shallow truncations themselves.
struct DiagramResult {
    NewtonDiagram diagram;
    bool h0_certified = true;
    bool h1_certified = true;
};

DiagramResult build_relative_diagram(const BivarPoly& f, const PuiseuxSeries& phi,
                                     const Tower& tower = Tower{});

/// Newton diagram of f relative to the arc phi.  Throws TruncationTooShallow
/// when the lowest dot on X=0 or X=1 cannot be certified against phi's
/// truncation order.
NewtonDiagram relative_diagram(const BivarPoly& f, const PuiseuxSeries& phi,
                               const Tower& tower = Tower{});

/// Lower-hull chain of compact edges recomputed from the diagram's dots;
/// equals diagram.edges.
std::vector<NewtonEdge> polygon_edges(const NewtonDiagram& diagram);

/// Heights (h0, h1) of the lowest dots on X=0 and X=1.  Throws PhiIsRoot when
/// there is no dot on X=0 (phi is a Newton-Puiseux root of f).
std::pair<ExtRat, ExtRat> ell_heights(const BivarPoly& f, const PuiseuxSeries& phi,
                                      const Tower& tower = Tower{});

/// Structural equality of the polygon boundary: same h0, same vertex chain
/// and angles, and matching edge polynomials (exact coefficients compared
/// exactly; approximate ones position-only).
bool same_polygon(const NewtonDiagram& a, const NewtonDiagram& b);

/// Coefficients of E(z) = sum c_ih z^i over the dots minimizing rho*i + h;
/// used for the genericity conditions of approximating arcs.
std::vector<Coefficient> delta_poly(const NewtonDiagram& diagram, const Rat& rho);

}  // namespace polarcalc
