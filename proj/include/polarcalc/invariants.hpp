#pragma once

// Singularity invariants computed from branch expansions: Łojasiewicz-type
// exponents of arcs, polar quotient sets (by two independent routes),
// gradient exponents over the complex and real fields, intersection
// multiplicities, degree bounds, and a floating-point sanity estimate.

#include "polarcalc/bivar_poly.hpp"
#include "polarcalc/puiseux_solver.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polarcalc {

// Exponent contribution of a single arc phi with ord(phi) >= 1:
//   ell(phi) = min((h0 - 1)/h0, h1/h0)
// where h0, h1 are the heights of the Newton polygon of f relative to phi
// (h1 infinite when the derivative vanishes along phi identically).
// Throws PhiIsRoot when f vanishes along phi, DomainError when phi is
// tangent to the x-axis (order below 1) or f(0,0) != 0.
Rat ell_of_arc(const BivarPoly& f, const PuiseuxSeries& phi, const Tower& tower = Tower{});

enum class QuotientRoute { PolarBranches, Approximations, Both };

struct QuotientWitness {
    std::optional<Branch> branch;               // polar branch realizing the value
    std::optional<std::pair<long, long>> pair;  // pair of root-branch indices realizing it
};

struct QuotientSet {
    std::vector<Rat> values;  // ascending, deduplicated
    std::map<Rat, QuotientWitness> witnesses;
    QuotientRoute route = QuotientRoute::Both;
};

// The polar quotients of f: orders of f along the branches of f_x that are
// not branches of f.  Route PolarBranches certifies each order by polygon
// stability along the polar branch; route Approximations recovers the same
// set from pairwise contact orders of the root branches, checking each
// value independently by substituting a generic approximating arc; route
// Both runs both and requires set equality (RouteMismatch otherwise).
// Non-mini-regular input is sheared automatically.
QuotientSet polar_quotients(const BivarPoly& f, QuotientRoute route, long seed,
                            const Tower& tower = Tower{});

enum class ScalarField { Real, Complex };

struct InvariantReport {
    ScalarField field = ScalarField::Complex;
    long m = 0;  // order at the origin
    long d = 0;  // total degree
    Rat shear;   // mini-regularization constant applied (0 if none)
    long seed = 0;
    QuotientSet quotients;       // complex polar quotient set
    Rat L;                       // gradient exponent
    std::optional<Rat> L_plus;   // real case: exponent on the side y > 0
    std::optional<Rat> L_minus;  // real case: exponent on the side y < 0
    Branch witness;              // arc realizing L
    Rat bound_gradient;          // a priori bound 1 - 1/((d-1)^2 + 1)
    Rat bound_classical;         // a priori bound (d-1)^2 + 1
    Rat bound_classical_via_L;   // 1/(1 - L)
    std::vector<std::string> certificates;  // conditions and cross-checks that held
};

// Gradient Łojasiewicz exponent over the complex numbers:
//   L = max over polar branches gamma of (1 - 1/ord f(gamma)),
// or (m-1)/m when there are no polar branches, cross-checked against the
// maximal polar quotient.  Requires exact coefficients, f(0,0) = 0, f != 0.
InvariantReport gradient_exponent_complex(const BivarPoly& f, long seed,
                                          const Tower& tower = Tower{});

// Real gradient exponent: the maximum of the exponents computed from the
// real polar branch sets of f(x, y) and of f(x, -y), each being
//   max((m-1)/m, max over real polar arcs of ell(arc)).
// Requires exact real coefficients.
InvariantReport gradient_exponent_real(const BivarPoly& f, long seed,
                                       const Tower& tower = Tower{});

// Local intersection number of f and g at the origin: the sum over all
// solution branches xi of f of the order of g along xi, weighted by
// multiplicity.  Infinite exactly when f and g share a branch through the
// origin.  Shears both inputs by the same constant when f needs it.
ExtRat intersection_multiplicity(const BivarPoly& f, const BivarPoly& g,
                                 const Tower& tower = Tower{});

struct DegreeBounds {
    Rat L;  // computed complex gradient exponent (seed 0)
    Rat bound_gradient;
    Rat bound_classical;
    Rat bound_classical_via_L;
    bool within_bounds = true;
};

// Degree-based a priori bounds and whether the computed exponent respects
// them: L <= 1 - 1/((d-1)^2 + 1) and 1/(1-L) <= (d-1)^2 + 1.
DegreeBounds degree_bounds(const BivarPoly& f, const Tower& tower = Tower{});

// Floating-point slope of log|grad f| against log|f| along the arc
// t -> (phi(t), t), sampled at `samples` log-spaced points in
// [t_min, t_max].  A sanity check for the exact exponents; throws
// DegenerateSamples when fewer than two sample points are usable.
double numeric_exponent_estimate(const BivarPoly& f, const PuiseuxSeries& phi,
                                 double t_min, double t_max, long samples);

}  // namespace polarcalc
