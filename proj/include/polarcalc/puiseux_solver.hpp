#pragma once

// Root expansion machinery for bivariate polynomials: Newton–Puiseux
// expansion of all solution branches x = xi(y) at the origin, sliding of
// approximate arcs toward roots, certified substitution orders for
// truncated arcs, polar-curve branches, pairwise branch approximations,
// and the real-coefficient variant of the polar branch set.

#include "polarcalc/bivar_poly.hpp"
#include "polarcalc/newton_polygon.hpp"
#include "polarcalc/puiseux.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace polarcalc {

// Where a branch came from.
enum class BranchSource {
    RootOfF,       // solution branch of the input polynomial
    Polar,         // branch of the x-derivative, certified not a root of f
    RealPolar,     // real-coefficient polar branch (possibly realified)
    Approximation, // synthetic arc separating two branches
};

struct Branch {
    PuiseuxSeries series;
    long multiplicity = 1;
    BranchSource source = BranchSource::RootOfF;
};

// A constant chosen at random subject to explicit nonvanishing conditions.
// `conditions_checked` records, in order, each condition the final value
// was verified against; `seed` is the sampler seed that produced it.
struct GenericConstant {
    Coefficient value = Coefficient(GaussRat());
    std::vector<std::string> conditions_checked;
    long seed = 0;
    bool has_value = false;
};

// Result of making a polynomial mini-regular: the (possibly sheared)
// polynomial has an x^m monomial with m = its order at the origin.
struct Regularity {
    Rat shear;   // c in the substitution y -> y + c*x (0 when unsheared)
    long m = 0;  // order at the origin after the shear
};

struct BranchSet {
    std::vector<Branch> branches;
    // contact[i][j] = order of the difference series of branches i and j;
    // diagonal entries are infinite. Symmetric.
    std::vector<std::vector<ExtRat>> contact;
    Regularity regularity;
    long seed = 0;
};

// Deterministic, platform-independent sampler of small rational constants.
// Uses a fixed 64-bit generator with explicit modular reduction so the
// sequence is identical across standard library implementations.
class Sampler {
  public:
    explicit Sampler(unsigned long long seed) : gen_(seed ^ 0x9e3779b97f4a7c15ull) {}

    // Uniform integer in [0, n).
    unsigned long long below(unsigned long long n);
    // Nonzero rational p/q with p in [-12, 12]\{0}, q in [1, 12].
    Rat nonzero_rat();
    // Nonzero integer in [-9, 9].
    Rat nonzero_int();

  private:
    std::mt19937_64 gen_;
};

// Shear f so that it becomes mini-regular (order-m part contains x^m).
// Returns the sheared polynomial, the shear constant as a generic constant
// (value 0 with no conditions when f was already mini-regular), and m.
// Requires f nonzero with f(0,0) = 0.
std::tuple<BivarPoly, GenericConstant, long>
mini_regularize(const BivarPoly& f, long seed, const Tower& tower = Tower{});

// One sliding step: append to phi the term c * y^theta, where theta is the
// steepest (highest) compact edge angle of the Newton polygon of f relative
// to phi and c = root_choice must be a root of that edge's polynomial.
// Throws PhiIsRoot when f(phi, y) = 0, NotARoot when root_choice is not a
// root of the highest edge polynomial.
PuiseuxSeries slide(const BivarPoly& f, const PuiseuxSeries& phi,
                    const Coefficient& root_choice, const Tower& tower = Tower{});

// Expand all solution branches of f at the origin. f must be exact,
// nonzero, f(0,0) = 0, and mini-regular. Branches whose continuation is
// forever unique and simple are emitted truncated once their last exponent
// reaches `depth`; branches that terminate as exact polynomial roots are
// emitted with infinite truncation. Multiplicities follow the squarefree
// decomposition; they sum to the order of f.
BranchSet expand_roots(const BivarPoly& f, const Rat& depth, const Tower& tower = Tower{});

// Certify the order of f along the full branch designated by phi.
// For an exact phi the order is read off the relative Newton polygon
// directly (PhiIsRoot if f(phi, y) = 0). For a truncated phi the
// truncation must dominate the highest edge angle of the polygon relative
// to the stored prefix — the stability criterion under which every further
// sliding step leaves the polygon's height unchanged; otherwise
// TruncationTooShallow is thrown. Returns the (unchanged) arc and the
// certified order.
std::pair<PuiseuxSeries, Rat>
slide_to_stability(const BivarPoly& f, const PuiseuxSeries& phi, const Tower& tower = Tower{});

// Branches of the x-derivative of f that are not roots of f, with
// truncations extended far enough that slide_to_stability(f, .) succeeds.
// Branches of f_x that are also branches of f are discarded (detected
// exactly for polynomial branches; via an intersection-degree bound
// certificate for infinite ones). Requires f exact, mini-regular, of
// order >= 2.
BranchSet polar_branches(const BivarPoly& f, const Rat& depth, const Tower& tower = Tower{});

// The approximation arc of two distinct branches: their common prefix
// below the contact order rho, plus g * y^rho, truncated just above rho.
// The genericity of g is the caller's responsibility (see
// make_generic_for_pair); g must carry a value.
PuiseuxSeries approximation(const Branch& xi_i, const Branch& xi_j,
                            const GenericConstant& g, const Tower& tower = Tower{});

// Sample a constant g for approximation(xi_i, xi_j, g) that is generic for
// the heights of the polygon of f relative to the approximation arc: both
// the contact-order weighted-minimum polynomial E of f relative to the
// common prefix and its derivative are nonzero at g.
GenericConstant make_generic_for_pair(const BivarPoly& f, const Branch& xi_i,
                                      const Branch& xi_j, long seed,
                                      const Tower& tower = Tower{});

// Real-coefficient polar branch set of a real polynomial f: branches of
// f_x with all-real coefficients are kept whole (a real prefix whose
// continuation is unique stays real forever); a branch whose first
// non-real coefficient appears at exponent s is replaced by the exact real
// arc (real prefix below s) + g * y^s with g real and generic. Conjugate
// branches collapse to a single entry whose multiplicity is the sum.
BranchSet real_polar_branches(const BivarPoly& f, const Rat& depth, long seed,
                              const Tower& tower = Tower{});

// --- lower-level pieces shared with the intersection-number computation ---

// Expansion of one squarefree factor's branches, keeping the factor
// association (needed when a branch must later be extended along the
// curve it lies on).
struct FactorBranches {
    BivarPoly factor;
    long multiplicity = 1;
    std::vector<PuiseuxSeries> roots;
};

std::vector<FactorBranches>
expand_by_factor(const BivarPoly& f, const Rat& depth, const Tower& tower = Tower{});

// Certified order of `target` along the full branch that `prefix` (a
// truncated root of `guide`) designates. Extends the prefix along guide
// until the polygon of target relative to it freezes; returns the extended
// arc and the order, or nullopt when the branch is a root of target
// (detected exactly, or via the degree bound cap on the height).
std::optional<std::pair<PuiseuxSeries, Rat>>
certify_order_along(const BivarPoly& target, const BivarPoly& guide,
                    const PuiseuxSeries& prefix, const Tower& tower = Tower{});

} // namespace polarcalc
