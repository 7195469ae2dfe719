#pragma once

#include <vector>

#include "polarcalc/coefficient.hpp"

namespace polarcalc {

struct EdgeRoot {
    Coefficient value;   // nonzero root of the edge polynomial
    long multiplicity;   // multiplicity as a root
};

/// Distinct nonzero roots of a dense univariate polynomial (edge polynomial
/// or similar), with multiplicities.
///
/// Exact coefficients: multiplicities come from exact squarefree
/// decomposition; each squarefree factor is solved numerically at the tower's
/// precision and every numeric root is promoted back to an exact Gaussian
/// rational when continued-fraction reconstruction produces a value that
/// verifies exactly.  Roots that fail exact verification stay approximate.
///
/// Approximate coefficients: all roots are found numerically and clustered by
/// the tower's tolerance to recover multiplicities.
std::vector<EdgeRoot> distinct_nonzero_roots(const std::vector<Coefficient>& poly,
                                             const Tower& tower);

/// Horner evaluation of a dense polynomial at a point.
Coefficient eval_poly(const std::vector<Coefficient>& poly, const Coefficient& z);

/// Dense derivative.
std::vector<Coefficient> derive_poly(const std::vector<Coefficient>& poly);

/// All complex roots of a dense polynomial with approximate coefficients
/// (Aberth-Ehrlich simultaneous iteration, deterministic start).  Returns
/// degree-many roots including multiplicity repeats.
std::vector<ApproxComplex> aberth_roots(const std::vector<ApproxComplex>& coeffs,
                                        mpfr_prec_t prec);

}  // namespace polarcalc
