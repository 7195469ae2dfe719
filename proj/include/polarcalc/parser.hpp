#pragma once

#include <string>

#include "polarcalc/bivar_poly.hpp"
#include "polarcalc/puiseux.hpp"

namespace polarcalc {

/// Parse a polynomial in x and y: terms joined by +/-, each term a product of
/// rational/complex constants and powers of x and y.  "i" is the imaginary
/// unit; exponents must be non-negative integers.  Whitespace insignificant.
BivarPoly parse_poly(const std::string& text);

/// Parse an arc "x = c1*y^(p/q) + ... [+ O(y^(p/q))]" (also "x = 0").
/// Exponents are non-negative rationals; the O-marker sets the truncation
/// order, otherwise the series is exactly known.
PuiseuxSeries parse_arc(const std::string& text);

/// Canonical text forms.  Monomials are ordered by ascending total degree,
/// then descending x-degree; series terms by ascending exponent; rationals
/// print as "p/q" ("p" for integers); approximate coefficients print as
/// fixed-precision decimals (their round-trip re-parses as an exact rational
/// approximation).
std::string serialize_poly(const BivarPoly& f);
std::string serialize_arc(const PuiseuxSeries& s);
std::string serialize_rat(const Rat& r);
std::string serialize_ext(const ExtRat& r);
std::string serialize_coeff(const Coefficient& c);

}  // namespace polarcalc
