#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "polarcalc/coefficient.hpp"
#include "polarcalc/puiseux.hpp"
#include "polarcalc/rational.hpp"

namespace polarcalc {

/// Bivariate polynomial sum c_{ij} x^i y^j with complex coefficients.
/// Coefficients are exact Gaussian rationals for every user-supplied input;
/// the approximate tower only enters through internal substitutions.
class BivarPoly {
  public:
    using Key = std::pair<long, long>;  // (x-degree, y-degree)

    BivarPoly() = default;

    static BivarPoly zero() { return {}; }
    static BivarPoly monomial(Coefficient c, long i, long j);
    static BivarPoly constant(Coefficient c) { return monomial(std::move(c), 0, 0); }

    const std::map<Key, Coefficient>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool all_exact() const;

    void add_term(const Coefficient& c, long i, long j);
    Coefficient coeff(long i, long j) const;

    BivarPoly operator+(const BivarPoly& o) const;
    BivarPoly operator-(const BivarPoly& o) const;
    BivarPoly operator-() const;
    BivarPoly operator*(const BivarPoly& o) const;
    BivarPoly scaled(const Coefficient& c) const;
    BivarPoly pow(long e) const;
    bool operator==(const BivarPoly& o) const;

    BivarPoly derivative_x() const;
    BivarPoly derivative_y() const;

    /// f(x, y + c*x)
    BivarPoly sheared(const Coefficient& c) const;
    /// f(x, -y)
    BivarPoly mirrored_y() const;

    /// Order of vanishing at the origin (min total degree); zero poly -> -1.
    long order() const;
    /// Total degree; zero poly -> -1.
    long degree() const;
    long x_degree() const;
    long y_degree() const;

    /// True when the monomial x^order() is present: every root branch at the
    /// origin then has order >= 1 and the highest-x column is a constant.
    bool is_mini_regular() const;

    /// Coefficient of x^i as a polynomial in y, rendered as an exact series.
    PuiseuxSeries x_column(long i) const;

    /// f(phi(y), y) as a Puiseux series (Horner in x; truncation propagates).
    PuiseuxSeries subst_series(const PuiseuxSeries& phi) const;

    /// Columns of f(X + phi(y), y): entry k is the coefficient series of X^k.
    std::vector<PuiseuxSeries> columns_relative(const PuiseuxSeries& phi) const;

    std::complex<double> eval_double(std::complex<double> x,
                                     std::complex<double> y) const;

  private:
    std::map<Key, Coefficient> coeffs_;
};

/// Exact squarefree decomposition with respect to x over the field Q(i)(y):
/// returns primitive, deterministically normalized factors with their
/// multiplicities (sorted multiplicity-descending).  The product of the
/// factor powers equals the input up to a factor depending on y alone.
/// Throws NonExactInput when any coefficient is approximate.
std::vector<std::pair<BivarPoly, long>> squarefree_decompose_x(const BivarPoly& f);

}  // namespace polarcalc
