#pragma once

#include <complex>
#include <vector>

#include "polarcalc/coefficient.hpp"
#include "polarcalc/rational.hpp"

namespace polarcalc {

struct PuiseuxTerm {
    Rat exp;
    Coefficient coeff;
};

/// Finite fractional-exponent series c1*y^{e1} + c2*y^{e2} + ... with a
/// truncation marker.  Exponents are strictly increasing, non-negative, and
/// share the common denominator `denom`; stored coefficients are nonzero
/// (structurally — tolerance decisions happen in the consumers).  Terms at or
/// beyond truncation_order are unknown and never stored.
class PuiseuxSeries {
  public:
    PuiseuxSeries() : denom_(1), trunc_(ExtRat::infinity()) {}

    static PuiseuxSeries zero() { return PuiseuxSeries(); }
    static PuiseuxSeries monomial(Coefficient c, const Rat& e);

    const std::vector<PuiseuxTerm>& terms() const { return terms_; }
    long denom() const { return denom_; }
    const ExtRat& truncation() const { return trunc_; }
    bool is_structural_zero() const { return terms_.empty(); }
    bool all_exact() const;

    /// Smallest stored exponent; Infinity for an exactly-known zero series.
    /// A truncated zero series has no certifiable order.
    ExtRat order() const;

    /// Largest stored exponent; requires at least one term.
    const Rat& last_exponent() const;

    /// Ramification index: lcm of stored exponent denominators (= denom).
    long ramification() const { return denom_; }

    PuiseuxSeries operator+(const PuiseuxSeries& o) const;
    PuiseuxSeries operator-(const PuiseuxSeries& o) const;
    PuiseuxSeries operator-() const;
    PuiseuxSeries operator*(const PuiseuxSeries& o) const;
    PuiseuxSeries scaled(const Coefficient& c) const;
    /// Multiply by c*y^e.
    PuiseuxSeries shifted(const Coefficient& c, const Rat& e) const;
    PuiseuxSeries pow(long e) const;

    /// Terms with exponent strictly below `cut`; truncation becomes
    /// min(current, cut).
    PuiseuxSeries truncated_at(const ExtRat& cut) const;
    /// Terms strictly below cut, re-marked as exactly known (used when a
    /// prefix is deliberately completed into an exact finite arc).
    PuiseuxSeries prefix_as_exact(const Rat& cut) const;
    /// Same series with truncation Infinity (asserts the caller treats the
    /// stored terms as a complete finite arc).
    PuiseuxSeries as_exact() const;
    PuiseuxSeries with_truncation(const ExtRat& t) const;

    /// Append a term with exponent strictly above last_exponent (and below
    /// truncation); used by the sliding loop.
    void append_term(const Coefficient& c, const Rat& e);

    /// Coefficient at exact exponent e (structural zero if absent).
    Coefficient coeff_at(const Rat& e) const;

    /// Map y -> -y: term exponent p/q picks up the sign (-1)^{p/q}; only
    /// legal when every exponent has odd denominator or integer value...
    /// for rational exponents p/q with q odd this is exact; q even would
    /// leave the real line, so it is rejected.
    PuiseuxSeries mirrored_y() const;

    /// Evaluate at real t > 0 in double precision (t^{p/q} real positive).
    std::complex<double> eval_double(double t) const;

    /// Largest coefficient magnitude (scale for tolerance tests).
    ApproxComplex coeff_scale(mpfr_prec_t prec) const;

    bool operator==(const PuiseuxSeries& o) const;

  private:
    void recompute_denom();
    long denom_;
    std::vector<PuiseuxTerm> terms_;
    ExtRat trunc_;
};

/// ord(s); Infinity for the zero series.  TruncationTooShallow if the series
/// is structurally zero but only finitely known.
ExtRat series_order(const PuiseuxSeries& s);

/// ord(s1 - s2).  Infinity iff the series are identical and exactly known.
/// Tolerance-aware when Approx coefficients are involved.
ExtRat contact_order(const PuiseuxSeries& s1, const PuiseuxSeries& s2,
                     const Tower& tower = Tower{});

}  // namespace polarcalc
