#pragma once

#include <mpfr.h>

#include <string>
#include <variant>

#include "polarcalc/rational.hpp"

namespace polarcalc {

/// Gaussian rational a + b*i with exact components.
struct GaussRat {
    Rat re, im;

    GaussRat() = default;
    GaussRat(Rat r) : re(std::move(r)) {}
    GaussRat(long n) : re(n) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }

    GaussRat conj() const { return {re, -im}; }
    Rat norm() const { return re * re + im * im; }  // |z|^2, exact

    GaussRat operator-() const { return {-re, -im}; }
    GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
    GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
    GaussRat operator*(const GaussRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussRat operator/(const GaussRat& o) const {
        Rat n = o.norm();
        if (n.is_zero()) throw DomainError("division by zero coefficient");
        GaussRat t = *this * o.conj();
        return {t.re / n, t.im / n};
    }
    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
};

GaussRat pow(const GaussRat& g, long e);

/// Complex floating-point number at a fixed binary precision, built from a
/// pair of mpfr_t since libmpc is not available on this box.  Only the
/// operations the solver needs: ring ops, division, magnitude, comparisons.
class ApproxComplex {
  public:
    explicit ApproxComplex(mpfr_prec_t prec = 256);
    ApproxComplex(const ApproxComplex& o);
    ApproxComplex(ApproxComplex&& o) noexcept;
    ApproxComplex& operator=(const ApproxComplex& o);
    ApproxComplex& operator=(ApproxComplex&& o) noexcept;
    ~ApproxComplex();

    static ApproxComplex from_gauss(const GaussRat& g, mpfr_prec_t prec);
    static ApproxComplex from_double(double re, double im, mpfr_prec_t prec);
    /// 2^e as a real value (tolerance construction).
    static ApproxComplex pow2(long e, mpfr_prec_t prec);
    /// 10^e as a real value (decimal tolerance overrides).
    static ApproxComplex pow10(long e, mpfr_prec_t prec);
    /// e^{i*(2*pi*k/n + 0.4)} — deterministic initial points for root finding.
    static ApproxComplex unit_circle(unsigned k, unsigned n, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return mpfr_get_prec(re_); }

    ApproxComplex operator+(const ApproxComplex& o) const;
    ApproxComplex operator-(const ApproxComplex& o) const;
    ApproxComplex operator*(const ApproxComplex& o) const;
    ApproxComplex operator/(const ApproxComplex& o) const;
    ApproxComplex operator-() const;
    ApproxComplex conj() const;

    /// |z| as a real-valued ApproxComplex (imaginary part 0).
    ApproxComplex mag() const;
    /// Compare real parts; only meaningful for real-valued magnitudes.
    static int cmp_real(const ApproxComplex& a, const ApproxComplex& b);
    static ApproxComplex max_real(const ApproxComplex& a, const ApproxComplex& b);

    bool exactly_zero() const;
    bool exactly_zero_im() const { return mpfr_zero_p(im_) != 0; }
    double to_double_re() const { return mpfr_get_d(re_, MPFR_RNDN); }
    double to_double_im() const { return mpfr_get_d(im_, MPFR_RNDN); }

    /// Nearest rational to the real part with continued fractions, denominator
    /// capped at 2^den_bits; used to recognize exact roots from numeric ones.
    Rat reconstruct_re(unsigned den_bits) const;
    Rat reconstruct_im(unsigned den_bits) const;

    /// Deterministic decimal rendering with the given significant digits.
    std::string str_re(int digits = 20) const;
    std::string str_im(int digits = 20) const;

  private:
    friend class Coefficient;
    mpfr_t re_, im_;
};

/// Coefficient tower: exact Gaussian rational, or approximate complex.
/// Exact op Exact stays exact; anything touching Approx becomes Approx.
class Coefficient {
  public:
    Coefficient() : v_(GaussRat()) {}
    Coefficient(GaussRat g) : v_(std::move(g)) {}
    Coefficient(Rat r) : v_(GaussRat(std::move(r))) {}
    Coefficient(long n) : v_(GaussRat(n)) {}
    Coefficient(ApproxComplex a) : v_(std::move(a)) {}

    bool is_exact() const { return std::holds_alternative<GaussRat>(v_); }
    const GaussRat& exact() const {
        if (!is_exact()) throw NonExactInput("exact coefficient required");
        return std::get<GaussRat>(v_);
    }
    const ApproxComplex& approx() const { return std::get<ApproxComplex>(v_); }
    ApproxComplex to_approx(mpfr_prec_t prec) const;

    Coefficient operator+(const Coefficient& o) const;
    Coefficient operator-(const Coefficient& o) const;
    Coefficient operator*(const Coefficient& o) const;
    Coefficient operator/(const Coefficient& o) const;
    Coefficient operator-() const;
    Coefficient conj() const;

    /// Exact structural zero only (no tolerance); Approx: bit-exact zero.
    bool is_structural_zero() const;

    /// Magnitude as a real-valued ApproxComplex at given precision.
    ApproxComplex mag(mpfr_prec_t prec) const;

    bool operator==(const Coefficient& o) const;

  private:
    std::variant<GaussRat, ApproxComplex> v_;
};

Coefficient pow(const Coefficient& c, long e);

/// Numeric context: working precision for the Approx tower and the zero-test
/// tolerance tau (|z| <= tau * scale counts as zero).  tau defaults to
/// 2^{-prec/2}; the CLI can override it with a decimal 10^{-k}.
struct Tower {
    mpfr_prec_t prec = 256;
    long tol_pow10 = 0;  // 0 = default 2^{-prec/2}; else tau = 10^{-tol_pow10}

    ApproxComplex tau() const;
    /// Zero test with explicit magnitude scale (real-valued).
    bool is_zero(const Coefficient& c, const ApproxComplex& scale) const;
    /// Zero test with scale 1.
    bool is_zero(const Coefficient& c) const;
};

}  // namespace polarcalc
