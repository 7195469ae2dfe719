#include "polarcalc/coefficient.hpp"

#include <algorithm>
#include <cstring>

namespace polarcalc {

GaussRat pow(const GaussRat& g, long e) {
    if (e < 0) return GaussRat(1) / pow(g, -e);
    GaussRat r(1), b = g;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

// --- ApproxComplex -------------------------------------------------------

ApproxComplex::ApproxComplex(mpfr_prec_t prec) {
    mpfr_init2(re_, prec);
    mpfr_init2(im_, prec);
    mpfr_set_ui(re_, 0, MPFR_RNDN);
    mpfr_set_ui(im_, 0, MPFR_RNDN);
}

ApproxComplex::ApproxComplex(const ApproxComplex& o) {
    mpfr_init2(re_, mpfr_get_prec(o.re_));
    mpfr_init2(im_, mpfr_get_prec(o.im_));
    mpfr_set(re_, o.re_, MPFR_RNDN);
    mpfr_set(im_, o.im_, MPFR_RNDN);
}

ApproxComplex::ApproxComplex(ApproxComplex&& o) noexcept {
    mpfr_init2(re_, mpfr_get_prec(o.re_));
    mpfr_init2(im_, mpfr_get_prec(o.im_));
    mpfr_swap(re_, o.re_);
    mpfr_swap(im_, o.im_);
}

ApproxComplex& ApproxComplex::operator=(const ApproxComplex& o) {
    if (this != &o) {
        mpfr_set_prec(re_, mpfr_get_prec(o.re_));
        mpfr_set_prec(im_, mpfr_get_prec(o.im_));
        mpfr_set(re_, o.re_, MPFR_RNDN);
        mpfr_set(im_, o.im_, MPFR_RNDN);
    }
    return *this;
}

ApproxComplex& ApproxComplex::operator=(ApproxComplex&& o) noexcept {
    if (this != &o) {
        mpfr_swap(re_, o.re_);
        mpfr_swap(im_, o.im_);
    }
    return *this;
}

ApproxComplex::~ApproxComplex() {
    mpfr_clear(re_);
    mpfr_clear(im_);
}

ApproxComplex ApproxComplex::from_gauss(const GaussRat& g, mpfr_prec_t prec) {
    ApproxComplex r(prec);
    mpfr_set_q(r.re_, g.re.raw().get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(r.im_, g.im.raw().get_mpq_t(), MPFR_RNDN);
    return r;
}

ApproxComplex ApproxComplex::from_double(double re, double im, mpfr_prec_t prec) {
    ApproxComplex r(prec);
    mpfr_set_d(r.re_, re, MPFR_RNDN);
    mpfr_set_d(r.im_, im, MPFR_RNDN);
    return r;
}

ApproxComplex ApproxComplex::pow2(long e, mpfr_prec_t prec) {
    ApproxComplex r(prec);
    mpfr_set_ui_2exp(r.re_, 1, e, MPFR_RNDN);
    return r;
}

ApproxComplex ApproxComplex::pow10(long e, mpfr_prec_t prec) {
    ApproxComplex r(prec);
    mpfr_set_ui(r.re_, 10, MPFR_RNDN);
    mpfr_pow_si(r.re_, r.re_, e, MPFR_RNDN);
    return r;
}

ApproxComplex ApproxComplex::unit_circle(unsigned k, unsigned n, mpfr_prec_t prec) {
    ApproxComplex r(prec);
    mpfr_t theta, two_pi;
    mpfr_init2(theta, prec);
    mpfr_init2(two_pi, prec);
    mpfr_const_pi(two_pi, MPFR_RNDN);
    mpfr_mul_ui(two_pi, two_pi, 2, MPFR_RNDN);
    mpfr_mul_ui(theta, two_pi, k, MPFR_RNDN);
    mpfr_div_ui(theta, theta, n, MPFR_RNDN);
    mpfr_add_d(theta, theta, 0.4, MPFR_RNDN);  // avoid real-axis symmetry traps
    mpfr_sin_cos(r.im_, r.re_, theta, MPFR_RNDN);
    mpfr_clear(theta);
    mpfr_clear(two_pi);
    return r;
}

static mpfr_prec_t join_prec(const ApproxComplex& a, const ApproxComplex& b) {
    return std::max(a.prec(), b.prec());
}

ApproxComplex ApproxComplex::operator+(const ApproxComplex& o) const {
    ApproxComplex r(join_prec(*this, o));
    mpfr_add(r.re_, re_, o.re_, MPFR_RNDN);
    mpfr_add(r.im_, im_, o.im_, MPFR_RNDN);
    return r;
}

ApproxComplex ApproxComplex::operator-(const ApproxComplex& o) const {
    ApproxComplex r(join_prec(*this, o));
    mpfr_sub(r.re_, re_, o.re_, MPFR_RNDN);
    mpfr_sub(r.im_, im_, o.im_, MPFR_RNDN);
    return r;
}

ApproxComplex ApproxComplex::operator*(const ApproxComplex& o) const {
    ApproxComplex r(join_prec(*this, o));
    mpfr_t t1, t2;
    mpfr_init2(t1, r.prec());
    mpfr_init2(t2, r.prec());
    mpfr_mul(t1, re_, o.re_, MPFR_RNDN);
    mpfr_mul(t2, im_, o.im_, MPFR_RNDN);
    mpfr_sub(r.re_, t1, t2, MPFR_RNDN);
    mpfr_mul(t1, re_, o.im_, MPFR_RNDN);
    mpfr_mul(t2, im_, o.re_, MPFR_RNDN);
    mpfr_add(r.im_, t1, t2, MPFR_RNDN);
    mpfr_clear(t1);
    mpfr_clear(t2);
    return r;
}

ApproxComplex ApproxComplex::operator/(const ApproxComplex& o) const {
    mpfr_prec_t p = join_prec(*this, o);
    ApproxComplex r(p);
    mpfr_t n, t1, t2;
    mpfr_init2(n, p);
    mpfr_init2(t1, p);
    mpfr_init2(t2, p);
    // n = |o|^2
    mpfr_mul(t1, o.re_, o.re_, MPFR_RNDN);
    mpfr_mul(t2, o.im_, o.im_, MPFR_RNDN);
    mpfr_add(n, t1, t2, MPFR_RNDN);
    if (mpfr_zero_p(n)) {
        mpfr_clear(n); mpfr_clear(t1); mpfr_clear(t2);
        throw DomainError("division by zero coefficient");
    }
    mpfr_mul(t1, re_, o.re_, MPFR_RNDN);
    mpfr_mul(t2, im_, o.im_, MPFR_RNDN);
    mpfr_add(r.re_, t1, t2, MPFR_RNDN);
    mpfr_div(r.re_, r.re_, n, MPFR_RNDN);
    mpfr_mul(t1, im_, o.re_, MPFR_RNDN);
    mpfr_mul(t2, re_, o.im_, MPFR_RNDN);
    mpfr_sub(r.im_, t1, t2, MPFR_RNDN);
    mpfr_div(r.im_, r.im_, n, MPFR_RNDN);
    mpfr_clear(n);
    mpfr_clear(t1);
    mpfr_clear(t2);
    return r;
}

ApproxComplex ApproxComplex::operator-() const {
    ApproxComplex r(*this);
    mpfr_neg(r.re_, r.re_, MPFR_RNDN);
    mpfr_neg(r.im_, r.im_, MPFR_RNDN);
    return r;
}

ApproxComplex ApproxComplex::conj() const {
    ApproxComplex r(*this);
    mpfr_neg(r.im_, r.im_, MPFR_RNDN);
    return r;
}

ApproxComplex ApproxComplex::mag() const {
    ApproxComplex r(prec());
    mpfr_hypot(r.re_, re_, im_, MPFR_RNDN);
    return r;
}

int ApproxComplex::cmp_real(const ApproxComplex& a, const ApproxComplex& b) {
    return mpfr_cmp(a.re_, b.re_);
}

ApproxComplex ApproxComplex::max_real(const ApproxComplex& a, const ApproxComplex& b) {
    return cmp_real(a, b) >= 0 ? a : b;
}

bool ApproxComplex::exactly_zero() const {
    return mpfr_zero_p(re_) && mpfr_zero_p(im_);
}

static Rat reconstruct(const mpfr_t v, unsigned den_bits) {
    if (mpfr_zero_p(v)) return Rat(0);
    // Exact dyadic value of v, then continued-fraction convergents until the
    // error drops under 2^{-den_bits} (or denominator cap exceeded).
    mpq_class target;
    mpfr_get_q(target.get_mpq_t(), v);
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;  // convergents
    mpq_class x = target;
    mpz_class den_cap = 1;
    den_cap <<= den_bits;
    mpq_class eps(mpz_class(1), den_cap);
    for (int it = 0; it < 256; ++it) {
        mpz_class a, xn = x.get_num(), xd = x.get_den();
        mpz_fdiv_q(a.get_mpz_t(), xn.get_mpz_t(), xd.get_mpz_t());
        mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > den_cap) break;
        mpq_class conv(p2, q2);
        conv.canonicalize();
        mpq_class err = conv - target;
        if (abs(err) <= eps) return Rat(conv);
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        mpq_class frac = x - a;
        if (frac == 0) break;
        x = 1 / frac;
    }
    return Rat(target);  // caller verifies exactly; a bad guess just fails it
}

Rat ApproxComplex::reconstruct_re(unsigned den_bits) const { return reconstruct(re_, den_bits); }
Rat ApproxComplex::reconstruct_im(unsigned den_bits) const { return reconstruct(im_, den_bits); }

static std::string render(const mpfr_t v, int digits) {
    if (mpfr_zero_p(v)) return "0";
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    bool neg = !mant.empty() && mant[0] == '-';
    std::string dig = neg ? mant.substr(1) : mant;
    // strip trailing zeros of the mantissa (keep at least one digit)
    size_t last = dig.find_last_not_of('0');
    dig = dig.substr(0, std::max<size_t>(last + 1, 1));
    std::string out = (neg ? "-" : "") + ("0." + dig) + "e" + std::to_string(e);
    return out;
}

std::string ApproxComplex::str_re(int digits) const { return render(re_, digits); }
std::string ApproxComplex::str_im(int digits) const { return render(im_, digits); }

// --- Coefficient ---------------------------------------------------------

ApproxComplex Coefficient::to_approx(mpfr_prec_t prec) const {
    if (is_exact()) return ApproxComplex::from_gauss(std::get<GaussRat>(v_), prec);
    return std::get<ApproxComplex>(v_);
}

#define PC_COEFF_BINOP(op)                                                    \
    Coefficient Coefficient::operator op(const Coefficient& o) const {        \
        if (is_exact() && o.is_exact())                                       \
            return Coefficient(std::get<GaussRat>(v_) op std::get<GaussRat>(o.v_)); \
        mpfr_prec_t p = 2;                                                    \
        if (!is_exact()) p = std::max(p, approx().prec());                    \
        if (!o.is_exact()) p = std::max(p, o.approx().prec());                \
        return Coefficient(to_approx(p) op o.to_approx(p));                   \
    }

PC_COEFF_BINOP(+)
PC_COEFF_BINOP(-)
PC_COEFF_BINOP(*)
PC_COEFF_BINOP(/)
#undef PC_COEFF_BINOP

Coefficient Coefficient::operator-() const {
    if (is_exact()) return Coefficient(-std::get<GaussRat>(v_));
    return Coefficient(-std::get<ApproxComplex>(v_));
}

Coefficient Coefficient::conj() const {
    if (is_exact()) return Coefficient(std::get<GaussRat>(v_).conj());
    return Coefficient(std::get<ApproxComplex>(v_).conj());
}

bool Coefficient::is_structural_zero() const {
    if (is_exact()) return std::get<GaussRat>(v_).is_zero();
    return std::get<ApproxComplex>(v_).exactly_zero();
}

ApproxComplex Coefficient::mag(mpfr_prec_t prec) const {
    return to_approx(prec).mag();
}

bool Coefficient::operator==(const Coefficient& o) const {
    if (is_exact() != o.is_exact()) return false;
    if (is_exact()) return std::get<GaussRat>(v_) == std::get<GaussRat>(o.v_);
    const ApproxComplex &a = approx(), &b = o.approx();
    return ApproxComplex::cmp_real((a - b).mag(), ApproxComplex(a.prec())) == 0;
}

Coefficient pow(const Coefficient& c, long e) {
    if (e < 0) return Coefficient(1) / pow(c, -e);
    Coefficient r(1), b = c;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

// --- Tower ----------------------------------------------------------------

ApproxComplex Tower::tau() const {
    if (tol_pow10 > 0) return ApproxComplex::pow10(-tol_pow10, prec);
    return ApproxComplex::pow2(-static_cast<long>(prec / 2), prec);
}

bool Tower::is_zero(const Coefficient& c, const ApproxComplex& scale) const {
    if (c.is_exact()) return c.exact().is_zero();
    ApproxComplex bound = tau() * scale;
    return ApproxComplex::cmp_real(c.approx().mag(), bound.mag()) <= 0;
}

bool Tower::is_zero(const Coefficient& c) const {
    if (c.is_exact()) return c.exact().is_zero();
    ApproxComplex one = ApproxComplex::from_double(1, 0, prec);
    return is_zero(c, one);
}

}  // namespace polarcalc
