#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace polarcalc {

/// Base class for every error this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Violated precondition / invalid input (maps to CLI user-error exit code).
struct DomainError : Error {
    using Error::Error;
};

/// A result exists but could not be certified from the available data
/// (maps to CLI certification-failure exit code).
struct CertificationError : Error {
    using Error::Error;
};

struct TruncationTooShallow : CertificationError {
    using CertificationError::CertificationError;
};
struct IndeterminateContact : CertificationError {
    using CertificationError::CertificationError;
};
struct GenericityFailed : CertificationError {
    using CertificationError::CertificationError;
};
struct RouteMismatch : CertificationError {
    using CertificationError::CertificationError;
};
struct DegenerateSamples : CertificationError {
    using CertificationError::CertificationError;
};
struct PhiIsRoot : DomainError {
    using DomainError::DomainError;
};
struct NotARoot : DomainError {
    using DomainError::DomainError;
};
struct NonExactInput : DomainError {
    using DomainError::DomainError;
};
struct SyntaxError : DomainError {
    using DomainError::DomainError;
};
struct NegativeExponent : DomainError {
    using DomainError::DomainError;
};
struct FractionalExponentInPolynomial : DomainError {
    using DomainError::DomainError;
};

/// Arbitrary-precision rational, always reduced, denominator > 0.
/// Thin wrapper over GMP so the rest of the code never touches mpq_class
/// directly and serialization stays in one place ("p/q", "p" when q == 1).
class Rat {
  public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long n, long d) : v_(n, d) {
        if (d == 0) throw DomainError("rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rat(const mpz_class& n) : v_(n) {}
    Rat(const mpz_class& n, const mpz_class& d) : v_(n, d) {
        if (d == 0) throw DomainError("rational with zero denominator");
        v_.canonicalize();
    }

    static Rat from_string(const std::string& s);

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
    Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
    Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
    Rat operator/(const Rat& o) const {
        if (o.is_zero()) throw DomainError("division by zero rational");
        return Rat(mpq_class(v_ / o.v_));
    }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    std::strong_ordering operator<=>(const Rat& o) const {
        int c = cmp(v_, o.v_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    double to_double() const { return v_.get_d(); }

    /// "p/q", or just "p" for integers.
    std::string str() const;

  private:
    mpq_class v_;
};

Rat abs(const Rat& r);
Rat pow(const Rat& r, long e);

/// Rational extended with +Infinity.  Orders and minimizes are infinity
/// aware; Infinity is absorbing under addition.
class ExtRat {
  public:
    ExtRat() : fin_(true), v_() {}
    ExtRat(const Rat& r) : fin_(true), v_(r) {}
    ExtRat(long n) : fin_(true), v_(n) {}
    static ExtRat infinity() {
        ExtRat e;
        e.fin_ = false;
        return e;
    }

    bool is_finite() const { return fin_; }
    bool is_infinite() const { return !fin_; }
    const Rat& finite() const {
        if (!fin_) throw DomainError("infinite value where finite required");
        return v_;
    }

    ExtRat operator+(const ExtRat& o) const {
        if (!fin_ || !o.fin_) return infinity();
        return ExtRat(v_ + o.v_);
    }
    ExtRat operator-() const {
        if (!fin_) throw DomainError("cannot negate infinity");
        return ExtRat(-v_);
    }

    bool operator==(const ExtRat& o) const {
        if (fin_ != o.fin_) return false;
        return !fin_ || v_ == o.v_;
    }
    std::strong_ordering operator<=>(const ExtRat& o) const {
        if (!fin_ && !o.fin_) return std::strong_ordering::equal;
        if (!fin_) return std::strong_ordering::greater;
        if (!o.fin_) return std::strong_ordering::less;
        return v_ <=> o.v_;
    }

    /// "p/q" or "inf".
    std::string str() const { return fin_ ? v_.str() : "inf"; }

  private:
    bool fin_;
    Rat v_;
};

inline ExtRat min(const ExtRat& a, const ExtRat& b) { return a < b ? a : b; }
inline ExtRat max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

/// lcm of two positive integers (used for Puiseux exponent denominators).
inline mpz_class lcm_z(const mpz_class& a, const mpz_class& b) {
    mpz_class g, r;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    r = a / g * b;
    return r;
}

}  // namespace polarcalc
