#pragma once

// Dense univariate polynomials over an exact field, with Euclidean division,
// monic gcd, and a field-of-fractions wrapper.  Header-only and generic: the
// same template serves polynomials in y over Gaussian rationals and
// polynomials in x over the rational-function field Q(i)(y).

#include <utility>
#include <vector>

#include "polarcalc/coefficient.hpp"
#include "polarcalc/rational.hpp"

namespace polarcalc::detail {

template <class K>
struct FieldOps {
    static K zero() { return K::zero(); }
    static K one() { return K::one(); }
    static bool is_zero(const K& a) { return a.is_zero(); }
};

template <>
struct FieldOps<GaussRat> {
    static GaussRat zero() { return GaussRat{}; }
    static GaussRat one() { return GaussRat{Rat(1), Rat(0)}; }
    static bool is_zero(const GaussRat& a) { return a.is_zero(); }
};

template <class K>
class UPoly {
  public:
    UPoly() = default;
    explicit UPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UPoly zero() { return UPoly(); }
    static UPoly one() { return constant(FieldOps<K>::one()); }
    static UPoly constant(const K& k) {
        UPoly p;
        p.c_.push_back(k);
        p.trim();
        return p;
    }
    static UPoly monomial(const K& k, std::size_t deg) {
        UPoly p;
        p.c_.assign(deg + 1, FieldOps<K>::zero());
        p.c_[deg] = k;
        p.trim();
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<K>& coeffs() const { return c_; }
    const K& lead() const { return c_.back(); }
    K coeff(std::size_t i) const {
        return i < c_.size() ? c_[i] : FieldOps<K>::zero();
    }

    UPoly operator+(const UPoly& o) const {
        std::vector<K> r(std::max(c_.size(), o.c_.size()), FieldOps<K>::zero());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = r[i] + c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
        return UPoly(std::move(r));
    }
    UPoly operator-() const {
        UPoly r = *this;
        for (auto& k : r.c_) k = FieldOps<K>::zero() - k;
        return r;
    }
    UPoly operator-(const UPoly& o) const { return *this + (-o); }
    UPoly operator*(const UPoly& o) const {
        if (is_zero() || o.is_zero()) return UPoly();
        std::vector<K> r(c_.size() + o.c_.size() - 1, FieldOps<K>::zero());
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = r[i + j] + c_[i] * o.c_[j];
        return UPoly(std::move(r));
    }
    UPoly scaled(const K& k) const {
        UPoly r = *this;
        for (auto& a : r.c_) a = a * k;
        r.trim();
        return r;
    }

    /// Quotient and remainder under Euclidean division by a nonzero divisor.
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
        if (d.is_zero()) throw DomainError("polynomial division by zero");
        UPoly q, r = *this;
        q.c_.assign(c_.size(), FieldOps<K>::zero());
        while (!r.is_zero() && r.degree() >= d.degree()) {
            K factor = r.lead() / d.lead();
            std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
            q.c_[shift] = q.c_[shift] + factor;
            UPoly sub = d.scaled(factor);
            std::vector<K> shifted(shift, FieldOps<K>::zero());
            shifted.insert(shifted.end(), sub.c_.begin(), sub.c_.end());
            r = r - UPoly(std::move(shifted));
        }
        q.trim();
        return {q, r};
    }
    UPoly operator/(const UPoly& d) const {
        auto [q, r] = divmod(d);
        if (!r.is_zero()) throw DomainError("inexact polynomial division");
        return q;
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return UPoly();
        std::vector<K> r(c_.size() - 1, FieldOps<K>::zero());
        for (std::size_t i = 1; i < c_.size(); ++i) {
            K n = FieldOps<K>::zero();
            for (std::size_t k = 0; k < i; ++k) n = n + FieldOps<K>::one();
            r[i - 1] = c_[i] * n;
        }
        return UPoly(std::move(r));
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        UPoly r = *this;
        K inv = FieldOps<K>::one() / lead();
        for (auto& a : r.c_) a = a * inv;
        return r;
    }

    K eval(const K& x) const {
        K acc = FieldOps<K>::zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    bool operator==(const UPoly& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!FieldOps<K>::is_zero(c_[i] - o.c_[i])) return false;
        return true;
    }

  private:
    void trim() {
        while (!c_.empty() && FieldOps<K>::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<K> c_;
};

/// Monic greatest common divisor via the Euclidean algorithm.
template <class K>
UPoly<K> gcd(UPoly<K> a, UPoly<K> b) {
    // A nonzero constant divides everything.
    if (!a.is_zero() && a.degree() == 0) return UPoly<K>::one();
    if (!b.is_zero() && b.degree() == 0) return UPoly<K>::one();
    while (!b.is_zero()) {
        auto [q, r] = a.divmod(b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Reduced fraction num/den of polynomials over a field; den is monic.
template <class P>
class Frac {
  public:
    Frac() : num_(P::zero()), den_(P::one()) {}
    Frac(P num, P den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }
    static Frac zero() { return Frac(); }
    static Frac one() { return Frac(P::one(), P::one()); }
    static Frac of(P p) { return Frac(std::move(p), P::one()); }

    const P& num() const { return num_; }
    const P& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    Frac operator+(const Frac& o) const {
        return Frac(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Frac operator-(const Frac& o) const {
        return Frac(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Frac operator*(const Frac& o) const {
        return Frac(num_ * o.num_, den_ * o.den_);
    }
    Frac operator/(const Frac& o) const {
        if (o.is_zero()) throw DomainError("division by zero fraction");
        return Frac(num_ * o.den_, den_ * o.num_);
    }

  private:
    void reduce() {
        if (den_.is_zero()) throw DomainError("zero denominator");
        if (num_.is_zero()) {
            den_ = P::one();
            return;
        }
        if (den_.degree() > 0) {
            P g = gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = num_ / g;
                den_ = den_ / g;
            }
        }
        // Make the denominator monic, folding the unit into the numerator.
        auto lead = den_.lead();
        den_ = den_.monic();
        num_ = num_.scaled(FieldOps<decltype(lead)>::one() / lead);
    }
    P num_, den_;
};

/// Greatest common divisor over a rational-function field K(t), computed
/// denominator-free.  The generic Euclidean loop above is also correct here,
/// but its remainder coefficients are fractions whose numerators and
/// denominators swell catastrophically.  The standard remedy: clear
/// denominators, run a primitive polynomial remainder sequence over K[t]
/// (pseudo-division plus content removal), and make the result monic once at
/// the end.
template <class K>
UPoly<Frac<UPoly<K>>> gcd(UPoly<Frac<UPoly<K>>> a, UPoly<Frac<UPoly<K>>> b) {
    using P = UPoly<K>;
    using F = Frac<P>;
    using X = UPoly<F>;

    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.degree() == 0 || b.degree() == 0) return X::one();

    // Multiply through by the lcm of the coefficient denominators.
    auto cleared = [](const X& p) {
        P l = P::one();
        for (const F& c : p.coeffs()) {
            if (c.is_zero()) continue;
            l = l * (c.den() / gcd(l, c.den()));
        }
        std::vector<P> out;
        out.reserve(p.coeffs().size());
        for (const F& c : p.coeffs())
            out.push_back(c.is_zero() ? P::zero() : c.num() * (l / c.den()));
        return out;
    };
    auto trimmed = [](std::vector<P>& v) {
        while (!v.empty() && v.back().is_zero()) v.pop_back();
    };
    // Divide out the content (the monic gcd of the K[t] coefficients); the
    // content is a unit of K(t) and cannot affect the gcd over the field.
    auto made_primitive = [&](std::vector<P>& v) {
        trimmed(v);
        P g = P::zero();
        for (const P& c : v) {
            if (c.is_zero()) continue;
            g = gcd(g, c);
            if (!g.is_zero() && g.degree() == 0) break;
        }
        if (!g.is_zero() && g.degree() > 0)
            for (P& c : v)
                if (!c.is_zero()) c = c / g;
    };
    // Pseudo-remainder: repeatedly scale by the divisor's leading coefficient
    // so every elimination step stays inside K[t].
    auto prem = [&](std::vector<P> r, const std::vector<P>& d) {
        const P& ld = d.back();
        const std::size_t nd = d.size();
        trimmed(r);
        while (r.size() >= nd) {
            const std::size_t n = r.size();
            const std::size_t shift = n - nd;
            P lr = std::move(r.back());
            std::vector<P> next(n - 1, P::zero());
            for (std::size_t i = 0; i + 1 < n; ++i) {
                P t = r[i] * ld;
                if (i >= shift) t = t - lr * d[i - shift];
                next[i] = std::move(t);
            }
            r = std::move(next);
            trimmed(r);
        }
        return r;
    };

    std::vector<P> big = cleared(a), small = cleared(b);
    made_primitive(big);
    made_primitive(small);
    if (big.size() < small.size()) std::swap(big, small);
    while (!small.empty()) {
        std::vector<P> r = prem(big, small);
        made_primitive(r);
        big = std::move(small);
        small = std::move(r);
    }

    std::vector<F> out;
    out.reserve(big.size());
    for (P& c : big) out.push_back(F(std::move(c), P::one()));
    return X(std::move(out)).monic();
}

/// Yun's squarefree decomposition over a characteristic-zero field:
/// f = unit * prod_k out[k].first ^ out[k].second with the factors monic,
/// squarefree, and pairwise coprime.
template <class K>
std::vector<std::pair<UPoly<K>, long>> squarefree_yun(const UPoly<K>& f) {
    std::vector<std::pair<UPoly<K>, long>> out;
    if (f.degree() <= 0) return out;
    UPoly<K> fp = f.derivative();
    UPoly<K> a0 = gcd(f, fp);
    UPoly<K> b = f / a0;
    UPoly<K> c = fp / a0;
    UPoly<K> d = c - b.derivative();
    long i = 1;
    while (b.degree() > 0) {
        UPoly<K> ai = gcd(b, d);
        if (ai.degree() > 0) out.emplace_back(ai, i);
        b = b / ai;
        c = d / ai;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

}  // namespace polarcalc::detail
