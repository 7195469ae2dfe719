#include "polarcalc/puiseux.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace polarcalc {

namespace {

// First exponent at which a series can carry an unknown or stored term.
ExtRat low_floor(const PuiseuxSeries& s) {
    if (!s.terms().empty()) return ExtRat(s.terms().front().exp);
    return s.truncation();
}

}  // namespace

PuiseuxSeries PuiseuxSeries::monomial(Coefficient c, const Rat& e) {
    PuiseuxSeries s;
    if (c.is_structural_zero()) return s;
    if (e.sign() < 0) throw DomainError("series exponents must be non-negative");
    s.terms_.push_back({e, std::move(c)});
    s.recompute_denom();
    return s;
}

bool PuiseuxSeries::all_exact() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const PuiseuxTerm& t) { return t.coeff.is_exact(); });
}

ExtRat PuiseuxSeries::order() const {
    if (terms_.empty()) return ExtRat::infinity();
    return ExtRat(terms_.front().exp);
}

const Rat& PuiseuxSeries::last_exponent() const {
    if (terms_.empty()) throw DomainError("last_exponent of empty series");
    return terms_.back().exp;
}

void PuiseuxSeries::recompute_denom() {
    mpz_class l = 1;
    for (const auto& t : terms_) {
        mpz_class d = t.exp.den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    if (!l.fits_slong_p()) throw Error("series ramification overflow");
    denom_ = l.get_si();
}

PuiseuxSeries PuiseuxSeries::operator+(const PuiseuxSeries& o) const {
    PuiseuxSeries r;
    r.trunc_ = min(trunc_, o.trunc_);
    std::size_t a = 0, b = 0;
    auto push = [&r](const Rat& e, Coefficient c) {
        if (ExtRat(e) >= r.trunc_) return;
        if (c.is_structural_zero()) return;
        r.terms_.push_back({e, std::move(c)});
    };
    while (a < terms_.size() || b < o.terms_.size()) {
        if (b >= o.terms_.size() ||
            (a < terms_.size() && terms_[a].exp < o.terms_[b].exp)) {
            push(terms_[a].exp, terms_[a].coeff);
            ++a;
        } else if (a >= terms_.size() || o.terms_[b].exp < terms_[a].exp) {
            push(o.terms_[b].exp, o.terms_[b].coeff);
            ++b;
        } else {
            push(terms_[a].exp, terms_[a].coeff + o.terms_[b].coeff);
            ++a;
            ++b;
        }
    }
    r.recompute_denom();
    return r;
}

PuiseuxSeries PuiseuxSeries::operator-() const {
    PuiseuxSeries r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

PuiseuxSeries PuiseuxSeries::operator-(const PuiseuxSeries& o) const {
    return *this + (-o);
}

PuiseuxSeries PuiseuxSeries::operator*(const PuiseuxSeries& o) const {
    PuiseuxSeries r;
    r.trunc_ = min(min(low_floor(*this) + o.trunc_, low_floor(o) + trunc_),
                   trunc_ + o.trunc_);
    if (terms_.empty() || o.terms_.empty()) {
        if (trunc_.is_infinite() && terms_.empty()) r.trunc_ = ExtRat::infinity();
        if (o.trunc_.is_infinite() && o.terms_.empty()) r.trunc_ = ExtRat::infinity();
        return r;
    }
    std::map<Rat, Coefficient> acc;
    for (const auto& ta : terms_)
        for (const auto& tb : o.terms_) {
            Rat e = ta.exp + tb.exp;
            if (ExtRat(e) >= r.trunc_) continue;
            Coefficient prod = ta.coeff * tb.coeff;
            auto it = acc.find(e);
            if (it == acc.end())
                acc.emplace(std::move(e), std::move(prod));
            else
                it->second = it->second + prod;
        }
    for (auto& [e, c] : acc)
        if (!c.is_structural_zero()) r.terms_.push_back({e, std::move(c)});
    r.recompute_denom();
    return r;
}

PuiseuxSeries PuiseuxSeries::scaled(const Coefficient& c) const {
    if (c.is_structural_zero()) return PuiseuxSeries();
    PuiseuxSeries r = *this;
    for (auto& t : r.terms_) t.coeff = t.coeff * c;
    std::erase_if(r.terms_,
                  [](const PuiseuxTerm& t) { return t.coeff.is_structural_zero(); });
    r.recompute_denom();
    return r;
}

PuiseuxSeries PuiseuxSeries::shifted(const Coefficient& c, const Rat& e) const {
    return *this * monomial(c, e);
}

PuiseuxSeries PuiseuxSeries::pow(long e) const {
    if (e < 0) throw DomainError("negative series power");
    PuiseuxSeries r = monomial(Coefficient(GaussRat(Rat(1))), Rat(0));
    PuiseuxSeries base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

PuiseuxSeries PuiseuxSeries::truncated_at(const ExtRat& cut) const {
    PuiseuxSeries r;
    r.trunc_ = min(trunc_, cut);
    for (const auto& t : terms_)
        if (ExtRat(t.exp) < r.trunc_) r.terms_.push_back(t);
    r.recompute_denom();
    return r;
}

PuiseuxSeries PuiseuxSeries::prefix_as_exact(const Rat& cut) const {
    PuiseuxSeries r;
    for (const auto& t : terms_)
        if (t.exp < cut) r.terms_.push_back(t);
    r.trunc_ = ExtRat::infinity();
    r.recompute_denom();
    return r;
}

PuiseuxSeries PuiseuxSeries::as_exact() const {
    PuiseuxSeries r = *this;
    r.trunc_ = ExtRat::infinity();
    return r;
}

PuiseuxSeries PuiseuxSeries::with_truncation(const ExtRat& t) const {
    PuiseuxSeries r = *this;
    if (!r.terms_.empty() && ExtRat(r.terms_.back().exp) >= t)
        throw DomainError("truncation must exceed every stored exponent");
    r.trunc_ = t;
    return r;
}

void PuiseuxSeries::append_term(const Coefficient& c, const Rat& e) {
    if (c.is_structural_zero()) return;
    if (!terms_.empty() && !(terms_.back().exp < e))
        throw DomainError("appended exponent must increase");
    if (!(ExtRat(e) < trunc_)) throw DomainError("appended exponent beyond truncation");
    terms_.push_back({e, c});
    recompute_denom();
}

Coefficient PuiseuxSeries::coeff_at(const Rat& e) const {
    for (const auto& t : terms_)
        if (t.exp == e) return t.coeff;
    return Coefficient(GaussRat{});
}

PuiseuxSeries PuiseuxSeries::mirrored_y() const {
    PuiseuxSeries r = *this;
    for (auto& t : r.terms_) {
        mpz_class den = t.exp.den();
        if (mpz_even_p(den.get_mpz_t()))
            throw DomainError("mirror y -> -y needs odd exponent denominators");
        mpz_class num = t.exp.num();
        if (mpz_odd_p(num.get_mpz_t())) t.coeff = -t.coeff;
    }
    return r;
}

std::complex<double> PuiseuxSeries::eval_double(double t) const {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& term : terms_) {
        std::complex<double> c =
            term.coeff.is_exact()
                ? std::complex<double>(term.coeff.exact().re.to_double(),
                                       term.coeff.exact().im.to_double())
                : std::complex<double>(term.coeff.approx().to_double_re(),
                                       term.coeff.approx().to_double_im());
        acc += c * std::pow(t, term.exp.to_double());
    }
    return acc;
}

ApproxComplex PuiseuxSeries::coeff_scale(mpfr_prec_t prec) const {
    ApproxComplex best = ApproxComplex::from_double(0.0, 0.0, prec);
    for (const auto& t : terms_)
        best = ApproxComplex::max_real(best, t.coeff.mag(prec));
    return best;
}

bool PuiseuxSeries::operator==(const PuiseuxSeries& o) const {
    if (trunc_ != o.trunc_ || terms_.size() != o.terms_.size()) return false;
    for (std::size_t k = 0; k < terms_.size(); ++k)
        if (terms_[k].exp != o.terms_[k].exp || !(terms_[k].coeff == o.terms_[k].coeff))
            return false;
    return true;
}

ExtRat series_order(const PuiseuxSeries& s) {
    if (!s.terms().empty()) return ExtRat(s.terms().front().exp);
    if (s.truncation().is_infinite()) return ExtRat::infinity();
    throw TruncationTooShallow(
        "series is zero to truncation order " + s.truncation().str() +
        "; its order cannot be certified");
}

ExtRat contact_order(const PuiseuxSeries& s1, const PuiseuxSeries& s2,
                     const Tower& tower) {
    PuiseuxSeries diff = s1 - s2;
    mpfr_prec_t prec = tower.prec;
    ApproxComplex scale = ApproxComplex::max_real(s1.coeff_scale(prec),
                                                  s2.coeff_scale(prec));
    for (const auto& t : diff.terms()) {
        if (t.coeff.is_exact()) {
            if (!t.coeff.exact().is_zero()) return ExtRat(t.exp);
        } else if (!tower.is_zero(t.coeff, scale)) {
            return ExtRat(t.exp);
        }
    }
    if (diff.truncation().is_infinite()) return ExtRat::infinity();
    throw IndeterminateContact(
        "series agree up to truncation order " + diff.truncation().str() +
        "; contact order cannot be certified");
}

}  // namespace polarcalc
