#include "polarcalc/bivar_poly.hpp"

#include <algorithm>

#include "polarcalc/detail/upoly.hpp"

namespace polarcalc {

namespace {

Coefficient exact_int(long n) { return Coefficient(GaussRat(Rat(n))); }

// Binomial coefficients up to row n, as exact coefficients.
std::vector<std::vector<Rat>> binomials(long n) {
    std::vector<std::vector<Rat>> rows(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) {
        auto& row = rows[static_cast<std::size_t>(i)];
        row.assign(static_cast<std::size_t>(i) + 1, Rat(0));
        row.front() = Rat(1);
        row.back() = Rat(1);
        for (long k = 1; k < i; ++k)
            row[static_cast<std::size_t>(k)] =
                rows[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] +
                rows[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)];
    }
    return rows;
}

}  // namespace

BivarPoly BivarPoly::monomial(Coefficient c, long i, long j) {
    BivarPoly p;
    p.add_term(c, i, j);
    return p;
}

bool BivarPoly::all_exact() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const auto& kv) { return kv.second.is_exact(); });
}

void BivarPoly::add_term(const Coefficient& c, long i, long j) {
    if (i < 0 || j < 0) throw DomainError("negative exponent in polynomial");
    if (c.is_structural_zero()) return;
    auto it = coeffs_.find({i, j});
    if (it == coeffs_.end()) {
        coeffs_.emplace(Key{i, j}, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_structural_zero()) coeffs_.erase(it);
    }
}

Coefficient BivarPoly::coeff(long i, long j) const {
    auto it = coeffs_.find({i, j});
    return it == coeffs_.end() ? Coefficient(GaussRat{}) : it->second;
}

BivarPoly BivarPoly::operator+(const BivarPoly& o) const {
    BivarPoly r = *this;
    for (const auto& [k, c] : o.coeffs_) r.add_term(c, k.first, k.second);
    return r;
}

BivarPoly BivarPoly::operator-() const {
    BivarPoly r;
    for (const auto& [k, c] : coeffs_) r.coeffs_.emplace(k, -c);
    return r;
}

BivarPoly BivarPoly::operator-(const BivarPoly& o) const { return *this + (-o); }

BivarPoly BivarPoly::operator*(const BivarPoly& o) const {
    BivarPoly r;
    for (const auto& [ka, ca] : coeffs_)
        for (const auto& [kb, cb] : o.coeffs_)
            r.add_term(ca * cb, ka.first + kb.first, ka.second + kb.second);
    return r;
}

BivarPoly BivarPoly::scaled(const Coefficient& c) const {
    BivarPoly r;
    for (const auto& [k, a] : coeffs_) r.add_term(a * c, k.first, k.second);
    return r;
}

BivarPoly BivarPoly::pow(long e) const {
    if (e < 0) throw DomainError("negative polynomial power");
    BivarPoly r = constant(exact_int(1));
    BivarPoly base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

bool BivarPoly::operator==(const BivarPoly& o) const {
    return (*this - o).is_zero();
}

BivarPoly BivarPoly::derivative_x() const {
    BivarPoly r;
    for (const auto& [k, c] : coeffs_)
        if (k.first > 0) r.add_term(c * exact_int(k.first), k.first - 1, k.second);
    return r;
}

BivarPoly BivarPoly::derivative_y() const {
    BivarPoly r;
    for (const auto& [k, c] : coeffs_)
        if (k.second > 0) r.add_term(c * exact_int(k.second), k.first, k.second - 1);
    return r;
}

BivarPoly BivarPoly::sheared(const Coefficient& c) const {
    // y^j -> (y + c x)^j expanded binomially.
    auto rows = binomials(y_degree() < 0 ? 0 : y_degree());
    BivarPoly r;
    for (const auto& [k, a] : coeffs_) {
        const auto& row = rows[static_cast<std::size_t>(k.second)];
        Coefficient cpow = exact_int(1);
        for (long t = 0; t <= k.second; ++t) {
            // term: C(j,t) * c^t * x^{i+t} y^{j-t}
            Coefficient term = a * Coefficient(GaussRat(row[static_cast<std::size_t>(t)])) * cpow;
            r.add_term(term, k.first + t, k.second - t);
            cpow = cpow * c;
        }
    }
    return r;
}

BivarPoly BivarPoly::mirrored_y() const {
    BivarPoly r;
    for (const auto& [k, c] : coeffs_)
        r.add_term(k.second % 2 ? -c : c, k.first, k.second);
    return r;
}

long BivarPoly::order() const {
    long best = -1;
    for (const auto& [k, c] : coeffs_) {
        long t = k.first + k.second;
        if (best < 0 || t < best) best = t;
    }
    return best;
}

long BivarPoly::degree() const {
    long best = -1;
    for (const auto& [k, c] : coeffs_) best = std::max(best, k.first + k.second);
    return best;
}

long BivarPoly::x_degree() const {
    long best = -1;
    for (const auto& [k, c] : coeffs_) best = std::max(best, k.first);
    return best;
}

long BivarPoly::y_degree() const {
    long best = -1;
    for (const auto& [k, c] : coeffs_) best = std::max(best, k.second);
    return best;
}

bool BivarPoly::is_mini_regular() const {
    if (is_zero()) return false;
    return coeffs_.count({order(), 0}) > 0;
}

PuiseuxSeries BivarPoly::x_column(long i) const {
    PuiseuxSeries s;
    for (const auto& [k, c] : coeffs_)
        if (k.first == i) s = s + PuiseuxSeries::monomial(c, Rat(k.second));
    return s;
}

PuiseuxSeries BivarPoly::subst_series(const PuiseuxSeries& phi) const {
    long d = x_degree();
    if (d < 0) return PuiseuxSeries::zero();
    PuiseuxSeries acc = x_column(d);
    for (long i = d - 1; i >= 0; --i) acc = acc * phi + x_column(i);
    return acc;
}

std::vector<PuiseuxSeries> BivarPoly::columns_relative(const PuiseuxSeries& phi) const {
    long d = x_degree();
    std::vector<PuiseuxSeries> cols(static_cast<std::size_t>(std::max(d, 0L)) + 1);
    if (d < 0) return cols;
    // Powers of phi up to d.
    std::vector<PuiseuxSeries> phip(static_cast<std::size_t>(d) + 1);
    phip[0] = PuiseuxSeries::monomial(exact_int(1), Rat(0));
    for (long p = 1; p <= d; ++p)
        phip[static_cast<std::size_t>(p)] = phip[static_cast<std::size_t>(p - 1)] * phi;
    auto rows = binomials(d);
    for (long k = 0; k <= d; ++k) {
        PuiseuxSeries col;
        for (long i = k; i <= d; ++i) {
            PuiseuxSeries a = x_column(i);
            if (a.is_structural_zero() && a.truncation().is_infinite()) continue;
            const Rat& binom = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            col = col + (a * phip[static_cast<std::size_t>(i - k)])
                            .scaled(Coefficient(GaussRat(binom)));
        }
        cols[static_cast<std::size_t>(k)] = col;
    }
    return cols;
}

std::complex<double> BivarPoly::eval_double(std::complex<double> x,
                                            std::complex<double> y) const {
    // integer powers by repeated multiplication: std::pow on complex values
    // yields NaN for 0^0, which monomials constant in one variable would hit
    auto ipow = [](std::complex<double> b, long e) {
        std::complex<double> r{1.0, 0.0};
        for (long k = 0; k < e; ++k) r *= b;
        return r;
    };
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [k, c] : coeffs_) {
        std::complex<double> cv =
            c.is_exact() ? std::complex<double>(c.exact().re.to_double(),
                                                c.exact().im.to_double())
                         : std::complex<double>(c.approx().to_double_re(),
                                                c.approx().to_double_im());
        acc += cv * ipow(x, k.first) * ipow(y, k.second);
    }
    return acc;
}

namespace {

using YPoly = detail::UPoly<GaussRat>;
using YFrac = detail::Frac<YPoly>;
using XPoly = detail::UPoly<YFrac>;

XPoly to_xpoly(const BivarPoly& f) {
    long d = f.x_degree();
    std::vector<YFrac> cols(static_cast<std::size_t>(std::max(d, 0L)) + 1,
                            YFrac::zero());
    for (const auto& [k, c] : f.coeffs()) {
        if (!c.is_exact())
            throw NonExactInput("squarefree decomposition needs exact coefficients");
        std::vector<GaussRat> mono(static_cast<std::size_t>(k.second) + 1, GaussRat{});
        mono.back() = c.exact();
        cols[static_cast<std::size_t>(k.first)] =
            cols[static_cast<std::size_t>(k.first)] + YFrac::of(YPoly(std::move(mono)));
    }
    return XPoly(std::move(cols));
}

BivarPoly from_columns(const std::vector<YPoly>& cols) {
    BivarPoly out;
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (std::size_t j = 0; j < cols[i].coeffs().size(); ++j)
            out.add_term(Coefficient(cols[i].coeffs()[j]), static_cast<long>(i),
                         static_cast<long>(j));
    return out;
}

// Clear denominators, divide by the y-content, and normalize the unit so the
// leading x-column's leading y-coefficient is 1.
BivarPoly to_primitive(const XPoly& p) {
    YPoly common_den = YPoly::one();
    for (const auto& fr : p.coeffs()) {
        if (fr.is_zero()) continue;
        YPoly g = detail::gcd(common_den, fr.den());
        common_den = common_den * (fr.den() / g);
    }
    std::vector<YPoly> cols;
    cols.reserve(p.coeffs().size());
    for (const auto& fr : p.coeffs()) {
        if (fr.is_zero()) {
            cols.push_back(YPoly::zero());
        } else {
            cols.push_back(fr.num() * (common_den / fr.den()));
        }
    }
    YPoly content = YPoly::zero();
    for (const auto& c : cols) content = detail::gcd(content, c);
    if (content.degree() > 0)
        for (auto& c : cols) c = c / content;
    // Unit normalization.
    GaussRat unit{};
    for (auto it = cols.rbegin(); it != cols.rend(); ++it)
        if (!it->is_zero()) {
            unit = it->lead();
            break;
        }
    if (!unit.is_zero()) {
        GaussRat inv = detail::FieldOps<GaussRat>::one() / unit;
        for (auto& c : cols) c = c.scaled(inv);
    }
    return from_columns(cols);
}

}  // namespace

std::vector<std::pair<BivarPoly, long>> squarefree_decompose_x(const BivarPoly& f) {
    if (f.is_zero()) throw DomainError("squarefree decomposition of the zero polynomial");
    XPoly fx = to_xpoly(f);
    auto raw = detail::squarefree_yun(fx);
    std::vector<std::pair<BivarPoly, long>> out;
    out.reserve(raw.size());
    for (auto& [factor, mult] : raw) out.emplace_back(to_primitive(factor), mult);
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.second > b.second;
    });
    return out;
}

}  // namespace polarcalc
