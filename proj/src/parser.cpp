#include "polarcalc/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <vector>

namespace polarcalc {

namespace {

enum class Tok { Number, X, Y, Imag, BigO, Plus, Minus, Star, Caret, Slash, LParen, RParen, Equals, End };

struct Token {
    Tok kind;
    Rat value;  // for Number
    std::size_t offset;
    std::string text;
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::Number: return "number";
        case Tok::X: return "'x'";
        case Tok::Y: return "'y'";
        case Tok::Imag: return "'i'";
        case Tok::BigO: return "'O'";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Caret: return "'^'";
        case Tok::Slash: return "'/'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Equals: return "'='";
        case Tok::End: return "end of input";
    }
    return "?";
}

Rat decimal_to_rat(const std::string& digits, const std::string& frac,
                   long exp10) {
    mpz_class mant(digits.empty() ? "0" : digits);
    for (char c : frac) {
        mant *= 10;
        mant += c - '0';
    }
    long shift = exp10 - static_cast<long>(frac.size());
    mpz_class num = mant, den = 1;
    if (shift >= 0)
        for (long k = 0; k < shift; ++k) num *= 10;
    else
        for (long k = 0; k < -shift; ++k) den *= 10;
    return Rat(num, den);
}

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t p = 0;
    auto fail = [&](const std::string& what) {
        throw SyntaxError("byte " + std::to_string(p) + ": " + what);
    };
    while (p < text.size()) {
        char c = text[p];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++p;
            continue;
        }
        std::size_t start = p;
        auto push = [&](Tok k) {
            out.push_back({k, Rat(0), start, text.substr(start, p - start)});
        };
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits, frac;
            while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p])))
                digits += text[p++];
            if (p < text.size() && text[p] == '.') {
                ++p;
                while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p])))
                    frac += text[p++];
                if (frac.empty()) fail("digits expected after decimal point");
            }
            long exp10 = 0;
            if (p < text.size() && (text[p] == 'e' || text[p] == 'E')) {
                std::size_t save = p;
                ++p;
                bool neg = false;
                if (p < text.size() && (text[p] == '+' || text[p] == '-')) {
                    neg = text[p] == '-';
                    ++p;
                }
                if (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) {
                    long e = 0;
                    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p])))
                        e = e * 10 + (text[p++] - '0');
                    exp10 = neg ? -e : e;
                } else {
                    p = save;  // bare 'e' is not ours; will fail as identifier
                }
            }
            out.push_back({Tok::Number, decimal_to_rat(digits, frac, exp10), start,
                           text.substr(start, p - start)});
            continue;
        }
        switch (c) {
            case 'x': ++p; push(Tok::X); continue;
            case 'y': ++p; push(Tok::Y); continue;
            case 'i': ++p; push(Tok::Imag); continue;
            case 'O': ++p; push(Tok::BigO); continue;
            case '+': ++p; push(Tok::Plus); continue;
            case '-': ++p; push(Tok::Minus); continue;
            case '*': ++p; push(Tok::Star); continue;
            case '^': ++p; push(Tok::Caret); continue;
            case '/': ++p; push(Tok::Slash); continue;
            case '(': ++p; push(Tok::LParen); continue;
            case ')': ++p; push(Tok::RParen); continue;
            case '=': ++p; push(Tok::Equals); continue;
            default:
                fail(std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Tok::End, Rat(0), text.size(), ""});
    return out;
}

class Parser {
  public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    BivarPoly poly() {
        BivarPoly f = expr(/*in_arc=*/false);
        expect(Tok::End);
        return f;
    }

    PuiseuxSeries arc() {
        expect(Tok::X);
        expect(Tok::Equals);
        return series();
    }

  private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    [[noreturn]] void fail(const std::string& expected) const {
        throw SyntaxError("byte " + std::to_string(peek().offset) + ": expected " +
                          expected + "; found " + tok_name(peek().kind));
    }
    void expect(Tok k) {
        if (!accept(k)) fail(tok_name(k));
    }

    static bool starts_atom(Tok k) {
        return k == Tok::Number || k == Tok::X || k == Tok::Y || k == Tok::Imag ||
               k == Tok::LParen;
    }

    // [sign] term (('+'|'-') [sign] term)*
    BivarPoly expr(bool in_arc) {
        BivarPoly acc;
        bool neg = term_sign();
        while (true) {
            BivarPoly t = term(in_arc);
            acc = neg ? acc - t : acc + t;
            if (accept(Tok::Plus))
                neg = term_sign();
            else if (accept(Tok::Minus))
                neg = !term_sign();
            else
                break;
        }
        return acc;
    }

    // Consume any '+'/'-' signs prefixed to a term; true when the net sign
    // is negative.  The sign binds to the whole term, so -x^2 = -(x^2).
    bool term_sign() {
        bool neg = false;
        while (true) {
            if (accept(Tok::Minus))
                neg = !neg;
            else if (!accept(Tok::Plus))
                return neg;
        }
    }

    // product of atoms, '*' optional between them
    BivarPoly term(bool in_arc) {
        if (!starts_atom(peek().kind)) fail("number, 'x', 'y', 'i', or '('");
        BivarPoly acc = atom(in_arc);
        while (true) {
            if (accept(Tok::Star)) {
                if (!starts_atom(peek().kind)) fail("number, 'x', 'y', 'i', or '('");
                acc = acc * atom(in_arc);
            } else if (starts_atom(peek().kind)) {
                acc = acc * atom(in_arc);
            } else {
                break;
            }
        }
        return acc;
    }

    BivarPoly atom(bool in_arc) {
        const Token& t = advance();
        switch (t.kind) {
            case Tok::Number: {
                Rat v = t.value;
                if (accept(Tok::Slash)) {
                    if (peek().kind != Tok::Number) fail("number after '/'");
                    Rat den = advance().value;
                    if (den.is_zero())
                        throw SyntaxError("byte " + std::to_string(t.offset) +
                                          ": zero denominator");
                    v = v / den;
                }
                return BivarPoly::constant(Coefficient(GaussRat(v)));
            }
            case Tok::Imag:
                return BivarPoly::constant(Coefficient(GaussRat::i()));
            case Tok::X: {
                if (in_arc)
                    throw SyntaxError("byte " + std::to_string(t.offset) +
                                      ": 'x' cannot appear in an arc series");
                Rat e = maybe_exponent(/*fractional_ok=*/false);
                return BivarPoly::monomial(Coefficient(GaussRat(Rat(1))),
                                           e.num().get_si(), 0);
            }
            case Tok::Y: {
                Rat e = maybe_exponent(/*fractional_ok=*/in_arc);
                if (in_arc) {
                    // Handled by caller via y_power extraction; here only the
                    // integer case can appear (constant sub-expressions).
                    if (!e.is_integer())
                        throw SyntaxError("byte " + std::to_string(t.offset) +
                                          ": fractional power inside parentheses");
                }
                return BivarPoly::monomial(Coefficient(GaussRat(Rat(1))), 0,
                                           e.num().get_si());
            }
            case Tok::LParen: {
                BivarPoly inner = expr(in_arc);
                expect(Tok::RParen);
                Rat e = maybe_exponent(/*fractional_ok=*/false);
                if (e != Rat(1)) inner = inner.pow(e.num().get_si());
                return inner;
            }
            default:
                break;
        }
        throw SyntaxError("byte " + std::to_string(t.offset) +
                          ": expected number, 'x', 'y', 'i', or '('; found " +
                          tok_name(t.kind));
    }

    // Optional ^e where e = number or (['-'] number ['/' number]).
    Rat maybe_exponent(bool fractional_ok) {
        if (!accept(Tok::Caret)) return Rat(1);
        std::size_t off = peek().offset;
        Rat e;
        if (peek().kind == Tok::Number) {
            e = advance().value;
        } else if (accept(Tok::LParen)) {
            bool neg = accept(Tok::Minus);
            if (peek().kind != Tok::Number) fail("number in exponent");
            e = advance().value;
            if (accept(Tok::Slash)) {
                if (peek().kind != Tok::Number) fail("number after '/'");
                Rat den = advance().value;
                if (den.is_zero())
                    throw SyntaxError("byte " + std::to_string(off) +
                                      ": zero denominator in exponent");
                e = e / den;
            }
            if (neg) e = -e;
            expect(Tok::RParen);
        } else {
            fail("number or '(' after '^'");
        }
        if (e.sign() < 0)
            throw NegativeExponent("byte " + std::to_string(off) +
                                   ": negative exponent");
        if (!fractional_ok && !e.is_integer())
            throw FractionalExponentInPolynomial(
                "byte " + std::to_string(off) +
                ": fractional exponent in polynomial");
        return e;
    }

    // Arc series: signed terms, each constant * y^(p/q), optional trailing O().
    PuiseuxSeries series() {
        std::map<Rat, Coefficient> acc;
        std::optional<Rat> trunc;
        bool neg = term_sign();
        while (true) {
            if (peek().kind == Tok::BigO) {
                if (neg)
                    throw SyntaxError("byte " + std::to_string(peek().offset) +
                                      ": O-term cannot be subtracted");
                advance();
                expect(Tok::LParen);
                expect(Tok::Y);
                Rat e(1);
                if (peek().kind == Tok::Caret) e = maybe_exponent(true);
                expect(Tok::RParen);
                trunc = e;
                break;  // O-term must be last
            }
            auto [coeff, exp] = series_term();
            if (neg) coeff = -coeff;
            auto it = acc.find(exp);
            if (it == acc.end())
                acc.emplace(exp, coeff);
            else
                it->second = it->second + coeff;
            if (accept(Tok::Plus))
                neg = term_sign();
            else if (accept(Tok::Minus))
                neg = !term_sign();
            else
                break;
        }
        expect(Tok::End);
        PuiseuxSeries s;
        for (const auto& [e, c] : acc) {
            if (c.is_structural_zero()) continue;
            if (trunc && !(e < *trunc))
                throw SyntaxError("term y^" + e.str() +
                                  " lies at or beyond the O(y^" + trunc->str() +
                                  ") marker");
            s.append_term(c, e);
        }
        if (trunc) s = s.truncated_at(ExtRat(*trunc));
        return s;
    }

    // One arc term: product of constants and at most one y-power.
    std::pair<Coefficient, Rat> series_term() {
        Coefficient coeff(GaussRat(Rat(1)));
        Rat exp(0);
        bool saw_y = false, saw_any = false;
        while (true) {
            Tok k = peek().kind;
            if (k == Tok::Y) {
                const Token& t = advance();
                Rat e = maybe_exponent(true);
                if (saw_y)
                    throw SyntaxError("byte " + std::to_string(t.offset) +
                                      ": repeated y factor in arc term");
                saw_y = true;
                exp = e;
            } else if (k == Tok::Number || k == Tok::Imag || k == Tok::LParen) {
                BivarPoly c = atom(/*in_arc=*/true);
                if (c.x_degree() > 0 || c.y_degree() > 0)
                    throw SyntaxError("byte " + std::to_string(peek().offset) +
                                      ": constant expected in arc coefficient");
                coeff = coeff * c.coeff(0, 0);
            } else if (k == Tok::Star) {
                advance();
                continue;
            } else {
                break;
            }
            saw_any = true;
        }
        if (!saw_any) fail("number, 'i', 'y', '(', or 'O'");
        return {coeff, exp};
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

std::string exponent_str(const Rat& e) {
    if (e.is_integer()) return "^" + e.str();
    return "^(" + e.str() + ")";
}

// Print a coefficient together with an optional variable part.
std::string monomial_str(const Coefficient& c, const std::string& vars) {
    std::string cs = serialize_coeff(c);
    if (vars.empty()) return cs;
    if (cs == "1") return vars;
    if (cs == "-1") return "-" + vars;
    return cs + "*" + vars;
}

// Sign-splitting helper for "a + b - c" style joins: returns (is_negative,
// printable magnitude).  Only exact coefficients split; approximate ones are
// always joined with '+'.
std::pair<bool, Coefficient> split_sign(const Coefficient& c) {
    if (!c.is_exact()) return {false, c};
    const GaussRat& g = c.exact();
    bool negative = g.re.sign() < 0 || (g.re.is_zero() && g.im.sign() < 0);
    return {negative, negative ? -c : c};
}

}  // namespace

BivarPoly parse_poly(const std::string& text) {
    return Parser(text).poly();
}

PuiseuxSeries parse_arc(const std::string& text) {
    return Parser(text).arc();
}

std::string serialize_rat(const Rat& r) { return r.str(); }

std::string serialize_ext(const ExtRat& r) {
    return r.is_infinite() ? "inf" : r.finite().str();
}

std::string serialize_coeff(const Coefficient& c) {
    if (c.is_exact()) {
        const GaussRat& g = c.exact();
        if (g.im.is_zero()) return g.re.str();
        std::string im_part;
        Rat ai = abs(g.im);
        if (ai == Rat(1))
            im_part = "i";
        else
            im_part = ai.str() + "*i";
        if (g.re.is_zero()) return (g.im.sign() < 0 ? "-" : "") + im_part;
        return "(" + g.re.str() + (g.im.sign() < 0 ? "-" : "+") + im_part + ")";
    }
    const ApproxComplex& a = c.approx();
    constexpr int kDigits = 20;
    std::string re = a.str_re(kDigits), im = a.str_im(kDigits);
    bool im_zero = a.exactly_zero_im();
    if (im_zero) return re;
    std::string im_mag = im;
    bool im_neg = !im.empty() && im[0] == '-';
    if (im_neg) im_mag = im.substr(1);
    return "(" + re + (im_neg ? "-" : "+") + im_mag + "*i)";
}

std::string serialize_poly(const BivarPoly& f) {
    if (f.is_zero()) return "0";
    std::vector<std::pair<BivarPoly::Key, Coefficient>> items(f.coeffs().begin(),
                                                              f.coeffs().end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        long ta = a.first.first + a.first.second;
        long tb = b.first.first + b.first.second;
        if (ta != tb) return ta < tb;
        return a.first.first > b.first.first;
    });
    std::string out;
    bool first = true;
    for (const auto& [key, c] : items) {
        std::string vars;
        if (key.first > 0) {
            vars = "x";
            if (key.first > 1) vars += "^" + std::to_string(key.first);
        }
        if (key.second > 0) {
            if (!vars.empty()) vars += "*";
            vars += "y";
            if (key.second > 1) vars += "^" + std::to_string(key.second);
        }
        auto [negative, mag] = split_sign(c);
        std::string ms = monomial_str(mag, vars);
        if (first) {
            out = negative ? "-" + ms : ms;
            first = false;
        } else {
            out += negative ? " - " : " + ";
            out += ms;
        }
    }
    return out;
}

std::string serialize_arc(const PuiseuxSeries& s) {
    std::string out = "x = ";
    bool first = true;
    for (const auto& t : s.terms()) {
        std::string vars;
        if (!t.exp.is_zero()) {
            vars = "y";
            if (t.exp != Rat(1)) vars += exponent_str(t.exp);
        }
        auto [negative, mag] = split_sign(t.coeff);
        std::string ms = monomial_str(mag, vars);
        if (first) {
            out += negative ? "-" + ms : ms;
            first = false;
        } else {
            out += negative ? " - " : " + ";
            out += ms;
        }
    }
    if (!s.truncation().is_infinite()) {
        const Rat& T = s.truncation().finite();
        std::string marker = "O(y" + (T == Rat(1) ? std::string() : exponent_str(T)) + ")";
        if (first)
            out += marker;
        else
            out += " + " + marker;
    } else if (first) {
        out += "0";
    }
    return out;
}

}  // namespace polarcalc
