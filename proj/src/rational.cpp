#include "polarcalc/rational.hpp"

namespace polarcalc {

Rat Rat::from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw DomainError("malformed rational literal: " + s);
    if (q.get_den() == 0) throw DomainError("rational with zero denominator");
    q.canonicalize();
    return Rat(q);
}

std::string Rat::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

Rat pow(const Rat& r, long e) {
    if (e < 0) {
        if (r.is_zero()) throw DomainError("zero to negative power");
        return Rat(1) / pow(r, -e);
    }
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), r.num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), r.den().get_mpz_t(), static_cast<unsigned long>(e));
    return Rat(n, d);
}

}  // namespace polarcalc
