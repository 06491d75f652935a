#include "badlatt/arith.hpp"

#include <cstdlib>

namespace badlatt {

std::string rat_to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational rat_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    if (r.get_den() <= 0) throw std::invalid_argument("bad rational: " + s);
    return r;
}

Int rat_floor(const Rational& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

Int rat_ceil(const Rational& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

Int rat_round(const Rational& x) {
    return rat_floor(x + Rational(1, 2));
}

Rational rat_pow(const Rational& a, long p) {
    if (p == 0) return Rational(1);
    const unsigned long e = static_cast<unsigned long>(p < 0 ? -p : p);
    Int num, den;
    mpz_pow_ui(num.get_mpz_t(), a.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), a.get_den().get_mpz_t(), e);
    if (p < 0) {
        if (num == 0) throw std::domain_error("rat_pow: 0 to negative power");
        std::swap(num, den);
    }
    return make_rational(num, den);
}

Cmp cmp_power(const Rational& a, long p, const Rational& b, long q) {
    if (a <= 0 || b <= 0) throw std::domain_error("cmp_power: bases must be positive");
    const Rational lhs = rat_pow(a, p);
    const Rational rhs = rat_pow(b, q);
    return cmp_of_int(cmp(lhs, rhs));
}

std::optional<Rational> try_exact_pow(const Rational& base, const Rational& expo) {
    if (base <= 0) return std::nullopt;
    const Int& s = expo.get_num();
    const Int& t = expo.get_den();
    if (!t.fits_ulong_p() || !s.fits_slong_p()) return std::nullopt;
    const unsigned long tu = t.get_ui();

    Rational root;
    if (tu == 1) {
        root = base;
    } else {
        Int rn, rd;
        const int exact_n = mpz_root(rn.get_mpz_t(), base.get_num().get_mpz_t(), tu);
        const int exact_d = mpz_root(rd.get_mpz_t(), base.get_den().get_mpz_t(), tu);
        if (!exact_n || !exact_d) return std::nullopt;
        root = make_rational(rn, rd);
    }
    return rat_pow(root, s.get_si());
}

long precision_cap() {
    static const long cap = [] {
        if (const char* env = std::getenv("BADLATT_PRECISION_CAP")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v >= 16) return v;
        }
        return 4096L;
    }();
    return cap;
}

}  // namespace badlatt
