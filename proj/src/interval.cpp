#include "badlatt/interval.hpp"

#include <algorithm>
#include <cassert>

namespace badlatt {

Interval::Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {
    mpfr_set_zero(lo_.get(), 1);
    mpfr_set_zero(hi_.get(), 1);
}

Interval Interval::from_rational(const Rational& x, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_.get(), x.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), x.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::from_endpoints(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
    if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
    Interval r(prec);
    mpfr_set_q(r.lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::from_long(long x, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_si(r.lo_.get(), x, MPFR_RNDD);
    mpfr_set_si(r.hi_.get(), x, MPFR_RNDU);
    return r;
}

Interval Interval::from_mpfr_bounds(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set(r.lo_.get(), lo, MPFR_RNDD);
    mpfr_set(r.hi_.get(), hi, MPFR_RNDU);
    r.check();
    return r;
}

Interval Interval::entire(mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_inf(r.lo_.get(), -1);
    mpfr_set_inf(r.hi_.get(), 1);
    return r;
}

void Interval::check() const {
    assert(mpfr_nan_p(lo_.get()) == 0 && mpfr_nan_p(hi_.get()) == 0);
    assert(mpfr_cmp(lo_.get(), hi_.get()) <= 0);
}

bool Interval::contains_zero() const {
    return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

bool Interval::contains(const Rational& x) const {
    return mpfr_cmp_q(lo_.get(), x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), x.get_mpq_t()) >= 0;
}

bool Interval::is_finite() const {
    return mpfr_number_p(lo_.get()) && mpfr_number_p(hi_.get());
}

double Interval::width_double() const {
    MpFloat w(prec());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return mpfr_get_d(w.get(), MPFR_RNDU);
}

double Interval::mid_double() const {
    MpFloat m(prec());
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m.to_double();
}

Interval Interval::neg() const {
    Interval r(prec());
    mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    r.check();
    return r;
}

Interval Interval::abs() const {
    Interval r(prec());
    if (mpfr_sgn(lo_.get()) >= 0) return *this;
    if (mpfr_sgn(hi_.get()) <= 0) return neg();
    mpfr_set_zero(r.lo_.get(), 1);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    if (mpfr_cmp(hi_.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
    r.check();
    return r;
}

Interval add(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    r.check();
    return r;
}

Interval sub(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    r.check();
    return r;
}

Interval mul(const Interval& a, const Interval& b) {
    const mpfr_prec_t p = std::max(a.prec(), b.prec());
    Interval r(p);
    MpFloat t(p);
    // lo: min over the four endpoint products rounded down.
    bool first = true;
    for (const MpFloat* x : {&a.lo_, &a.hi_}) {
        for (const MpFloat* y : {&b.lo_, &b.hi_}) {
            mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
            if (mpfr_nan_p(t.get())) mpfr_set_zero(t.get(), 1);  // 0 * inf
            if (first || mpfr_cmp(t.get(), r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
            first = false;
        }
    }
    first = true;
    for (const MpFloat* x : {&a.lo_, &a.hi_}) {
        for (const MpFloat* y : {&b.lo_, &b.hi_}) {
            mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
            if (mpfr_nan_p(t.get())) mpfr_set_zero(t.get(), 1);
            if (first || mpfr_cmp(t.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    }
    r.check();
    return r;
}

Interval div(const Interval& a, const Interval& b) {
    const mpfr_prec_t p = std::max(a.prec(), b.prec());
    if (b.contains_zero()) return Interval::entire(p);
    Interval r(p);
    MpFloat t(p);
    bool first = true;
    for (const MpFloat* x : {&a.lo_, &a.hi_}) {
        for (const MpFloat* y : {&b.lo_, &b.hi_}) {
            mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
            first = false;
        }
    }
    first = true;
    for (const MpFloat* x : {&a.lo_, &a.hi_}) {
        for (const MpFloat* y : {&b.lo_, &b.hi_}) {
            mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    }
    r.check();
    return r;
}

Interval sqrt_iv(const Interval& a) {
    Interval r(a.prec());
    if (mpfr_sgn(a.hi_.get()) < 0) throw std::domain_error("sqrt_iv: negative interval");
    if (mpfr_sgn(a.lo_.get()) <= 0) {
        mpfr_set_zero(r.lo_.get(), 1);
    } else {
        mpfr_sqrt(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    }
    mpfr_sqrt(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    r.check();
    return r;
}

Interval exp_iv(const Interval& a) {
    Interval r(a.prec());
    mpfr_exp(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_exp(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    r.check();
    return r;
}

Interval log_iv(const Interval& a) {
    if (mpfr_sgn(a.lo_.get()) <= 0) throw std::domain_error("log_iv: non-positive interval");
    Interval r(a.prec());
    mpfr_log(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_log(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    r.check();
    return r;
}

Interval square(const Interval& a) {
    Interval r(a.prec());
    const Interval m = a.abs();
    mpfr_sqr(r.lo_.get(), m.lo_.get(), MPFR_RNDD);
    mpfr_sqr(r.hi_.get(), m.hi_.get(), MPFR_RNDU);
    r.check();
    return r;
}

Interval hull(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    r.check();
    return r;
}

Interval min_iv(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_min(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    r.check();
    return r;
}

Interval Interval::scaled_q(const Rational& c) const {
    return mul(*this, Interval::from_rational(c, prec()));
}

Interval Interval::added_q(const Rational& c) const {
    return add(*this, Interval::from_rational(c, prec()));
}

Cmp Interval::compare(const Interval& other) const {
    if (mpfr_cmp(hi_.get(), other.lo_.get()) < 0) return Cmp::Less;
    if (mpfr_cmp(lo_.get(), other.hi_.get()) > 0) return Cmp::Greater;
    // Degenerate equal point intervals are genuinely equal.
    if (mpfr_cmp(lo_.get(), hi_.get()) == 0 && mpfr_cmp(other.lo_.get(), other.hi_.get()) == 0 &&
        mpfr_cmp(lo_.get(), other.lo_.get()) == 0)
        return Cmp::Equal;
    return Cmp::Indeterminate;
}

Cmp Interval::compare(const Rational& other) const {
    if (mpfr_cmp_q(hi_.get(), other.get_mpq_t()) < 0) return Cmp::Less;
    if (mpfr_cmp_q(lo_.get(), other.get_mpq_t()) > 0) return Cmp::Greater;
    if (mpfr_cmp(lo_.get(), hi_.get()) == 0 && mpfr_cmp_q(lo_.get(), other.get_mpq_t()) == 0)
        return Cmp::Equal;
    return Cmp::Indeterminate;
}

std::string Interval::to_string() const {
    char* ls = nullptr;
    char* hs = nullptr;
    mpfr_asprintf(&ls, "%.20Rg", lo_.get());
    mpfr_asprintf(&hs, "%.20Rg", hi_.get());
    std::string out = std::string("[") + ls + ", " + hs + "]";
    mpfr_free_str(ls);
    mpfr_free_str(hs);
    return out;
}

static std::string hex_of(mpfr_srcptr x) {
    char* s = nullptr;
    mpfr_asprintf(&s, "%Ra", x);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string Interval::lo_hex() const { return hex_of(lo_.get()); }
std::string Interval::hi_hex() const { return hex_of(hi_.get()); }

Interval iv_from_rational(const Rational& x, long prec) {
    if (prec < 16) throw std::invalid_argument("iv_from_rational: precision < 16");
    return Interval::from_rational(x, prec);
}

Interval iv_exp_log_pow(const Rational& base, const Rational& exponent, long prec) {
    if (base <= 1) throw std::domain_error("iv_exp_log_pow: base must exceed 1");
    if (auto exact = try_exact_pow(base, exponent)) return iv_from_rational(*exact, prec);
    const long work = prec + 32;
    const Interval b = Interval::from_rational(base, work);
    const Interval e = Interval::from_rational(exponent, work);
    return exp_iv(mul(e, log_iv(b)));
}

Interval iv_pow(const Interval& base, const Rational& exponent, long prec) {
    if (!base.definitely_positive()) throw std::domain_error("iv_pow: base not positive");
    if (exponent.get_den() == 1 && exponent.get_num().fits_slong_p()) {
        const long p = exponent.get_num().get_si();
        Interval acc = Interval::from_long(1, prec);
        Interval b = base;
        long e = p < 0 ? -p : p;
        while (e > 0) {
            if (e & 1) acc = mul(acc, b);
            b = square(b);  // b positive, square == mul(b,b)
            e >>= 1;
        }
        if (p < 0) acc = div(Interval::from_long(1, prec), acc);
        return acc;
    }
    const Interval e = Interval::from_rational(exponent, prec + 32);
    return exp_iv(mul(e, log_iv(base)));
}

Cmp cmp_escalating(const std::function<Interval(long)>& f,
                   const std::function<Interval(long)>& g,
                   long start, long cap) {
    if (cap <= 0) cap = precision_cap();
    for (long p = start; p <= cap; p *= 2) {
        const Interval a = f(p);
        const Interval b = g(p);
        const Cmp c = a.compare(b);
        if (c != Cmp::Indeterminate) return c;
    }
    return Cmp::Indeterminate;
}

}  // namespace badlatt
