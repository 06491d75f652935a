#pragma once

// Directed-rounding interval arithmetic on MPFR floats.  Every operation
// returns an enclosure of the true real result: lower endpoints round
// toward -inf, upper endpoints toward +inf.  Endpoints are dyadic, so
// enclosures of dyadic rationals can be exact.

#include "badlatt/arith.hpp"

#include <mpfr.h>

#include <functional>
#include <string>
#include <utility>

namespace badlatt {

// Minimal RAII wrapper for a single mpfr_t.
class MpFloat {
  public:
    explicit MpFloat(mpfr_prec_t prec = kDefaultPrecision) { mpfr_init2(x_, prec); }
    MpFloat(const MpFloat& o) {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    MpFloat(MpFloat&& o) noexcept {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_swap(x_, o.x_);
    }
    MpFloat& operator=(const MpFloat& o) {
        if (this != &o) {
            mpfr_set_prec(x_, mpfr_get_prec(o.x_));
            mpfr_set(x_, o.x_, MPFR_RNDN);
        }
        return *this;
    }
    MpFloat& operator=(MpFloat&& o) noexcept {
        mpfr_swap(x_, o.x_);
        return *this;
    }
    ~MpFloat() { mpfr_clear(x_); }

    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

  private:
    mpfr_t x_;
};

class Interval {
  public:
    // Default: [0, 0] at default precision.
    explicit Interval(mpfr_prec_t prec = kDefaultPrecision);

    static Interval from_rational(const Rational& x, mpfr_prec_t prec);
    static Interval from_endpoints(const Rational& lo, const Rational& hi, mpfr_prec_t prec);
    static Interval from_long(long x, mpfr_prec_t prec);
    static Interval from_mpfr_bounds(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec);
    static Interval entire(mpfr_prec_t prec);  // [-inf, +inf]

    const MpFloat& lo() const { return lo_; }
    const MpFloat& hi() const { return hi_; }
    mpfr_prec_t prec() const { return lo_.prec(); }

    bool contains_zero() const;
    bool contains(const Rational& x) const;
    bool is_finite() const;
    // hi - lo, rounded up, as a double (diagnostics only).
    double width_double() const;
    double mid_double() const;

    // Exact sign classification of the whole interval against zero.
    bool definitely_positive() const { return mpfr_sgn(lo_.get()) > 0; }
    bool definitely_negative() const { return mpfr_sgn(hi_.get()) < 0; }

    Interval neg() const;
    Interval abs() const;

    friend Interval add(const Interval& a, const Interval& b);
    friend Interval sub(const Interval& a, const Interval& b);
    friend Interval mul(const Interval& a, const Interval& b);
    // Division by an interval containing zero yields [-inf, +inf].
    friend Interval div(const Interval& a, const Interval& b);
    friend Interval sqrt_iv(const Interval& a);  // requires a.lo >= 0 after clamping at 0
    friend Interval exp_iv(const Interval& a);
    friend Interval log_iv(const Interval& a);  // requires a.lo > 0
    friend Interval square(const Interval& a);
    friend Interval hull(const Interval& a, const Interval& b);
    friend Interval min_iv(const Interval& a, const Interval& b);

    Interval scaled_q(const Rational& c) const;  // c * this, exact directed rounding
    Interval added_q(const Rational& c) const;

    // this vs other; Indeterminate when the enclosures overlap.
    Cmp compare(const Interval& other) const;
    Cmp compare(const Rational& other) const;

    std::string to_string() const;
    // Hex-float serialization of the endpoints ("0x1.8p+1" style).
    std::string lo_hex() const;
    std::string hi_hex() const;

  private:
    MpFloat lo_, hi_;
    void check() const;
};

Interval add(const Interval& a, const Interval& b);
Interval sub(const Interval& a, const Interval& b);
Interval mul(const Interval& a, const Interval& b);
Interval div(const Interval& a, const Interval& b);
Interval sqrt_iv(const Interval& a);
Interval exp_iv(const Interval& a);
Interval log_iv(const Interval& a);
Interval square(const Interval& a);
Interval hull(const Interval& a, const Interval& b);
Interval min_iv(const Interval& a, const Interval& b);

// Enclosure of x at the requested precision; width <= 2^(1-prec)*max(1,|x|).
Interval iv_from_rational(const Rational& x, long prec);

// Enclosure of base^exponent for rational base > 1.  Uses the exact value
// when base^exponent is rational, exp(exponent*log base) otherwise.
Interval iv_exp_log_pow(const Rational& base, const Rational& exponent, long prec);

// Enclosure of base^exponent for a positive interval base.
Interval iv_pow(const Interval& base, const Rational& exponent, long prec);

// Compare two real quantities given as enclosure generators, doubling the
// precision from `start` until the enclosures separate or `cap` is hit.
// Equality is never produced; use exact routes for that.
Cmp cmp_escalating(const std::function<Interval(long)>& f,
                   const std::function<Interval(long)>& g,
                   long start = kDefaultPrecision, long cap = 0);

}  // namespace badlatt
