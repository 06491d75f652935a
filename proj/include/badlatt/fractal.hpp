#pragma once

// Ahlfors-regular measures on the line with exact interval masses: Lebesgue,
// and digit-restricted Cantor measures (uniform measure on base-b expansions
// drawn from an allowed digit set).  Masses, support queries and the Ahlfors
// constant are all exact rationals.

#include "badlatt/arith.hpp"
#include "badlatt/interval.hpp"

#include <string>
#include <vector>

namespace badlatt {

class FractalMeasure {
  public:
    enum class Kind { Lebesgue, DigitCantor };

    static FractalMeasure lebesgue(Rational support_lo, Rational support_hi);
    // base >= 3, digits a subset of {0..base-1} with at least 2 elements.
    // calibration_depth bounds the certified cylinder scales (b^-k, k <= depth).
    static FractalMeasure digit_cantor(long base, std::vector<int> digits,
                                       int calibration_depth = 13);
    static FractalMeasure from_json(const std::string& text);
    std::string to_json() const;

    Kind kind() const { return kind_; }
    long base() const { return base_; }
    const std::vector<int>& digits() const { return digits_; }
    // alpha = log(digit_count) / log(base) as the exact pair; (1,1) exponent
    // shape for Lebesgue (alpha = 1).
    long alpha_num() const { return kind_ == Kind::Lebesgue ? 2 : static_cast<long>(digits_.size()); }
    long alpha_den() const { return kind_ == Kind::Lebesgue ? 2 : base_; }
    bool alpha_is_one() const { return kind_ == Kind::Lebesgue; }
    Interval alpha_interval(long prec) const;

    const Rational& ahlfors_C() const { return C_; }
    const Rational& rho0() const { return rho0_; }
    int calibration_depth() const { return calib_depth_; }
    Rational support_lo() const;
    Rational support_hi() const;

    // Exact mass of the closed interval [lo, hi] (atom-free, so closed vs
    // open makes no difference).
    Rational measure_interval(const Rational& lo, const Rational& hi) const;
    // Bracket of the mass; the ends coincide unless the digit walk for an
    // endpoint hits the step cap (gap then below |D|^-cap).
    std::pair<Rational, Rational> measure_interval_bracket(const Rational& lo,
                                                           const Rational& hi) const;
    // CDF: mass of (-inf, x].
    Rational cdf(const Rational& x) const;
    // A support point inside [lo, hi], available whenever the intersection
    // carries positive mass; nullopt when none can be certified.
    std::optional<Rational> supp_point_inside(const Rational& lo, const Rational& hi) const;

    bool supp_intersects(const Rational& lo, const Rational& hi) const;
    bool in_support(const Rational& x) const;
    // Smallest support point >= t, or nullopt when none exists.
    std::optional<Rational> min_supp_geq(const Rational& t) const;

    // X vs Y * c^alpha for rational c > 0.  Exact via integer power
    // comparison whenever c is a rational power of the base; otherwise
    // escalating interval arithmetic (never Equal in that regime).
    Cmp cmp_vs_alpha_power(const Rational& X, const Rational& Y, const Rational& c) const;

    // Certified ball-mass ratio extrema used for the frozen constant:
    // sup and inf over x in supp of mu(B(x, b^-k)) * |D|^k at scale k.
    struct BallExtrema {
        Rational sup_upper;  // certified upper bound for the sup
        Rational inf_lower;  // certified lower bound for the inf
    };
    BallExtrema ball_mass_extrema(int k) const;

  private:
    FractalMeasure() = default;
    void calibrate();

    Kind kind_ = Kind::Lebesgue;
    long base_ = 0;
    std::vector<int> digits_;
    Rational support_lo_, support_hi_;  // Lebesgue support; [0,1] for Cantor
    Rational C_;
    Rational rho0_;
    int calib_depth_ = 0;
};

// Observed-vs-theoretical Federer data: max over samples of
// mu(B(x,3r))/mu(B(x,r)) against the bound C^2 3^alpha.
struct FedererReport {
    Rational observed_max;
    bool within_bound = true;  // exact comparison observed <= C^2 3^alpha
    int samples = 0;
};
FedererReport federer_ratio_bound(const FractalMeasure& mu, int samples, unsigned long seed);

// Decay profile of mass near a point: for each eps, the ratio
// mu(B cap B(y, eps)) / mu(B), checked against C^2 (2 eps / r_B)^alpha.
struct DecaySample {
    Rational eps;
    Rational ratio;
    bool within_bound = true;
};
std::vector<DecaySample> decay_profile(const FractalMeasure& mu, const Rational& center,
                                       const Rational& radius, const Rational& y,
                                       const std::vector<Rational>& eps_grid);

}  // namespace badlatt
