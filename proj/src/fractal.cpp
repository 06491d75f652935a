#include "badlatt/fractal.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace badlatt {

using nlohmann::json;

namespace {

constexpr int kCdfStepCap = 512;

// One digit-walk step coefficient: F(y) = A + B * F(b*y - d).
struct Affine {
    Rational A, B;
};

}  // namespace

FractalMeasure FractalMeasure::lebesgue(Rational support_lo, Rational support_hi) {
    if (support_lo >= support_hi) throw std::invalid_argument("lebesgue: empty support");
    FractalMeasure m;
    m.kind_ = Kind::Lebesgue;
    m.support_lo_ = std::move(support_lo);
    m.support_hi_ = std::move(support_hi);
    m.C_ = 1;
    m.rho0_ = (m.support_hi_ - m.support_lo_) * 3;
    return m;
}

FractalMeasure FractalMeasure::digit_cantor(long base, std::vector<int> digits,
                                            int calibration_depth) {
    if (base < 3) throw std::invalid_argument("digit_cantor: base must be >= 3");
    std::sort(digits.begin(), digits.end());
    digits.erase(std::unique(digits.begin(), digits.end()), digits.end());
    if (digits.size() < 2) throw std::invalid_argument("digit_cantor: need at least 2 digits");
    if (static_cast<long>(digits.size()) >= base)
        throw std::invalid_argument("digit_cantor: digit set must be proper");
    for (int d : digits)
        if (d < 0 || d >= base) throw std::invalid_argument("digit_cantor: digit out of range");
    FractalMeasure m;
    m.kind_ = Kind::DigitCantor;
    m.base_ = base;
    m.digits_ = std::move(digits);
    m.support_lo_ = make_rational(m.digits_.front(), base - 1);
    m.support_hi_ = make_rational(m.digits_.back(), base - 1);
    m.rho0_ = 1;
    m.calib_depth_ = std::max(1, calibration_depth);
    m.calibrate();
    return m;
}

Rational FractalMeasure::support_lo() const { return support_lo_; }
Rational FractalMeasure::support_hi() const { return support_hi_; }

Interval FractalMeasure::alpha_interval(long prec) const {
    if (alpha_is_one()) return Interval::from_long(1, prec);
    const Interval num = log_iv(Interval::from_long(static_cast<long>(digits_.size()), prec + 16));
    const Interval den = log_iv(Interval::from_long(base_, prec + 16));
    return div(num, den);
}

namespace {

// Exact bracket of the digit-restricted CDF at x in [0, 1]; the walk
// terminates on a disallowed digit, on an exact cycle, or at the step cap
// (only then lo < hi, with gap |D|^-steps).
std::pair<Rational, Rational> cantor_cdf_bracket(long b, const std::vector<int>& D,
                                                 const Rational& x) {
    if (x <= 0) return {Rational(0), Rational(0)};
    if (x >= 1) return {Rational(1), Rational(1)};
    const Rational invD(1, static_cast<long>(D.size()));

    std::vector<Affine> steps;
    std::map<Rational, size_t> seen;
    Rational y = x;
    auto fold_to = [&](size_t from, Rational v) {
        for (size_t j = steps.size(); j-- > from;) v = steps[j].A + steps[j].B * v;
        return v;
    };
    for (int iter = 0; iter < kCdfStepCap; ++iter) {
        if (y <= 0) {
            const Rational v = fold_to(0, Rational(0));
            return {v, v};
        }
        if (y >= 1) {
            const Rational v = fold_to(0, Rational(1));
            return {v, v};
        }
        auto it = seen.find(y);
        if (it != seen.end()) {
            // F(y_s) = P + Q F(y_s) with Q < 1.
            Rational P(0), Q(1);
            for (size_t j = it->second; j < steps.size(); ++j) {
                P += Q * steps[j].A;
                Q *= steps[j].B;
            }
            const Rational fix = P / (Rational(1) - Q);
            const Rational v = fold_to(it->second, fix);
            return {v, v};
        }
        seen.emplace(y, steps.size());
        const Rational by = y * b;
        const Int d = rat_floor(by);
        const long dl = d.get_si();
        long below = 0;
        bool allowed = false;
        for (int dd : D) {
            if (dd < dl) ++below;
            if (dd == dl) allowed = true;
        }
        if (!allowed) {
            const Rational v = fold_to(0, Rational(below) * invD);
            return {v, v};
        }
        steps.push_back({Rational(below) * invD, invD});
        y = by - Rational(d);
    }
    // Cap hit: tail CDF is somewhere in [0, 1].
    return {fold_to(0, Rational(0)), fold_to(0, Rational(1))};
}

}  // namespace

Rational FractalMeasure::cdf(const Rational& x) const {
    if (kind_ == Kind::Lebesgue) {
        if (x <= support_lo_) return 0;
        if (x >= support_hi_) return support_hi_ - support_lo_;
        return x - support_lo_;
    }
    auto [lo, hi] = cantor_cdf_bracket(base_, digits_, x);
    if (lo != hi) throw std::domain_error("cdf: digit walk unresolved at step cap");
    return lo;
}

Rational FractalMeasure::measure_interval(const Rational& lo, const Rational& hi) const {
    if (hi <= lo) return 0;
    return cdf(hi) - cdf(lo);
}

std::pair<Rational, Rational> FractalMeasure::measure_interval_bracket(const Rational& lo,
                                                                       const Rational& hi) const {
    if (hi <= lo) return {Rational(0), Rational(0)};
    if (kind_ == Kind::Lebesgue) {
        const Rational v = measure_interval(lo, hi);
        return {v, v};
    }
    const auto [flo_lo, flo_hi] = cantor_cdf_bracket(base_, digits_, lo);
    const auto [fhi_lo, fhi_hi] = cantor_cdf_bracket(base_, digits_, hi);
    Rational a = fhi_lo - flo_hi;
    if (a < 0) a = 0;
    return {a, fhi_hi - flo_lo};
}

std::optional<Rational> FractalMeasure::supp_point_inside(const Rational& lo,
                                                          const Rational& hi) const {
    if (hi < lo) return std::nullopt;
    if (kind_ == Kind::Lebesgue) {
        const Rational a = std::max(lo, support_lo_), b = std::min(hi, support_hi_);
        if (a > b) return std::nullopt;
        return (a + b) / 2;
    }
    // Descend the digit tree toward positive interior mass until a cylinder
    // fits entirely inside [lo, hi].  The representative appends an
    // alternating digit tail rather than the cylinder's minimal point, so
    // its denominator grows with the depth instead of collapsing to a small
    // power of the base (small denominators would defeat downstream
    // approximation-quality scans).
    const Rational tail = make_rational(digits_.front() * base_ + digits_.back(), base_ * base_ - 1);
    Rational cyl_lo(0), len(1);
    for (int depth = 0; depth < kCdfStepCap; ++depth) {
        if (cyl_lo >= lo && cyl_lo + len <= hi) return cyl_lo + tail * len;
        const Rational clen = len / base_;
        Rational best_mass(-1), best_lo;
        bool found_inside = false;
        for (int d : digits_) {
            const Rational c = cyl_lo + Rational(d) * clen;
            const Rational a = std::max(lo, c), b = std::min(hi, Rational(c + clen));
            if (a > b) continue;
            const Rational mass = measure_interval_bracket(a, b).first;
            if (mass <= 0) continue;
            if (c >= lo && c + clen <= hi) {
                cyl_lo = c;
                len = clen;
                found_inside = true;
                break;
            }
            if (mass > best_mass) {
                best_mass = mass;
                best_lo = c;
            }
        }
        if (found_inside) continue;
        if (best_mass <= 0) return std::nullopt;
        cyl_lo = best_lo;
        len = clen;
    }
    return std::nullopt;
}

std::optional<Rational> FractalMeasure::min_supp_geq(const Rational& t) const {
    if (kind_ == Kind::Lebesgue) {
        if (t <= support_lo_) return support_lo_;
        if (t > support_hi_) return std::nullopt;
        return t;
    }
    if (t > support_hi_) return std::nullopt;
    // Walk the digit tree picking the smallest allowed digit whose subtree
    // still reaches t; a revisited remainder is a periodic point of supp.
    const Rational m0 = support_lo_, M0 = support_hi_;
    std::vector<long> prefix;
    std::set<Rational> seen;
    Rational cur = t;
    Rational tail;  // value appended after the prefix
    for (;;) {
        if (cur <= m0) {
            tail = m0;
            break;
        }
        if (seen.count(cur)) {
            tail = cur;  // periodic expansion with allowed digits
            break;
        }
        if (static_cast<int>(prefix.size()) > kCdfStepCap)
            throw std::domain_error("min_supp_geq: unresolved at step cap");
        seen.insert(cur);
        const Rational bt = cur * base_;
        bool chosen = false;
        for (int d : digits_) {
            if (Rational(d) + M0 >= bt) {
                prefix.push_back(d);
                cur = bt - Rational(d);
                chosen = true;
                break;
            }
        }
        if (!chosen) return std::nullopt;  // t above every point of this subtree
    }
    Rational v = tail;
    for (size_t j = prefix.size(); j-- > 0;) v = (Rational(prefix[j]) + v) / base_;
    return v;
}

bool FractalMeasure::in_support(const Rational& x) const {
    if (kind_ == Kind::Lebesgue) return x >= support_lo_ && x <= support_hi_;
    auto m = min_supp_geq(x);
    return m.has_value() && *m == x;
}

bool FractalMeasure::supp_intersects(const Rational& lo, const Rational& hi) const {
    if (hi < lo) return false;
    if (kind_ == Kind::Lebesgue) return hi >= support_lo_ && lo <= support_hi_;
    auto m = min_supp_geq(lo);
    return m.has_value() && *m <= hi;
}

Cmp FractalMeasure::cmp_vs_alpha_power(const Rational& X, const Rational& Y,
                                       const Rational& c) const {
    if (c <= 0) throw std::invalid_argument("cmp_vs_alpha_power: c must be positive");
    if (alpha_is_one()) return cmp_of_int(cmp(X, Y * c));
    if (X <= 0) return Cmp::Less;  // Y c^alpha > 0 always here
    // Exact route: c = base^{s/t} for a small t.
    const double ratio = std::log(c.get_d()) / std::log(static_cast<double>(base_));
    for (long t = 1; t <= 12; ++t) {
        const double st = ratio * static_cast<double>(t);
        const double sr = std::nearbyint(st);
        if (std::abs(st - sr) > 0.25 || std::abs(sr) > 1e9) continue;
        const long s = static_cast<long>(sr);
        if (rat_pow(c, t) == rat_pow(Rational(base_), s)) {
            // X vs Y * |D|^{s/t}  <=>  (X/Y)^t vs |D|^s.
            return cmp_power(X / Y, t, Rational(static_cast<long>(digits_.size())), s);
        }
    }
    return cmp_escalating(
        [&](long p) { return iv_from_rational(X, p); },
        [&](long p) {
            const Interval lc = log_iv(iv_from_rational(c, p + 16));
            return mul(iv_from_rational(Y, p), exp_iv(mul(alpha_interval(p), lc)));
        });
}

namespace {

// Longest run of consecutive base-b integers whose digits all lie in D.
// A run inside one parent cell is a run of consecutive digits; a run
// crossing parent boundaries needs a (b-1)-suffix, a 0-prefix and adjacent
// parents, so the maximum stabilizes after depth two.
long max_allowed_cell_run(long b, const std::vector<int>& D) {
    long g = 1, cur = 1;
    for (size_t i = 1; i < D.size(); ++i) {
        cur = (D[i] == D[i - 1] + 1) ? cur + 1 : 1;
        g = std::max(g, cur);
    }
    long suffix = 0;  // consecutive allowed digits ending at b-1
    for (long d = b - 1; d >= 0 && std::count(D.begin(), D.end(), static_cast<int>(d)); --d)
        ++suffix;
    long prefix = 0;  // consecutive allowed digits starting at 0
    for (long d = 0; d < b && std::count(D.begin(), D.end(), static_cast<int>(d)); ++d)
        ++prefix;
    long m = g;
    if (g >= 2 && suffix > 0 && prefix > 0) m = std::max(m, suffix + prefix);
    return m;
}

}  // namespace

FractalMeasure::BallExtrema FractalMeasure::ball_mass_extrema(int k) const {
    if (kind_ != Kind::DigitCantor) throw std::logic_error("ball_mass_extrema: cantor only");
    (void)k;
    // At scale b^-k every depth-k base cell is an allowed cylinder of mass
    // |D|^-k or carries no mass, and a ball of radius b^-k meets at most
    // three consecutive cells; the ball always contains the cell of its
    // centre.  Both bounds are uniform over k.
    const long run = std::min(3L, max_allowed_cell_run(base_, digits_));
    return {Rational(run), Rational(1)};
}

void FractalMeasure::calibrate() {
    const BallExtrema e = ball_mass_extrema(1);
    // One multiplicative period of scales separates consecutive cylinder
    // radii, so the all-scale constant inflates by b^alpha = |D|.
    C_ = std::max(e.sup_upper, Rational(Rational(1) / e.inf_lower)) *
         Rational(static_cast<long>(digits_.size()));
}

FractalMeasure FractalMeasure::from_json(const std::string& text) {
    const json j = json::parse(text);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "lebesgue") {
        const auto& s = j.at("support");
        return lebesgue(rat_from_string(s.at(0).get<std::string>()),
                        rat_from_string(s.at(1).get<std::string>()));
    }
    if (kind == "digit_cantor") {
        std::vector<int> digits;
        for (const auto& d : j.at("digits")) digits.push_back(d.get<int>());
        const int depth = j.value("calibration_depth", 13);
        return digit_cantor(j.at("base").get<long>(), digits, depth);
    }
    throw std::invalid_argument("measure: unknown kind " + kind);
}

std::string FractalMeasure::to_json() const {
    json j;
    if (kind_ == Kind::Lebesgue) {
        j["kind"] = "lebesgue";
        j["support"] = {rat_to_string(support_lo_), rat_to_string(support_hi_)};
    } else {
        j["kind"] = "digit_cantor";
        j["base"] = base_;
        j["digits"] = digits_;
        j["calibration_depth"] = calib_depth_;
    }
    j["ahlfors_C"] = rat_to_string(C_);
    j["rho0"] = rat_to_string(rho0_);
    j["alpha"] = {alpha_num(), alpha_den()};
    return j.dump();
}

FedererReport federer_ratio_bound(const FractalMeasure& mu, int samples, unsigned long seed) {
    FedererReport rep;
    rep.samples = samples;
    rep.observed_max = 0;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(0, 1000);
    const int kmax = mu.kind() == FractalMeasure::Kind::DigitCantor
                         ? std::max(2, mu.calibration_depth() - 1)
                         : 12;
    std::uniform_int_distribution<int> kd(1, kmax);
    const Rational base(mu.kind() == FractalMeasure::Kind::DigitCantor ? mu.base() : 2);
    for (int s = 0; s < samples; ++s) {
        const Rational span = mu.support_hi() - mu.support_lo();
        const Rational probe = mu.support_lo() + span * Rational(num(rng), 1000);
        const auto x = mu.min_supp_geq(probe);
        if (!x) continue;
        const Rational r = rat_pow(base, -kd(rng)) * mu.rho0() / 3;
        const Rational lo_mass = mu.measure_interval(*x - r, *x + r);
        if (lo_mass == 0) continue;
        const Rational ratio = mu.measure_interval(*x - 3 * r, *x + 3 * r) / lo_mass;
        rep.observed_max = std::max(rep.observed_max, ratio);
    }
    const Rational C2 = mu.ahlfors_C() * mu.ahlfors_C();
    rep.within_bound = mu.cmp_vs_alpha_power(rep.observed_max, C2, Rational(3)) != Cmp::Greater;
    return rep;
}

std::vector<DecaySample> decay_profile(const FractalMeasure& mu, const Rational& center,
                                       const Rational& radius, const Rational& y,
                                       const std::vector<Rational>& eps_grid) {
    const Rational total = mu.measure_interval(center - radius, center + radius);
    if (total <= 0) throw std::invalid_argument("decay_profile: ball has zero mass");
    const Rational C2 = mu.ahlfors_C() * mu.ahlfors_C();
    std::vector<DecaySample> out;
    for (const Rational& eps : eps_grid) {
        if (eps <= 0) throw std::invalid_argument("decay_profile: eps must be positive");
        DecaySample s;
        s.eps = eps;
        const Rational lo = std::max(center - radius, y - eps);
        const Rational hi = std::min(center + radius, y + eps);
        s.ratio = hi > lo ? mu.measure_interval(lo, hi) / total : Rational(0);
        // ratio <= 2^alpha C^2 (eps / r)^alpha = C^2 (2 eps / r)^alpha
        s.within_bound = mu.cmp_vs_alpha_power(s.ratio, C2, 2 * eps / radius) != Cmp::Greater;
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace badlatt
