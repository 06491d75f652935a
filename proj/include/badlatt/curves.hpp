#pragma once

// Polynomial curve models phi : U -> R^n in normalized form, with the first
// component equal to the identity.  Evaluation is exact at rational points
// and a Horner enclosure at interval points.

#include "badlatt/matrix.hpp"

#include <string>
#include <vector>

namespace badlatt {

// Univariate polynomial, coefficients low to high.
struct QPoly {
    std::vector<Rational> coeffs;

    Rational eval(const Rational& x) const;
    Interval eval(const Interval& x) const;
    QPoly derivative() const;
    int degree() const;
    bool is_zero() const;
};

QPoly poly_mul(const QPoly& a, const QPoly& b);
// a += c * b
void poly_add_scaled(QPoly& a, const Rational& c, const QPoly& b);
// Exact Taylor shift: coefficients of p(x + m).
QPoly poly_shift(const QPoly& p, const Rational& m);
// Tight enclosure of p over [lo, hi] via centered evaluation at the
// midpoint; much narrower than plain Horner when coefficients cancel.
Interval poly_eval_centered(const QPoly& p, const Rational& lo, const Rational& hi, long prec);

class CurveModel {
  public:
    // components[0] must be the identity polynomial x.
    CurveModel(int n, std::vector<QPoly> components, Rational dom_lo, Rational dom_hi);

    static CurveModel veronese(int n, Rational dom_lo = Rational(0), Rational dom_hi = Rational(1));
    static CurveModel from_json(const std::string& text);
    // Accepts "veronese:n" or a JSON object.
    static CurveModel from_spec(const std::string& spec);

    int n() const { return n_; }
    const Rational& dom_lo() const { return dom_lo_; }
    const Rational& dom_hi() const { return dom_hi_; }
    bool in_domain(const Rational& x) const { return x >= dom_lo_ && x <= dom_hi_; }

    QVec eval(const Rational& x) const;
    QVec eval_derivative(const Rational& x) const;
    IVec eval(const Interval& x) const;
    IVec eval_derivative(const Interval& x) const;

    // phi_tilde(x) = (1, x, phi_2(x), ..., phi_n(x)) and its derivative.
    QVec eval_tilde(const Rational& x) const;
    QVec eval_tilde_derivative(const Rational& x) const;
    IVec eval_tilde(const Interval& x) const;
    IVec eval_tilde_derivative(const Interval& x) const;

    // psi(x) = (phi_2'(x), ..., phi_n'(x)); empty for n = 1.
    QVec eval_psi(const Rational& x) const;
    IVec eval_psi(const Interval& x) const;

    // Rank test: 1, phi_1, ..., phi_n linearly independent over Q.
    bool nondegenerate() const;

    // det [[phi~ . a, phi~ . b], [phi~' . a, phi~' . b]] at x; exact.
    Rational wronskian_pair(const ZVec& a, const ZVec& b, const Rational& x) const;

    // Wronskian pairing as a polynomial in x (used for non-vanishing tests).
    QPoly wronskian_poly(const ZVec& a, const ZVec& b) const;

    const QPoly& component(int i) const { return components_[i]; }

  private:
    int n_;
    std::vector<QPoly> components_;   // size n, components_[0] = x
    std::vector<QPoly> derivatives_;  // cached
    Rational dom_lo_, dom_hi_;
};

}  // namespace badlatt
