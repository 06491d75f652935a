#pragma once

// Empirical laboratory for the quantitative non-divergence estimates:
// exact-mass brackets of the escape sets W(tau, J, delta), decay-exponent
// fits, good-function profiles of curve coordinates against fractal
// measures, and the exact coordinate identity behind the global estimate.

#include "badlatt/engine.hpp"
#include "badlatt/intlattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace badlatt {

struct QndExperiment {
    FractalMeasure mu;
    CurveModel curve;
    Rational J_lo, J_hi;
    long R;          // tau entries are exponents of R: g = diag(R^{tau_i})
    QVec tau_exps;   // n+1 entries summing to zero
    std::vector<Rational> delta_grid;
    int cylinder_depth = 8;
    long precision = kDefaultPrecision;

    void validate() const;
    // tau_1 > 0 and tau_i < 0 for i >= 3 (the global-estimate regime).
    bool global_regime() const;
};

struct WMassRow {
    Rational delta;
    Rational mass_lo, mass_hi;  // bracket; hi - lo is the undecided mass
};

struct WMassResult {
    std::vector<WMassRow> rows;
    Rational total_mass;      // mu(J)
    Rational undecided;       // mass of cells the SVP could not classify
    bool depth_ok = true;     // undecided < 5% of mu(J)
    std::string to_csv() const;
};

// Mass of {x in J : g_tau z(x) u(phi(x)) Z^{n+1} not in K_delta} for each
// delta, bracketed by classifying measure cylinders at the configured depth.
// `parallel` classifies cells under OpenMP; the aggregation is exact
// rational addition, so results are identical to the serial reference.
WMassResult measure_W(const QndExperiment& exp, bool parallel = true);

struct DecayFit {
    double gamma_hat = 0;    // log-log slope
    double log_M_hat = 0;    // intercept
    double residual_rms = 0;
    bool consistent = false;  // positive slope within tolerance
};

// Least-squares fit of log-mass against log-delta over the rows with
// positive mass; throws on fewer than 4 usable points.
DecayFit fit_decay(const std::vector<WMassRow>& rows);

struct GoodFunRow {
    Rational eps;
    Rational mass_lo, mass_hi;
};

struct GoodFunProfile {
    std::vector<GoodFunRow> rows;
    Rational norm_mu_lo, norm_mu_hi;    // sup |f| over supp(mu) cap B
    Rational norm_sup_lo, norm_sup_hi;  // sup |f| over B
    DecayFit fit_mu, fit_sup;           // alpha-hat in gamma_hat, log C in log_M_hat
};

GoodFunProfile good_function_profile(const QPoly& f, const FractalMeasure& mu, const Rational& B_lo,
                                     const Rational& B_hi, const std::vector<Rational>& eps_grid,
                                     int cylinder_depth = 8);

// Rigorous enclosure of sup_{x in I0} |p(x)| by adaptive bisection with
// exact midpoint evaluations; converged when hi <= lo (1 + tol).
struct SupBound {
    Rational lo, hi;
    bool converged = false;
};
SupBound sup_abs_poly(const QPoly& p, const Rational& lo, const Rational& hi,
                      const Rational& rel_tol = Rational(1, 1 << 20), int max_segments = 4096);

// sup_{x in I0} |phi~(x) . v| for a nonzero integer vector (grade 1).
SupBound sup_coordinate_grade1(const CurveModel& curve, const ZVec& v, const Rational& lo,
                               const Rational& hi);
// sup_{x in I0} |(phi~ ^ phi~') . (a ^ b)| (grade 2).
SupBound sup_coordinate_grade2(const CurveModel& curve, const ZVec& a, const ZVec& b,
                               const Rational& lo, const Rational& hi);

// The coordinate identity of the global estimate: for a primitive collection
// v_1..v_r (r >= 2) there is a multi-index I = {1, 2, i_3, ..., i_r} and an
// integer 2-vector a ^ b with
//   |(H(x) v_1 ^ ... ^ v_r)_I| = R^{sum_{i in I} tau_i} |(phi~ ^ phi~') . (a ^ b)|.
struct MainPropInstance {
    std::vector<int> index_set;  // 0-based row indices, starts {0, 1}
    ZVec a, b;
};
MainPropInstance mainprop_instance(const IntCollection& v);

// Exact verification of the identity at a rational point for exponent
// vectors that rationalize; returns false if either side disagrees.
bool check_mainprop_identity(const CurveModel& curve, const IntCollection& v, long R,
                             const QVec& tau_exps, const Rational& x);

}  // namespace badlatt
