#pragma once

// Lattice flows for the Dani correspondence: the unipotent embeddings u and
// u_1, the diagonal flows a(t) and b(t), the curve twist z(x), and the
// product H_{l,q}(x) = b(beta' l) a(beta (q+1)) z(x) u(phi(x)).
//
// a and b are only ever evaluated at integer multiples of beta and beta',
// where e^{(1+r_1) beta} = R and e^{(1+1/n) beta'} = R.  Their entries are
// therefore rational powers of R, kept as exact exponents alongside interval
// enclosures so that borderline comparisons can fall back to exact
// cross-multiplied power comparisons.

#include "badlatt/curves.hpp"
#include "badlatt/matrix.hpp"
#include "badlatt/multivector.hpp"
#include "badlatt/svp.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace badlatt {

class Weights {
  public:
    explicit Weights(QVec r);
    static Weights equal(int n);  // (1/n, ..., 1/n)

    int n() const { return static_cast<int>(r_.size()); }
    const QVec& values() const { return r_; }
    const Rational& operator[](int i) const { return r_[i]; }

  private:
    QVec r_;
};

struct FlowConfig {
    Weights weights;
    long R;          // splitting rate, >= 2
    Rational eps;    // 0 < eps <= r_n / (3n)
    long m = 1;      // base scale of the threshold schedule
    long precision = kDefaultPrecision;

    FlowConfig(Weights w, long R_, Rational eps_, long m_ = 1, long prec = kDefaultPrecision);

    int n() const { return weights.n(); }
    int dim() const { return weights.n() + 1; }

    // beta = ln R / (1 + r_1) and beta' = ln R / (1 + 1/n) as enclosures.
    Interval beta(long prec) const;
    Interval beta_prime(long prec) const;

    // Exponent vectors c with entry_i = R^{c_i}:
    // a(beta * t_exponent) and b(beta' * l_exponent).
    QVec a_exponents(const Rational& t_exponent) const;
    QVec b_exponents(const Rational& l_exponent) const;

    // e^{-eps beta l} = R^{-eps l / (1+r_1)}; returned as the exact exponent.
    Rational removal_threshold_exponent(long l) const;
};

// Diagonal matrix diag(R^{exps_i}); exps must sum to zero (unimodularity).
struct DiagPow {
    long R;
    QVec exps;

    DiagPow(long R_, QVec e);
    int dim() const { return static_cast<int>(exps.size()); }
    DiagPow compose(const DiagPow& o) const;  // entrywise product
    std::optional<QMat> try_rational() const;
    IMat interval(long prec) const;
    // R^{2 exps_i} exactly rational for all i?  (Grams rationalize more often
    // than the matrices themselves.)
    std::optional<QVec> try_rational_squares() const;
};

DiagPow make_gtau(long R, QVec exps);

QMat make_u(const QVec& x);                 // first row (1, x), unipotent
IMat make_u(const IVec& x, long prec);
QMat make_u1(const QVec& y);                // second row (0, 1, y)
QMat make_z(const CurveModel& curve, const Rational& x);
IMat make_z(const CurveModel& curve, const Interval& x, long prec);

// z(x) u(phi(x)) — the rational (or interval) part of H.
QMat make_h0(const CurveModel& curve, const Rational& x);
IMat make_h0(const CurveModel& curve, const Interval& x, long prec);

// H_{l,q}(x) in factored form: diagonal power part times exact rational part.
struct HMatrix {
    DiagPow diag;
    QMat h0;

    std::optional<QMat> try_rational() const;
    IMat interval(long prec) const;
    // Gram matrix of the column lattice H Z^k, exact when R^{2 exps} are
    // rational even if H itself is irrational.
    std::optional<QMat> gram_exact() const;
    IMat gram_interval(long prec) const;
};

HMatrix make_H(const FlowConfig& cfg, const CurveModel& curve, long l, long q, const Rational& x);

// Interval version over a whole subinterval of the domain (interval mode).
IMat make_H_interval(const FlowConfig& cfg, const CurveModel& curve, long l, long q,
                     const Interval& x, long prec);

// Shortest-vector decision for an H lattice against the squared threshold
// R^{thr_exponent2}: Less means removal triggers.  Exact whenever the Gram
// rationalizes; otherwise interval with escalation up to the precision cap.
struct HSvpDecision {
    Cmp verdict;       // norm2 vs threshold^2; Indeterminate after escalation
    bool exact;        // decided by exact arithmetic
    ZVec witness;      // coefficients of the short vector (when found)
    double norm2_mid;  // diagnostic midpoint of the norm enclosure
};
HSvpDecision h_norm_vs_threshold(const HMatrix& H, const Rational& thr_exponent2, long start_prec);

// Lemma 2.3 conjugation identities, both sides evaluated independently.
struct ConjugationReport {
    // For the four interval identities: max |LHS - RHS| enclosure width and
    // whether every discrepancy enclosure contains zero.
    double max_width[4] = {0, 0, 0, 0};
    bool contains_zero[4] = {true, true, true, true};
    bool z_identity_exact = true;  // Eq. z u(phi') z^{-1} = u(e_1), rational path
    int samples = 0;
};
ConjugationReport check_conjugations(const FlowConfig& cfg, const CurveModel& curve, int samples,
                                     unsigned long seed);

// Lemma 3.5 wedge decomposition.
struct CaseA {
    QVec a;      // integer combination with ||a|| <= rho, |a_2| <= rho L^{-1/2}
    ZVec coeffs;
};
struct CaseB {
    QMulti w_im1;  // grade i-1, supported in W = span(e_2..e_{k})
    QMulti w_i;    // grade i, supported in W
};
using WedgeDecomposition = std::variant<CaseA, CaseB>;

// Precondition: ||u(Theta e_1)(a_1 ^ ... ^ a_i)||^2 <= rho^{2i} at Theta in
// {0, L}; checked exactly.  i = 1 always yields CaseA.
WedgeDecomposition wedge_decompose(const std::vector<QVec>& a_vectors, const Rational& rho,
                                   const Rational& L);

// Dani-correspondence trajectory: shortest-vector enclosures of
// a(t) u(point) Z^{n+1} along a grid of times.
struct OrbitSample {
    Rational t;
    Interval norm2;
    ZVec witness;
    bool indeterminate = false;
};
std::vector<OrbitSample> orbit_trajectory(const FlowConfig& cfg, const IVec& point,
                                          const std::vector<Rational>& t_grid);
std::vector<OrbitSample> orbit_trajectory(const FlowConfig& cfg, const QVec& point,
                                          const std::vector<Rational>& t_grid);

}  // namespace badlatt
