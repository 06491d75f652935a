#include "badlatt/flows.hpp"

#include <random>
#include <stdexcept>

namespace badlatt {

Weights::Weights(QVec r) : r_(std::move(r)) {
    if (r_.empty()) throw std::invalid_argument("Weights: empty");
    if (static_cast<int>(r_.size()) > kMaxAmbientDim)
        throw std::invalid_argument("Weights: dimension exceeds build-time cap");
    Rational sum(0);
    for (size_t i = 0; i < r_.size(); ++i) {
        if (r_[i] <= 0) throw std::invalid_argument("Weights: entries must be positive");
        if (i + 1 < r_.size() && r_[i] < r_[i + 1])
            throw std::invalid_argument("Weights: must be sorted descending");
        sum += r_[i];
    }
    if (sum != 1) throw std::invalid_argument("Weights: must sum to 1");
}

Weights Weights::equal(int n) {
    return Weights(QVec(n, Rational(1, n)));
}

FlowConfig::FlowConfig(Weights w, long R_, Rational eps_, long m_, long prec)
    : weights(std::move(w)), R(R_), eps(std::move(eps_)), m(m_), precision(prec) {
    if (R < 2) throw std::invalid_argument("FlowConfig: R must be >= 2");
    const int nn = weights.n();
    const Rational cap = weights[nn - 1] / Rational(3 * nn);
    if (eps <= 0 || eps > cap) throw std::invalid_argument("FlowConfig: eps out of (0, r_n/(3n)]");
    if (m < 1) throw std::invalid_argument("FlowConfig: m must be >= 1");
    if (precision < 16) throw std::invalid_argument("FlowConfig: precision too small");
    // r_1 >= 1/n guarantees beta <= beta'.
    if (weights[0] < Rational(1, nn)) throw std::logic_error("FlowConfig: r_1 < 1/n");
}

Interval FlowConfig::beta(long prec) const {
    const Interval lnR = log_iv(Interval::from_long(R, prec + 16));
    return lnR.scaled_q(Rational(1) / (Rational(1) + weights[0]));
}

Interval FlowConfig::beta_prime(long prec) const {
    const Interval lnR = log_iv(Interval::from_long(R, prec + 16));
    const int nn = n();
    return lnR.scaled_q(Rational(nn, nn + 1));
}

QVec FlowConfig::a_exponents(const Rational& t_exponent) const {
    const Rational f = t_exponent / (Rational(1) + weights[0]);
    QVec e;
    e.push_back(f);
    for (int i = 0; i < n(); ++i) e.push_back(-f * weights[i]);
    return e;
}

QVec FlowConfig::b_exponents(const Rational& l_exponent) const {
    const int nn = n();
    const Rational small = -l_exponent / Rational(nn + 1);
    const Rational big = l_exponent * Rational(nn, nn + 1);
    QVec e(nn + 1, small);
    e[1] = big;
    return e;
}

Rational FlowConfig::removal_threshold_exponent(long l) const {
    return -eps * Rational(l) / (Rational(1) + weights[0]);
}

DiagPow::DiagPow(long R_, QVec e) : R(R_), exps(std::move(e)) {
    Rational sum(0);
    for (const auto& x : exps) sum += x;
    if (sum != 0) throw std::invalid_argument("DiagPow: exponents must sum to zero");
}

DiagPow DiagPow::compose(const DiagPow& o) const {
    if (R != o.R || exps.size() != o.exps.size()) throw std::invalid_argument("DiagPow: mismatch");
    QVec e = exps;
    for (size_t i = 0; i < e.size(); ++i) e[i] += o.exps[i];
    return DiagPow(R, std::move(e));
}

std::optional<QMat> DiagPow::try_rational() const {
    const int k = dim();
    QMat d(k);
    for (int i = 0; i < k; ++i) {
        auto v = try_exact_pow(Rational(R), exps[i]);
        if (!v) return std::nullopt;
        d(i, i) = *v;
    }
    return d;
}

std::optional<QVec> DiagPow::try_rational_squares() const {
    QVec out;
    for (const auto& e : exps) {
        auto v = try_exact_pow(Rational(R), e * 2);
        if (!v) return std::nullopt;
        out.push_back(*v);
    }
    return out;
}

IMat DiagPow::interval(long prec) const {
    const int k = dim();
    IMat d(k, prec);
    for (int i = 0; i < k; ++i) d(i, i) = iv_exp_log_pow(Rational(R), exps[i], prec);
    return d;
}

DiagPow make_gtau(long R, QVec exps) { return DiagPow(R, std::move(exps)); }

QMat make_u(const QVec& x) {
    const int k = static_cast<int>(x.size()) + 1;
    QMat m = QMat::identity(k);
    for (int j = 1; j < k; ++j) m(0, j) = x[j - 1];
    return m;
}

IMat make_u(const IVec& x, long prec) {
    const int k = static_cast<int>(x.size()) + 1;
    IMat m = IMat::identity(k, prec);
    for (int j = 1; j < k; ++j) m(0, j) = x[j - 1];
    return m;
}

QMat make_u1(const QVec& y) {
    const int k = static_cast<int>(y.size()) + 2;
    QMat m = QMat::identity(k);
    for (int j = 2; j < k; ++j) m(1, j) = y[j - 2];
    return m;
}

QMat make_z(const CurveModel& curve, const Rational& x) {
    return make_u1(curve.eval_psi(x));
}

IMat make_z(const CurveModel& curve, const Interval& x, long prec) {
    const IVec psi = curve.eval_psi(x);
    const int k = static_cast<int>(psi.size()) + 2;
    IMat m = IMat::identity(k, prec);
    for (int j = 2; j < k; ++j) m(1, j) = psi[j - 2];
    return m;
}

QMat make_h0(const CurveModel& curve, const Rational& x) {
    return make_z(curve, x) * make_u(curve.eval(x));
}

IMat make_h0(const CurveModel& curve, const Interval& x, long prec) {
    return make_z(curve, x, prec) * make_u(curve.eval(x), prec);
}

std::optional<QMat> HMatrix::try_rational() const {
    auto d = diag.try_rational();
    if (!d) return std::nullopt;
    return *d * h0;
}

IMat HMatrix::interval(long prec) const {
    return diag.interval(prec) * to_interval(h0, prec);
}

std::optional<QMat> HMatrix::gram_exact() const {
    auto d2 = diag.try_rational_squares();
    if (!d2) return std::nullopt;
    const int k = h0.dim();
    QMat g(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Rational acc(0);
            for (int a = 0; a < k; ++a) acc += h0(a, i) * (*d2)[a] * h0(a, j);
            g(i, j) = acc;
        }
    return g;
}

IMat HMatrix::gram_interval(long prec) const {
    const int k = h0.dim();
    IVec d2;
    for (const auto& e : diag.exps) d2.push_back(iv_exp_log_pow(Rational(diag.R), e * 2, prec));
    IMat g(k, prec);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Interval acc(prec);
            for (int a = 0; a < k; ++a)
                acc = add(acc, mul(d2[a], Interval::from_rational(h0(a, i) * h0(a, j), prec)));
            g(i, j) = acc;
        }
    return g;
}

HMatrix make_H(const FlowConfig& cfg, const CurveModel& curve, long l, long q, const Rational& x) {
    const DiagPow diag(cfg.R,
                       [&] {
                           QVec b = cfg.b_exponents(Rational(l));
                           const QVec a = cfg.a_exponents(Rational(q + 1));
                           for (size_t i = 0; i < b.size(); ++i) b[i] += a[i];
                           return b;
                       }());
    return HMatrix{diag, make_h0(curve, x)};
}

IMat make_H_interval(const FlowConfig& cfg, const CurveModel& curve, long l, long q,
                     const Interval& x, long prec) {
    QVec e = cfg.b_exponents(Rational(l));
    const QVec a = cfg.a_exponents(Rational(q + 1));
    for (size_t i = 0; i < e.size(); ++i) e[i] += a[i];
    return DiagPow(cfg.R, std::move(e)).interval(prec) * make_h0(curve, x, prec);
}

HSvpDecision h_norm_vs_threshold(const HMatrix& H, const Rational& thr_exponent2, long start_prec) {
    if (auto gram = H.gram_exact()) {
        const SvpExactResult s = svp_gram_exact(*gram);
        // norm2 vs R^{thr_exponent2}: raise both to the exponent denominator.
        const Int& den = thr_exponent2.get_den();
        const Int& num = thr_exponent2.get_num();
        if (!den.fits_slong_p() || !num.fits_slong_p())
            throw std::invalid_argument("threshold exponent too large");
        const Cmp verdict =
            cmp_power(s.norm2, den.get_si(), Rational(H.diag.R), num.get_si());
        return {verdict, true, s.coeffs, s.norm2.get_d()};
    }
    const long cap = precision_cap();
    for (long prec = start_prec; prec <= cap; prec *= 2) {
        const IMat gram = H.gram_interval(prec);
        auto s = svp_gram_interval(gram);
        if (!s) continue;
        const Interval thr2 = iv_exp_log_pow(Rational(H.diag.R), thr_exponent2, prec);
        const Cmp verdict = s->norm2.compare(thr2);
        if (verdict != Cmp::Indeterminate)
            return {verdict, false, s->coeffs, s->norm2.mid_double()};
    }
    return {Cmp::Indeterminate, false, {}, 0.0};
}

namespace {

IMat diag_interval_of_exps(long R, const QVec& exps, long prec) {
    const int k = static_cast<int>(exps.size());
    IMat d(k, prec);
    for (int i = 0; i < k; ++i) d(i, i) = iv_exp_log_pow(Rational(R), exps[i], prec);
    return d;
}

double max_abs_width(const IMat& m) {
    double w = 0;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) w = std::max(w, m(i, j).width_double());
    return w;
}

bool all_contain_zero(const IMat& m) {
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            if (!m(i, j).contains_zero()) return false;
    return true;
}

}  // namespace

ConjugationReport check_conjugations(const FlowConfig& cfg, const CurveModel& curve, int samples,
                                     unsigned long seed) {
    ConjugationReport rep;
    rep.samples = samples;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-20, 20);
    std::uniform_int_distribution<int> den(1, 12);
    std::uniform_int_distribution<int> texp(1, 3);
    const int nn = cfg.n();
    const int k = nn + 1;
    const long prec = cfg.precision;

    auto rand_q = [&] { return make_rational(num(rng), den(rng)); };

    for (int s = 0; s < samples; ++s) {
        const Rational tau(texp(rng));  // t = tau * beta (or tau * beta')
        QVec x(nn), y(std::max(0, nn - 1));
        for (auto& v : x) v = rand_q();
        for (auto& v : y) v = rand_q();

        // a(t) u(x) a(-t) = u(e^{(1+r_i) t} x_i), t = tau beta
        {
            const QVec ae = cfg.a_exponents(tau);
            const IMat A = diag_interval_of_exps(cfg.R, ae, prec);
            QVec neg = ae;
            for (auto& v : neg) v = -v;
            const IMat Ainv = diag_interval_of_exps(cfg.R, neg, prec);
            const IMat lhs = A * make_u(to_interval(x, prec), prec) * Ainv;
            IVec scaled;
            const Rational f = tau / (Rational(1) + cfg.weights[0]);
            for (int i = 0; i < nn; ++i) {
                const Interval g =
                    iv_exp_log_pow(Rational(cfg.R), f * (Rational(1) + cfg.weights[i]), prec);
                scaled.push_back(g.scaled_q(x[i]));
            }
            const IMat rhs = make_u(scaled, prec);
            IMat diff(k, prec);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) diff(i, j) = sub(lhs(i, j), rhs(i, j));
            rep.max_width[0] = std::max(rep.max_width[0], max_abs_width(diff));
            rep.contains_zero[0] = rep.contains_zero[0] && all_contain_zero(diff);
        }

        // a(t) u1(y) a(-t) = u1(e^{(r_i - r_1) t} y_i)
        if (nn >= 2) {
            const QVec ae = cfg.a_exponents(tau);
            const IMat A = diag_interval_of_exps(cfg.R, ae, prec);
            QVec neg = ae;
            for (auto& v : neg) v = -v;
            const IMat Ainv = diag_interval_of_exps(cfg.R, neg, prec);
            const IMat lhs = A * to_interval(make_u1(y), prec) * Ainv;
            const Rational f = tau / (Rational(1) + cfg.weights[0]);
            IMat rhs = IMat::identity(k, prec);
            for (int j = 2; j < k; ++j) {
                const Interval g = iv_exp_log_pow(
                    Rational(cfg.R), f * (cfg.weights[j - 1] - cfg.weights[0]), prec);
                rhs(1, j) = g.scaled_q(y[j - 2]);
            }
            IMat diff(k, prec);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) diff(i, j) = sub(lhs(i, j), rhs(i, j));
            rep.max_width[1] = std::max(rep.max_width[1], max_abs_width(diff));
            rep.contains_zero[1] = rep.contains_zero[1] && all_contain_zero(diff);
        }

        // b(t) u(x) b(-t) = u(e^{-(1+1/n) t} x_1, x_2, ..., x_n), t = tau beta'
        {
            const QVec be = cfg.b_exponents(tau);
            const IMat B = diag_interval_of_exps(cfg.R, be, prec);
            QVec neg = be;
            for (auto& v : neg) v = -v;
            const IMat Binv = diag_interval_of_exps(cfg.R, neg, prec);
            const IMat lhs = B * make_u(to_interval(x, prec), prec) * Binv;
            IVec scaled = to_interval(x, prec);
            // e^{-(1+1/n) beta' tau} = R^{-tau}
            scaled[0] = iv_exp_log_pow(Rational(cfg.R), -tau, prec).scaled_q(x[0]);
            const IMat rhs = make_u(scaled, prec);
            IMat diff(k, prec);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) diff(i, j) = sub(lhs(i, j), rhs(i, j));
            rep.max_width[2] = std::max(rep.max_width[2], max_abs_width(diff));
            rep.contains_zero[2] = rep.contains_zero[2] && all_contain_zero(diff);
        }

        // b(t) u1(y) b(-t) = u1(e^{(1+1/n) t} y) = u1(R^tau y)
        if (nn >= 2) {
            const QVec be = cfg.b_exponents(tau);
            const IMat B = diag_interval_of_exps(cfg.R, be, prec);
            QVec neg = be;
            for (auto& v : neg) v = -v;
            const IMat Binv = diag_interval_of_exps(cfg.R, neg, prec);
            const IMat lhs = B * to_interval(make_u1(y), prec) * Binv;
            IMat rhs = IMat::identity(k, prec);
            const Interval g = iv_exp_log_pow(Rational(cfg.R), tau, prec);
            for (int j = 2; j < k; ++j) rhs(1, j) = g.scaled_q(y[j - 2]);
            IMat diff(k, prec);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) diff(i, j) = sub(lhs(i, j), rhs(i, j));
            rep.max_width[3] = std::max(rep.max_width[3], max_abs_width(diff));
            rep.contains_zero[3] = rep.contains_zero[3] && all_contain_zero(diff);
        }

        // z(x0) u(phi'(x0)) z(x0)^{-1} = u(e_1), exact rational path
        {
            std::uniform_int_distribution<int> dn(0, 100);
            const Rational x0 = cfg.weights.n() >= 1
                                    ? curve.dom_lo() + (curve.dom_hi() - curve.dom_lo()) *
                                                           Rational(dn(rng), 100)
                                    : Rational(0);
            const QMat z = make_z(curve, x0);
            QVec psi = curve.eval_psi(x0);
            for (auto& v : psi) v = -v;
            const QMat zinv = make_u1(psi);
            const QMat lhs = z * make_u(curve.eval_derivative(x0)) * zinv;
            QVec e1(nn, Rational(0));
            e1[0] = 1;
            const QMat rhs = make_u(e1);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    if (lhs(i, j) != rhs(i, j)) rep.z_identity_exact = false;
        }
    }
    return rep;
}

WedgeDecomposition wedge_decompose(const std::vector<QVec>& a_vectors, const Rational& rho,
                                   const Rational& L) {
    const int i = static_cast<int>(a_vectors.size());
    if (i < 1) throw std::invalid_argument("wedge_decompose: empty input");
    const int k = static_cast<int>(a_vectors[0].size());
    if (L < 1 || rho <= 0) throw std::invalid_argument("wedge_decompose: need L >= 1, rho > 0");

    const QMulti w = wedge_all(a_vectors, k);
    const Rational rho2 = rho * rho;
    const Rational a2_bound2 = rho2 / L;

    if (i == 1) {
        // The line lattice is generated by a_1 itself; the bounds must hold
        // whenever the caller honored the Theta-endpoint precondition.
        const QVec& a = a_vectors[0];
        if (norm2(a) > rho2 || a[1] * a[1] > a2_bound2)
            throw std::invalid_argument("wedge_decompose: precondition violated (i = 1)");
        return CaseA{a, ZVec{Int(1)}};
    }

    // Split of the wedge along membership of index 1 (0-based 0):
    // coordinates containing e_1 form e_1 ^ w^{(i-1)}, the rest form w^{(i)}.
    QMulti w_im1(k, i - 1);
    QMulti w_i(k, i);
    const IndexSets& is = index_sets(k, i);
    const IndexSets& is_m1 = index_sets(k, i - 1);
    for (int t = 0; t < is.count(); ++t) {
        const auto& I = is.set(t);
        if (I[0] == 0) {
            std::vector<int> rest(I.begin() + 1, I.end());
            // e_1 is the smallest index, so the merge sign is +1.
            w_im1.coord(is_m1.rank_of(IndexSets::mask_of(rest))) = w.coord(t);
        } else {
            w_i.coord(t) = w.coord(t);
        }
    }
    const Rational case_b_w_i_bound = Rational(16 * (k - 1)) * rat_pow(rho, 2 * i) / L;
    const bool case_b_bounds_hold =
        w_im1.norm_squared() <= rat_pow(rho, 2 * i) && w_i.norm_squared() <= case_b_w_i_bound;

    // A wedge already contained in ^i W decomposes as itself.
    if (w_im1.norm_squared() == 0 && case_b_bounds_hold) return CaseB{w_im1, w_i};

    // Case (a): search the span sublattice for a vector with ||a||^2 <= rho^2
    // and a_2^2 <= rho^2 / L.
    QMat gram(i);
    for (int p = 0; p < i; ++p)
        for (int q = 0; q < i; ++q) gram(p, q) = dot(a_vectors[p], a_vectors[q]);
    if (gram.det() > 0) {
        for (auto& [n2, coeffs] : enumerate_below(gram, rho2)) {
            QVec cand(k, Rational(0));
            for (int p = 0; p < i; ++p)
                for (int c = 0; c < k; ++c) cand[c] += Rational(coeffs[p]) * a_vectors[p][c];
            if (cand[1] * cand[1] <= a2_bound2) return CaseA{cand, coeffs};
        }
    }

    if (!case_b_bounds_hold)
        throw std::logic_error("wedge_decompose: neither case satisfies its bounds");
    return CaseB{w_im1, w_i};
}

namespace {

std::vector<OrbitSample> orbit_impl(const FlowConfig& cfg, const IVec& point,
                                    const std::vector<Rational>& t_grid) {
    const int k = cfg.dim();
    std::vector<OrbitSample> out;
    out.reserve(t_grid.size());
    for (const Rational& t : t_grid) {
        if (t < 0) throw std::invalid_argument("orbit_trajectory: t must be >= 0");
        OrbitSample s;
        s.t = t;
        const long cap = precision_cap();
        bool done = false;
        for (long prec = cfg.precision; prec <= cap && !done; prec *= 2) {
            IMat A(k, prec);
            const Interval tv = Interval::from_rational(t, prec);
            A(0, 0) = exp_iv(tv);
            for (int i = 1; i < k; ++i)
                A(i, i) = exp_iv(tv.scaled_q(-cfg.weights[i - 1]));
            IVec pt;
            pt.reserve(point.size());
            for (const auto& c : point) pt.push_back(c);  // precision carried by ops
            const IMat M = A * make_u(pt, prec);
            if (auto res = shortest_vector(M)) {
                s.norm2 = res->norm2;
                s.witness = res->coeffs;
                done = true;
            }
        }
        s.indeterminate = !done;
        if (!done) s.norm2 = Interval::entire(cfg.precision);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

std::vector<OrbitSample> orbit_trajectory(const FlowConfig& cfg, const IVec& point,
                                          const std::vector<Rational>& t_grid) {
    return orbit_impl(cfg, point, t_grid);
}

std::vector<OrbitSample> orbit_trajectory(const FlowConfig& cfg, const QVec& point,
                                          const std::vector<Rational>& t_grid) {
    return orbit_impl(cfg, to_interval(point, cfg.precision), t_grid);
}

}  // namespace badlatt
