#include "badlatt/qnd.hpp"

#include "badlatt/intlattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace badlatt {

void QndExperiment::validate() const {
    if (J_lo >= J_hi) throw std::invalid_argument("qnd: empty J");
    if (static_cast<int>(tau_exps.size()) != curve.n() + 1)
        throw std::invalid_argument("qnd: tau must have n+1 entries");
    Rational sum(0);
    for (const auto& t : tau_exps) sum += t;
    if (sum != 0) throw std::invalid_argument("qnd: tau must sum to zero");
    if (delta_grid.empty()) throw std::invalid_argument("qnd: empty delta grid");
    for (const auto& d : delta_grid)
        if (d <= 0) throw std::invalid_argument("qnd: deltas must be positive");
    if (cylinder_depth < 1 || cylinder_depth > 20)
        throw std::invalid_argument("qnd: cylinder depth out of range");
}

bool QndExperiment::global_regime() const {
    if (tau_exps[0] <= 0) return false;
    for (size_t i = 2; i < tau_exps.size(); ++i)
        if (tau_exps[i] >= 0) return false;
    return true;
}

namespace {

struct Cell {
    Rational lo, hi;
    Rational mass;
};

// Decomposition of J into measure cells at the requested depth: allowed
// digit cylinders for Cantor measures, a uniform dyadic grid for Lebesgue.
std::vector<Cell> cells_of(const FractalMeasure& mu, const Rational& J_lo, const Rational& J_hi,
                           int depth) {
    std::vector<Cell> out;
    if (mu.kind() == FractalMeasure::Kind::Lebesgue) {
        const long n = 1L << std::min(depth, 20);
        const Rational len = (J_hi - J_lo) / n;
        for (long i = 0; i < n; ++i) {
            Cell c{J_lo + len * i, J_lo + len * (i + 1), Rational(0)};
            c.mass = mu.measure_interval(c.lo, c.hi);
            if (c.mass > 0) out.push_back(std::move(c));
        }
        return out;
    }
    // Depth-first over allowed cylinders, pruning those missing J or the
    // support mass.
    struct Node {
        Rational lo;
        int depth;
    };
    std::vector<Node> stack{{Rational(0), 0}};
    while (!stack.empty()) {
        const Node nd = stack.back();
        stack.pop_back();
        const Rational len = rat_pow(Rational(mu.base()), -nd.depth);
        const Rational a = std::max(J_lo, nd.lo), b = std::min(J_hi, Rational(nd.lo + len));
        if (a >= b) continue;
        const Rational mass = mu.measure_interval(a, b);
        if (mass <= 0) continue;
        if (nd.depth == depth) {
            out.push_back({a, b, mass});
            continue;
        }
        const Rational clen = len / mu.base();
        for (auto it = mu.digits().rbegin(); it != mu.digits().rend(); ++it)
            stack.push_back({nd.lo + Rational(*it) * clen, nd.depth + 1});
    }
    std::sort(out.begin(), out.end(), [](const Cell& x, const Cell& y) { return x.lo < y.lo; });
    return out;
}

// Gram matrix of the column lattice of g_tau z(x) u(phi(x)) as exact
// polynomials in x, available whenever the squared diagonal rationalizes.
// Doing the algebra symbolically keeps the structural cancellations (the
// determinant is identically one) that per-entry interval evaluation loses.
struct SymbolicGram {
    bool ok = false;
    std::vector<std::vector<QPoly>> g;  // k x k, entries polynomials in x
};

SymbolicGram symbolic_gram(const CurveModel& curve, const DiagPow& diag) {
    SymbolicGram out;
    const auto d2 = diag.try_rational_squares();
    if (!d2) return out;
    const int k = curve.n() + 1;
    // Rows of h0 = z(x) u(phi(x)): phi~, phi~', then standard basis rows.
    std::vector<std::vector<QPoly>> row(k, std::vector<QPoly>(k));
    QPoly one, ident;
    one.coeffs = {Rational(1)};
    ident.coeffs = {Rational(0), Rational(1)};
    row[0][0] = one;
    row[0][1] = ident;
    for (int j = 2; j < k; ++j) row[0][j] = curve.component(j - 1);
    if (k >= 2) {
        row[1][1] = one;
        for (int j = 2; j < k; ++j) row[1][j] = curve.component(j - 1).derivative();
    }
    for (int i = 2; i < k; ++i) row[i][i] = one;

    out.g.assign(k, std::vector<QPoly>(k));
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
            QPoly acc;
            for (int a = 0; a < k; ++a)
                poly_add_scaled(acc, (*d2)[a], poly_mul(row[a][i], row[a][j]));
            out.g[i][j] = acc;
            out.g[j][i] = acc;
        }
    out.ok = true;
    return out;
}

// Enclosure SVP over one cell via the symbolic Gram: LLL-reduce exactly at
// the cell midpoint, transform the polynomial Gram, then evaluate.
std::optional<SvpIntervalResult> svp_symbolic_cell(const SymbolicGram& sym, const Rational& lo,
                                                   const Rational& hi, long prec) {
    const int k = static_cast<int>(sym.g.size());
    const Rational mid = (lo + hi) / 2;
    QMat gm(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) gm(i, j) = sym.g[i][j].eval(mid);
    std::vector<ZVec> u;
    try {
        u = lll_transform(gm);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    // g' = U^T g U as polynomials (exact), then interval-evaluate.
    std::vector<std::vector<QPoly>> gt(k, std::vector<QPoly>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            QPoly acc;
            for (int a = 0; a < k; ++a) {
                if (u[a][i] == 0) continue;
                for (int b = 0; b < k; ++b) {
                    if (u[b][j] == 0) continue;
                    poly_add_scaled(acc, Rational(u[a][i] * u[b][j]), sym.g[a][b]);
                }
            }
            gt[i][j] = acc;
        }
    IMat giv(k, prec);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) giv(i, j) = poly_eval_centered(gt[i][j], lo, hi, prec);
    auto res = svp_gram_interval(giv);
    if (!res) return res;
    // Coefficients back in the original basis.
    ZVec coeffs(k, Int(0));
    for (int a = 0; a < k; ++a)
        for (int i = 0; i < k; ++i) coeffs[a] += u[a][i] * res->coeffs[i];
    res->coeffs = std::move(coeffs);
    return res;
}

}  // namespace

WMassResult measure_W(const QndExperiment& exp, bool parallel) {
    exp.validate();
    const std::vector<Cell> cells = cells_of(exp.mu, exp.J_lo, exp.J_hi, exp.cylinder_depth);
    const DiagPow g(exp.R, exp.tau_exps);
    std::vector<Rational> deltas = exp.delta_grid;
    std::sort(deltas.begin(), deltas.end());

    // Per-cell shortest-vector enclosure, reused across the delta grid.
    // The symbolic-Gram route keeps exact cancellations; otherwise escalate
    // the working precision a couple of rounds while any delta comparison
    // stays unresolved (beyond that the cell width dominates and only a
    // deeper cylinder_depth helps).
    const SymbolicGram sym = symbolic_gram(exp.curve, g);
    std::vector<Interval> norm2(cells.size(), Interval(exp.precision));
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long i = 0; i < static_cast<long>(cells.size()); ++i) {
        long prec = exp.precision;
        for (int round = 0; round < 3; ++round, prec *= 2) {
            auto s = sym.ok ? svp_symbolic_cell(sym, cells[i].lo, cells[i].hi, prec)
                            : std::optional<SvpIntervalResult>{};
            if (!s) {
                const Interval x = Interval::from_endpoints(cells[i].lo, cells[i].hi, prec);
                const IMat M = g.interval(prec) * make_h0(exp.curve, x, prec);
                s = shortest_vector(M);
            }
            if (!s) continue;
            norm2[i] = s->norm2;
            bool all_resolved = true;
            for (const Rational& d : deltas)
                all_resolved &= (s->norm2.compare(d * d) != Cmp::Indeterminate);
            if (all_resolved) break;
        }
    }

    WMassResult res;
    res.total_mass = 0;
    for (const auto& c : cells) res.total_mass += c.mass;
    res.undecided = 0;
    for (const Rational& d : deltas) {
        WMassRow row;
        row.delta = d;
        row.mass_lo = 0;
        Rational gap(0);
        const Rational d2 = d * d;
        for (size_t i = 0; i < cells.size(); ++i) {
            switch (norm2[i].compare(d2)) {
                case Cmp::Less: row.mass_lo += cells[i].mass; break;  // whole cell escapes K_delta
                case Cmp::Greater: break;
                case Cmp::Equal: break;  // norm == delta: inside K_delta
                default: gap += cells[i].mass; break;
            }
        }
        row.mass_hi = row.mass_lo + gap;
        res.undecided = std::max(res.undecided, gap);
        res.rows.push_back(std::move(row));
    }
    if (res.total_mass > 0)
        res.depth_ok = res.undecided * 20 < res.total_mass;  // bracket below 5%
    return res;
}

std::string WMassResult::to_csv() const {
    std::ostringstream os;
    os << "delta,mass_lo,mass_hi\n";
    for (const auto& r : rows)
        os << rat_to_string(r.delta) << "," << rat_to_string(r.mass_lo) << ","
           << rat_to_string(r.mass_hi) << "\n";
    return os.str();
}

DecayFit fit_decay(const std::vector<WMassRow>& rows) {
    std::vector<double> xs, ys;
    for (const auto& r : rows) {
        const double m = (r.mass_lo.get_d() + r.mass_hi.get_d()) / 2;
        if (m > 0) {
            xs.push_back(std::log(r.delta.get_d()));
            ys.push_back(std::log(m));
        }
    }
    if (xs.size() < 4) throw std::invalid_argument("fit_decay: degenerate grid");
    const size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double det = n * sxx - sx * sx;
    DecayFit fit;
    if (std::abs(det) < 1e-12) throw std::invalid_argument("fit_decay: degenerate grid");
    fit.gamma_hat = (n * sxy - sx * sy) / det;
    fit.log_M_hat = (sy - fit.gamma_hat * sx) / n;
    double ss = 0;
    for (size_t i = 0; i < n; ++i) {
        const double e = ys[i] - (fit.gamma_hat * xs[i] + fit.log_M_hat);
        ss += e * e;
    }
    fit.residual_rms = std::sqrt(ss / n);
    fit.consistent = fit.gamma_hat > 0.05;
    return fit;
}

GoodFunProfile good_function_profile(const QPoly& f, const FractalMeasure& mu, const Rational& B_lo,
                                     const Rational& B_hi, const std::vector<Rational>& eps_grid,
                                     int cylinder_depth) {
    if (f.is_zero()) throw std::invalid_argument("good_function_profile: zero function");
    const std::vector<Cell> cells = cells_of(mu, B_lo, B_hi, cylinder_depth);
    if (cells.empty()) throw std::invalid_argument("good_function_profile: B carries no mass");
    const long prec = 128;

    GoodFunProfile prof;
    // |f| enclosure per mass cell, and the mu-restricted sup norm.
    std::vector<Interval> absf;
    absf.reserve(cells.size());
    prof.norm_mu_lo = 0;
    prof.norm_mu_hi = 0;
    for (const auto& c : cells) {
        const Interval v = poly_eval_centered(f, c.lo, c.hi, prec).abs();
        absf.push_back(v);
        mpq_t tmp;
        mpq_init(tmp);
        mpfr_get_q(tmp, v.hi().get());
        const Rational hi{mpq_class(tmp)};
        mpq_clear(tmp);
        prof.norm_mu_hi = std::max(prof.norm_mu_hi, hi);
        // Certified lower bound: |f| at a support point of the cell.
        const auto sp = mu.supp_point_inside(c.lo, c.hi);
        if (sp) {
            Rational fv = f.eval(*sp);
            if (fv < 0) fv = -fv;
            prof.norm_mu_lo = std::max(prof.norm_mu_lo, fv);
        }
    }
    // Full sup norm over B via the polynomial bound machinery.
    const SupBound sb = sup_abs_poly(f, B_lo, B_hi);
    prof.norm_sup_lo = sb.lo;
    prof.norm_sup_hi = sb.hi;

    Rational total(0);
    for (const auto& c : cells) total += c.mass;
    std::vector<Rational> eps = eps_grid;
    std::sort(eps.begin(), eps.end());
    for (const Rational& e : eps) {
        GoodFunRow row;
        row.eps = e;
        row.mass_lo = 0;
        Rational gap(0);
        for (size_t i = 0; i < cells.size(); ++i) {
            switch (absf[i].compare(e)) {
                case Cmp::Less: row.mass_lo += cells[i].mass; break;
                case Cmp::Greater: break;
                case Cmp::Equal: break;  // |f| == eps is not < eps
                default: gap += cells[i].mass; break;
            }
        }
        row.mass_hi = row.mass_lo + gap;
        prof.rows.push_back(std::move(row));
    }

    // Fits of log-mass against log(eps / norm) for both normalizations.
    auto fit_against = [&](const Rational& norm) {
        std::vector<WMassRow> rows;
        for (const auto& r : prof.rows)
            rows.push_back({norm > 0 ? Rational(r.eps / norm) : r.eps, r.mass_lo, r.mass_hi});
        return fit_decay(rows);
    };
    prof.fit_mu = fit_against(prof.norm_mu_hi);
    prof.fit_sup = fit_against(prof.norm_sup_hi);
    return prof;
}

SupBound sup_abs_poly(const QPoly& p, const Rational& lo, const Rational& hi,
                      const Rational& rel_tol, int max_segments) {
    if (lo >= hi) throw std::invalid_argument("sup_abs_poly: empty interval");
    struct Seg {
        Rational lo, hi;
        Rational ub;  // upper end of |p| enclosure
    };
    const long prec = 192;
    auto eval_seg = [&](const Rational& a, const Rational& b) {
        const Interval v = poly_eval_centered(p, a, b, prec).abs();
        mpq_t tmp;
        mpq_init(tmp);
        mpfr_get_q(tmp, v.hi().get());
        Rational ub{mpq_class(tmp)};
        mpq_clear(tmp);
        return ub;
    };
    auto point_abs = [&](const Rational& x) {
        Rational v = p.eval(x);
        return v < 0 ? Rational(-v) : v;
    };

    std::vector<Seg> segs{{lo, hi, eval_seg(lo, hi)}};
    Rational best_lo = std::max(point_abs(lo), std::max(point_abs(hi), point_abs((lo + hi) / 2)));
    SupBound out;
    for (int rounds = 0; rounds < max_segments; ++rounds) {
        size_t arg = 0;
        for (size_t i = 1; i < segs.size(); ++i)
            if (segs[i].ub > segs[arg].ub) arg = i;
        const Rational global_ub = segs[arg].ub;
        if (global_ub <= best_lo + best_lo * rel_tol && best_lo > 0) {
            out.lo = best_lo;
            out.hi = global_ub;
            out.converged = true;
            return out;
        }
        const Seg s = segs[arg];
        segs.erase(segs.begin() + static_cast<long>(arg));
        const Rational mid = (s.lo + s.hi) / 2;
        best_lo = std::max(best_lo, point_abs(mid));
        segs.push_back({s.lo, mid, eval_seg(s.lo, mid)});
        segs.push_back({mid, s.hi, eval_seg(mid, s.hi)});
    }
    Rational ub(0);
    for (const auto& s : segs) ub = std::max(ub, s.ub);
    out.lo = best_lo;
    out.hi = ub;
    out.converged = false;
    return out;
}

SupBound sup_coordinate_grade1(const CurveModel& curve, const ZVec& v, const Rational& lo,
                               const Rational& hi) {
    bool zero = true;
    for (const auto& c : v) zero &= (c == 0);
    if (zero) throw std::invalid_argument("sup_coordinate_grade1: zero vector");
    // phi~ . v as a polynomial.
    QPoly p;
    p.coeffs = {Rational(v[0])};
    {
        // + v_1 x
        p.coeffs.push_back(Rational(v[1]));
        for (int i = 2; i <= curve.n(); ++i) {
            const QPoly& comp = curve.component(i - 1);
            if (comp.coeffs.size() > p.coeffs.size()) p.coeffs.resize(comp.coeffs.size(), Rational(0));
            for (size_t j = 0; j < comp.coeffs.size(); ++j) p.coeffs[j] += Rational(v[i]) * comp.coeffs[j];
        }
    }
    return sup_abs_poly(p, lo, hi);
}

SupBound sup_coordinate_grade2(const CurveModel& curve, const ZVec& a, const ZVec& b,
                               const Rational& lo, const Rational& hi) {
    const QPoly w = curve.wronskian_poly(a, b);
    if (w.is_zero()) throw std::invalid_argument("sup_coordinate_grade2: a ^ b pairs to zero");
    return sup_abs_poly(w, lo, hi);
}

MainPropInstance mainprop_instance(const IntCollection& v) {
    const int k = v.ambient;
    const int r = v.size();
    if (r < 2 || r > k - 1) throw std::invalid_argument("mainprop_instance: need 2 <= r <= n");
    const IntCollection dual = primitive_dual(v);

    // Choose i_3 < ... < i_r from {3..k} (1-based) with
    // e_{i_3} ^ ... ^ e_{i_r} ^ u_1 ^ ... ^ u_{k-r} nonzero.
    const int extra = r - 2;
    std::vector<int> pick(extra);
    std::vector<int> pool;
    for (int i = 2; i < k; ++i) pool.push_back(i);  // 0-based indices >= 2

    std::vector<QVec> duals = dual.rational_rows();
    MainPropInstance inst;
    auto try_pick = [&](const std::vector<int>& sel) -> bool {
        std::vector<QVec> vectors;
        for (int i : sel) {
            QVec e(k, Rational(0));
            e[i] = 1;
            vectors.push_back(std::move(e));
        }
        for (const auto& u : duals) vectors.push_back(u);
        const QMulti w = wedge_all(vectors, k);
        bool zero = true;
        for (int t = 0; t < w.coord_count(); ++t) zero &= (w.coord(t) == 0);
        if (zero) return false;
        const QMulti star = hodge_dual(w);
        const auto [a, b] = bivector_decompose(star);
        inst.index_set = {0, 1};
        for (int i : sel) inst.index_set.push_back(i);
        inst.a = a;
        inst.b = b;
        return true;
    };

    // Iterate subsets of the pool of size `extra` (tiny: k <= 6).
    std::vector<int> sel;
    auto rec = [&](auto&& self, size_t start) -> bool {
        if (static_cast<int>(sel.size()) == extra) return try_pick(sel);
        for (size_t i = start; i < pool.size(); ++i) {
            sel.push_back(pool[i]);
            if (self(self, i + 1)) return true;
            sel.pop_back();
        }
        return false;
    };
    if (!rec(rec, 0)) throw std::logic_error("mainprop_instance: no admissible multi-index");
    return inst;
}

bool check_mainprop_identity(const CurveModel& curve, const IntCollection& v, long R,
                             const QVec& tau_exps, const Rational& x) {
    const int k = v.ambient;
    const MainPropInstance inst = mainprop_instance(v);

    // Exact factor R^{sum_{i in I} tau_i}; the check requires it rational.
    Rational exp_sum(0);
    for (int i : inst.index_set) exp_sum += tau_exps[i];
    const auto factor = try_exact_pow(Rational(R), exp_sum);
    if (!factor) throw std::invalid_argument("check_mainprop_identity: factor not rational");

    // Left side: the e_I coordinate of g_tau H0(x) v_1 ^ ... ^ v_r.
    const QMat h0 = make_h0(curve, x);
    const DiagPow g(R, tau_exps);
    const auto gq = g.try_rational();
    if (!gq) throw std::invalid_argument("check_mainprop_identity: tau does not rationalize");
    const QMat H = *gq * h0;
    std::vector<QVec> images;
    for (const auto& vec : v.vectors) images.push_back(H.apply(to_rational(vec)));
    const QMulti wedge_img = wedge_all(images, k);
    const IndexSets& is = index_sets(k, v.size());
    Rational lhs = wedge_img.coord(is.rank_of(IndexSets::mask_of(inst.index_set)));
    if (lhs < 0) lhs = -lhs;

    // Right side: R^{sum tau_I} |(phi~ ^ phi~') . (a ^ b)|.
    Rational pairing = curve.wronskian_pair(inst.a, inst.b, x);
    if (pairing < 0) pairing = -pairing;
    const Rational rhs = *factor * pairing;
    return lhs == rhs;
}

}  // namespace badlatt
