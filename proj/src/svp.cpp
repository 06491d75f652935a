#include "badlatt/svp.hpp"

#include <cmath>
#include <stdexcept>

namespace badlatt {

namespace {

// Exact Gram-Schmidt data computed from a Gram matrix: mu[i][j] for j < i and
// squared norms r[i] of the orthogonalized vectors.
struct GsoQ {
    std::vector<std::vector<Rational>> mu;
    std::vector<Rational> r;
};

GsoQ gso_exact(const QMat& g) {
    const int k = g.dim();
    GsoQ out;
    out.mu.assign(k, std::vector<Rational>(k, Rational(0)));
    out.r.assign(k, Rational(0));
    std::vector<std::vector<Rational>> s(k, std::vector<Rational>(k, Rational(0)));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j <= i; ++j) {
            Rational acc = g(i, j);
            for (int l = 0; l < j; ++l) acc -= out.mu[j][l] * s[i][l];
            s[i][j] = acc;
            if (j < i) {
                if (out.r[j] == 0) throw std::domain_error("svp: Gram not positive definite");
                out.mu[i][j] = acc / out.r[j];
            }
        }
        out.r[i] = s[i][i];
        if (out.r[i] <= 0) throw std::domain_error("svp: Gram not positive definite");
    }
    return out;
}

// Upper bound on sqrt(t) for rational t >= 0 (floor-isqrt bracket).
Rational sqrt_upper(const Rational& t) {
    if (t < 0) throw std::domain_error("sqrt_upper: negative");
    Int pq = t.get_num() * t.get_den();
    Int u;
    mpz_sqrt(u.get_mpz_t(), pq.get_mpz_t());
    return make_rational(u + 1, t.get_den());
}

struct ExactEnum {
    int k;
    const GsoQ& gso;
    Rational bound;
    ZVec x;
    ZVec best;
    Rational best_val;
    bool found = false;

    explicit ExactEnum(int k_, const GsoQ& g, Rational b) : k(k_), gso(g), bound(std::move(b)) {
        x.assign(k, Int(0));
    }

    void run() { descend(k - 1, Rational(0), true); }

    void descend(int i, const Rational& partial, bool tail_zero) {
        if (i < 0) {
            if (tail_zero) return;  // zero vector
            if (!found || partial < best_val) {
                found = true;
                best_val = partial;
                best = x;
                if (partial < bound) bound = partial;
            }
            return;
        }
        Rational c(0);
        for (int j = i + 1; j < k; ++j)
            if (x[j] != 0) c += gso.mu[j][i] * Rational(x[j]);
        Rational budget = bound - partial;
        if (budget < 0) return;
        const Rational s_hi = sqrt_upper(budget / gso.r[i]);
        Int lo = rat_ceil(-c - s_hi);
        const Int hi = rat_floor(-c + s_hi);
        if (tail_zero && lo < 0) lo = 0;
        for (Int xv = lo; xv <= hi; ++xv) {
            const Rational y = Rational(xv) + c;
            const Rational term = gso.r[i] * y * y;
            const Rational next = partial + term;
            if (next > bound) continue;  // parabola tails outside the ball
            x[i] = xv;
            descend(i - 1, next, tail_zero && xv == 0);
        }
        x[i] = 0;
    }
};

using ZMat = std::vector<ZVec>;

QMat transformed_gram(const QMat& g, const ZMat& u) {
    const int k = g.dim();
    QMat out(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Rational acc(0);
            for (int a = 0; a < k; ++a) {
                if (u[a][i] == 0) continue;
                Rational row(0);
                for (int b = 0; b < k; ++b)
                    if (u[b][j] != 0) row += g(a, b) * Rational(u[b][j]);
                acc += Rational(u[a][i]) * row;
            }
            out(i, j) = acc;
        }
    return out;
}

ZVec apply_transform(const ZMat& u, const ZVec& coeffs) {
    const size_t k = u.size();
    ZVec out(k, Int(0));
    for (size_t a = 0; a < k; ++a)
        for (size_t i = 0; i < k; ++i) out[a] += u[a][i] * coeffs[i];
    return out;
}

}  // namespace

std::vector<ZVec> lll_transform(const QMat& gram) {
    const int k = gram.dim();
    ZMat u(k, ZVec(k, Int(0)));
    for (int i = 0; i < k; ++i) u[i][i] = 1;
    if (k < 2) return u;
    const Rational delta(3, 4);

    int kk = 1;
    int guard = 0;
    while (kk < k && ++guard < 10000) {
        QMat g = transformed_gram(gram, u);
        GsoQ gso = gso_exact(g);
        // Size-reduce column kk.
        bool changed = false;
        for (int j = kk - 1; j >= 0; --j) {
            const Int q = rat_round(gso.mu[kk][j]);
            if (q == 0) continue;
            for (int a = 0; a < k; ++a) u[a][kk] -= q * u[a][j];
            changed = true;
        }
        if (changed) {
            g = transformed_gram(gram, u);
            gso = gso_exact(g);
        }
        if (gso.r[kk] >= (delta - gso.mu[kk][kk - 1] * gso.mu[kk][kk - 1]) * gso.r[kk - 1]) {
            ++kk;
        } else {
            for (int a = 0; a < k; ++a) std::swap(u[a][kk], u[a][kk - 1]);
            kk = std::max(1, kk - 1);
        }
    }
    return u;
}

namespace {

// Gauss (Lagrange) reduction: the exact shortest vector of a 2x2 Gram in a
// handful of rational operations.
std::optional<SvpExactResult> svp_gram_exact_dim2(const QMat& gram) {
    Rational A = gram(0, 0), B = gram(0, 1), C = gram(1, 1);
    if (A <= 0 || C <= 0) throw std::domain_error("svp: Gram not positive definite");
    // Columns of T are the current basis in terms of the original one.
    Int t00(1), t01(0), t10(0), t11(1);
    bool reduced = false;
    for (int guard = 0; guard < 10000 && !reduced; ++guard) {
        if (A < C) {
            std::swap(A, C);
            std::swap(t00, t01);
            std::swap(t10, t11);
        }
        const Int q = rat_round(B / C);
        if (q == 0) {
            reduced = true;
            break;
        }
        // u <- u - q v
        const Rational qq(q);
        const Rational A2 = A - 2 * qq * B + qq * qq * C;
        B = B - qq * C;
        A = A2;
        t00 -= q * t01;
        t10 -= q * t11;
        reduced = A >= C && 2 * B <= C && 2 * B >= -C;
    }
    if (!reduced) return std::nullopt;  // fall back to the general path
    if (A < C) {
        std::swap(A, C);
        std::swap(t00, t01);
        std::swap(t10, t11);
    }
    return SvpExactResult{C, {t01, t11}};
}

}  // namespace

SvpExactResult svp_gram_exact(const QMat& gram) {
    const int k = gram.dim();
    if (k < 1) throw std::invalid_argument("svp: empty");
    if (k == 2) {
        if (auto fast = svp_gram_exact_dim2(gram)) return *fast;
    }
    const ZMat u = lll_transform(gram);
    const QMat g = transformed_gram(gram, u);
    const GsoQ gso = gso_exact(g);
    Rational bound = g(0, 0);
    for (int i = 1; i < k; ++i)
        if (g(i, i) < bound) bound = g(i, i);
    ExactEnum en(k, gso, bound);
    en.run();
    if (!en.found) throw std::logic_error("svp: enumeration found nothing");
    return {en.best_val, apply_transform(u, en.best)};
}

std::vector<std::pair<Rational, ZVec>> enumerate_below(const QMat& gram, const Rational& bound) {
    const int k = gram.dim();
    const GsoQ gso = gso_exact(gram);
    std::vector<std::pair<Rational, ZVec>> out;
    ZVec x(k, Int(0));
    auto descend = [&](auto&& self, int i, const Rational& partial, bool tail_zero) -> void {
        if (i < 0) {
            if (!tail_zero) out.emplace_back(partial, x);
            return;
        }
        Rational c(0);
        for (int j = i + 1; j < k; ++j)
            if (x[j] != 0) c += gso.mu[j][i] * Rational(x[j]);
        const Rational budget = bound - partial;
        if (budget < 0) return;
        const Rational s_hi = sqrt_upper(budget / gso.r[i]);
        Int lo = rat_ceil(-c - s_hi);
        const Int hi = rat_floor(-c + s_hi);
        if (tail_zero && lo < 0) lo = 0;
        for (Int xv = lo; xv <= hi; ++xv) {
            const Rational y = Rational(xv) + c;
            const Rational next = partial + gso.r[i] * y * y;
            if (next > bound) continue;
            x[i] = xv;
            self(self, i - 1, next, tail_zero && xv == 0);
        }
        x[i] = 0;
    };
    descend(descend, k - 1, Rational(0), true);
    return out;
}

namespace {

struct GsoI {
    std::vector<std::vector<Interval>> mu;
    std::vector<Interval> r;
    bool ok = false;
};

GsoI gso_interval(const IMat& g) {
    const int k = g.dim();
    const long prec = k > 0 ? g(0, 0).prec() : kDefaultPrecision;
    GsoI out;
    out.mu.assign(k, std::vector<Interval>(k, Interval(prec)));
    out.r.assign(k, Interval(prec));
    std::vector<std::vector<Interval>> s(k, std::vector<Interval>(k, Interval(prec)));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j <= i; ++j) {
            Interval acc = g(i, j);
            for (int l = 0; l < j; ++l) acc = sub(acc, mul(out.mu[j][l], s[i][l]));
            s[i][j] = acc;
            if (j < i) out.mu[i][j] = div(acc, out.r[j]);
        }
        out.r[i] = s[i][i];
        if (!out.r[i].definitely_positive()) return out;  // ok stays false
    }
    out.ok = true;
    return out;
}

struct IvEnum {
    int k;
    long prec;
    const GsoI& gso;
    MpFloat bound;      // certified upper bound for every member lattice
    MpFloat result_lo;  // min of leaf lower ends
    MpFloat result_hi;  // min of leaf upper ends
    ZVec x, best;
    bool found = false;
    long nodes = 0;
    bool overflow = false;
    static constexpr long kNodeLimit = 500000;

    IvEnum(int k_, long prec_, const GsoI& g)
        : k(k_), prec(prec_), gso(g), bound(prec_), result_lo(prec_), result_hi(prec_) {
        x.assign(k, Int(0));
        mpfr_set_inf(result_lo.get(), 1);
        mpfr_set_inf(result_hi.get(), 1);
    }

    void descend(int i, const Interval& partial, bool tail_zero) {
        if (overflow || ++nodes > kNodeLimit) {
            overflow = true;
            return;
        }
        if (i < 0) {
            if (tail_zero) return;
            if (mpfr_cmp(partial.lo().get(), result_lo.get()) < 0)
                mpfr_set(result_lo.get(), partial.lo().get(), MPFR_RNDD);
            if (mpfr_cmp(partial.hi().get(), result_hi.get()) < 0) {
                mpfr_set(result_hi.get(), partial.hi().get(), MPFR_RNDU);
                best = x;
                found = true;
            }
            if (mpfr_cmp(partial.hi().get(), bound.get()) < 0)
                mpfr_set(bound.get(), partial.hi().get(), MPFR_RNDU);
            return;
        }
        Interval c(prec);
        for (int j = i + 1; j < k; ++j)
            if (x[j] != 0) {
                Interval xj = Interval::from_long(x[j].get_si(), prec);
                c = add(c, mul(gso.mu[j][i], xj));
            }
        // budget upper bound: bound - partial.lo
        MpFloat budget(prec);
        mpfr_sub(budget.get(), bound.get(), partial.lo().get(), MPFR_RNDU);
        if (mpfr_sgn(budget.get()) < 0) return;
        // s_hi >= sqrt(budget / r_i) for every member
        MpFloat shi(prec);
        mpfr_div(shi.get(), budget.get(), gso.r[i].lo().get(), MPFR_RNDU);
        mpfr_sqrt(shi.get(), shi.get(), MPFR_RNDU);
        MpFloat lo_f(prec), hi_f(prec);
        // lo = ceil(-c.hi - shi), computed outward
        mpfr_add(lo_f.get(), c.hi().get(), shi.get(), MPFR_RNDU);
        mpfr_neg(lo_f.get(), lo_f.get(), MPFR_RNDD);
        mpfr_ceil(lo_f.get(), lo_f.get());
        mpfr_sub(hi_f.get(), shi.get(), c.lo().get(), MPFR_RNDU);
        mpfr_floor(hi_f.get(), hi_f.get());
        if (!mpfr_number_p(lo_f.get()) || !mpfr_number_p(hi_f.get())) {
            overflow = true;
            return;
        }
        const long lo_l = mpfr_get_si(lo_f.get(), MPFR_RNDD);
        const long hi_l = mpfr_get_si(hi_f.get(), MPFR_RNDU);
        if (hi_l - lo_l > 10000) {
            overflow = true;
            return;
        }
        for (long xv = tail_zero && lo_l < 0 ? 0 : lo_l; xv <= hi_l; ++xv) {
            const Interval y = c.added_q(Rational(xv));
            const Interval next = add(partial, mul(gso.r[i], square(y)));
            if (mpfr_cmp(next.lo().get(), bound.get()) > 0) continue;
            x[i] = xv;
            descend(i - 1, next, tail_zero && xv == 0);
            if (overflow) return;
        }
        x[i] = 0;
    }
};

ZMat midpoint_lll_transform(const IMat& gram) {
    // Exact LLL on the dyadic midpoints, used purely as a preconditioner;
    // the integer transform is applied exactly afterwards, so a sloppy
    // reduction can only cost time, never soundness.  Doubles are not an
    // option here: the diagonal flows produce Grams whose smallest pivot
    // underflows the 53-bit mantissa long before the lattice is hard.
    const int k = gram.dim();
    ZMat identity(k, ZVec(k, Int(0)));
    for (int i = 0; i < k; ++i) identity[i][i] = 1;
    QMat mid(k);
    mpq_t tmp;
    mpq_init(tmp);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            MpFloat m(gram(i, j).prec());
            mpfr_add(m.get(), gram(i, j).lo().get(), gram(i, j).hi().get(), MPFR_RNDN);
            mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
            if (!mpfr_number_p(m.get())) {
                mpq_clear(tmp);
                return identity;
            }
            mpfr_get_q(tmp, m.get());
            mid(i, j) = Rational(mpq_class(tmp));
        }
    mpq_clear(tmp);
    // Symmetrize: the enclosure midpoints of G_ij and G_ji can differ.
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            const Rational avg = (mid(i, j) + mid(j, i)) / 2;
            mid(i, j) = avg;
            mid(j, i) = avg;
        }
    try {
        return lll_transform(mid);
    } catch (const std::exception&) {
        return identity;  // midpoint not positive definite: skip preconditioning
    }
}

IMat transformed_gram_iv(const IMat& g, const ZMat& u, long prec) {
    const int k = g.dim();
    IMat out(k, prec);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Interval acc(prec);
            for (int a = 0; a < k; ++a) {
                if (u[a][i] == 0) continue;
                Interval row(prec);
                for (int b = 0; b < k; ++b)
                    if (u[b][j] != 0) row = add(row, g(a, b).scaled_q(Rational(u[b][j])));
                acc = add(acc, row.scaled_q(Rational(u[a][i])));
            }
            out(i, j) = acc;
        }
    return out;
}

}  // namespace

std::optional<SvpIntervalResult> svp_gram_interval(const IMat& gram) {
    const int k = gram.dim();
    if (k < 1) throw std::invalid_argument("svp: empty");
    const long prec = gram(0, 0).prec();
    const ZMat u = midpoint_lll_transform(gram);
    const IMat g = transformed_gram_iv(gram, u, prec);

    // Weak but always-valid enclosure [0, min_i hi(G_ii)]: any basis vector
    // upper-bounds the minimum.  Used when the Gram enclosure is too wide to
    // certify the Gram-Schmidt pivots or to bound the enumeration.
    auto weak = [&]() {
        int arg = 0;
        for (int i = 1; i < k; ++i)
            if (mpfr_cmp(g(i, i).hi().get(), g(arg, arg).hi().get()) < 0) arg = i;
        MpFloat zero(prec);
        mpfr_set_zero(zero.get(), 1);
        ZVec coeffs(k, Int(0));
        coeffs[arg] = 1;
        return SvpIntervalResult{
            Interval::from_mpfr_bounds(zero.get(), g(arg, arg).hi().get(), prec),
            apply_transform(u, coeffs)};
    };

    const GsoI gso = gso_interval(g);
    if (!gso.ok) return weak();
    IvEnum en(k, prec, gso);
    // Initial certified bound: min over i of hi(G_ii).
    mpfr_set(en.bound.get(), g(0, 0).hi().get(), MPFR_RNDU);
    for (int i = 1; i < k; ++i)
        if (mpfr_cmp(g(i, i).hi().get(), en.bound.get()) < 0)
            mpfr_set(en.bound.get(), g(i, i).hi().get(), MPFR_RNDU);
    en.descend(k - 1, Interval(prec), true);
    if (en.overflow || !en.found) return weak();
    SvpIntervalResult res{Interval::from_mpfr_bounds(en.result_lo.get(), en.result_hi.get(), prec),
                          apply_transform(u, en.best)};
    return res;
}

SvpExactResult shortest_vector(const QMat& basis_cols, bool /*lower_bound_only*/) {
    const int k = basis_cols.dim();
    QMat gram(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Rational acc(0);
            for (int a = 0; a < k; ++a) acc += basis_cols(a, i) * basis_cols(a, j);
            gram(i, j) = acc;
        }
    return svp_gram_exact(gram);
}

std::optional<SvpIntervalResult> shortest_vector(const IMat& basis_cols, bool /*lower_bound_only*/) {
    const int k = basis_cols.dim();
    const long prec = basis_cols(0, 0).prec();
    IMat gram(k, prec);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Interval acc(prec);
            for (int a = 0; a < k; ++a) acc = add(acc, mul(basis_cols(a, i), basis_cols(a, j)));
            gram(i, j) = acc;
        }
    return svp_gram_interval(gram);
}

QVec witness_vector(const QMat& basis_cols, const ZVec& coeffs) {
    const int k = basis_cols.dim();
    QVec out(k, Rational(0));
    for (int a = 0; a < k; ++a)
        for (int i = 0; i < k; ++i) out[a] += basis_cols(a, i) * Rational(coeffs[i]);
    return out;
}

IVec witness_vector(const IMat& basis_cols, const ZVec& coeffs) {
    const int k = basis_cols.dim();
    const long prec = basis_cols(0, 0).prec();
    IVec out(k, Interval(prec));
    for (int a = 0; a < k; ++a)
        for (int i = 0; i < k; ++i)
            out[a] = add(out[a], basis_cols(a, i).scaled_q(Rational(coeffs[i])));
    return out;
}

bool in_K_eps(const QMat& basis_cols, const Rational& eps2) {
    return shortest_vector(basis_cols).norm2 >= eps2;
}

std::optional<bool> in_K_eps(const IMat& basis_cols, const Rational& eps2) {
    auto res = shortest_vector(basis_cols);
    if (!res) return std::nullopt;
    switch (res->norm2.compare(eps2)) {
        case Cmp::Less: return false;
        case Cmp::Greater: return true;
        case Cmp::Equal: return true;
        default: return std::nullopt;
    }
}

MinkowskiResult minkowski_short(const std::vector<QVec>& images) {
    const int i = static_cast<int>(images.size());
    if (i == 0) throw std::invalid_argument("minkowski_short: empty");
    QMat gram(i);
    for (int a = 0; a < i; ++a)
        for (int b = 0; b < i; ++b) gram(a, b) = dot(images[a], images[b]);
    const Rational det_g = gram.det();
    if (det_g <= 0) throw std::invalid_argument("minkowski_short: dependent images");
    SvpExactResult s = svp_gram_exact(gram);
    // lambda_1^2 <= i * det^(1/i), i.e. norm2^i <= i^i * det (Minkowski).
    const Rational rhs = rat_pow(Rational(i), i) * det_g;
    if (cmp_power(s.norm2, i, rhs, 1) == Cmp::Greater)
        throw std::logic_error("minkowski_short: bound violated");
    QVec v(images[0].size(), Rational(0));
    for (int a = 0; a < i; ++a)
        for (size_t c = 0; c < v.size(); ++c) v[c] += Rational(s.coeffs[a]) * images[a][c];
    return {v, s.coeffs, s.norm2};
}

}  // namespace badlatt
