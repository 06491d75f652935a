#include "badlatt/intlattice.hpp"
#include "badlatt/multivector.hpp"
#include "badlatt/svp.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <random>

using namespace badlatt;
using namespace badlatt::testing;

namespace {

QMulti qv(const QVec& v) { return QMulti::from_vector(v); }

QVec unit(int k, int i) {
    QVec v(k, Rational(0));
    v[i] = 1;
    return v;
}

}  // namespace

TEST_CASE("wedge basics") {
    const QMulti e12 = wedge(qv(unit(3, 0)), qv(unit(3, 1)));
    const IndexSets& is = index_sets(3, 2);
    CHECK(e12.coord(is.rank_of(0b011)) == 1);
    CHECK(e12.coord(is.rank_of(0b101)) == 0);

    const QVec v{Rational(3), Rational(-2), make_rational(1, 2)};
    const QMulti vv = wedge(qv(v), qv(v));
    for (int t = 0; t < vv.coord_count(); ++t) CHECK(vv.coord(t) == 0);
}

TEST_CASE("wedge cofactor example") {
    // (1,2,0) ^ (0,1,1) -> {12: 1, 13: 1, 23: 2}
    const QMulti w = wedge(qv({Rational(1), Rational(2), Rational(0)}),
                           qv({Rational(0), Rational(1), Rational(1)}));
    const IndexSets& is = index_sets(3, 2);
    CHECK(w.coord(is.rank_of(0b011)) == 1);   // {1,2}
    CHECK(w.coord(is.rank_of(0b101)) == 1);   // {1,3}
    CHECK(w.coord(is.rank_of(0b110)) == 2);   // {2,3}
}

TEST_CASE("wedge anticommutes and is bilinear") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const QVec a = random_qvec(rng, 4), b = random_qvec(rng, 4);
        const QMulti ab = wedge(qv(a), qv(b));
        const QMulti ba = wedge(qv(b), qv(a));
        const QMulti sum = ab + ba;
        for (int t = 0; t < sum.coord_count(); ++t) CHECK(sum.coord(t) == 0);
    }
}

TEST_CASE("apply_map identity and determinant on top grade") {
    const QMat id = QMat::identity(3);
    std::mt19937_64 rng(6);
    const QMulti v = wedge(qv(random_qvec(rng, 3)), qv(random_qvec(rng, 3)));
    const QMulti w = apply_map(id, v);
    for (int t = 0; t < v.coord_count(); ++t) CHECK(w.coord(t) == v.coord(t));

    QMat d(2);
    d(0, 0) = 2;
    d(1, 1) = make_rational(1, 2);
    const QMulti e12 = wedge(qv(unit(2, 0)), qv(unit(2, 1)));
    const QMulti img = apply_map(d, e12);
    CHECK(img.coord(0) == 1);  // det = 1
}

TEST_CASE("apply_map equals wedge of images on decomposables") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const int k = 4;
        QMat L(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) L(i, j) = Rational(random_zvec(rng, 1, 5)[0]);
        const QVec a = random_qvec(rng, k), b = random_qvec(rng, k), c = random_qvec(rng, k);
        const QMulti v = wedge(wedge(qv(a), qv(b)), qv(c));
        const QMulti lhs = apply_map(L, v);
        const QMulti rhs = wedge(wedge(qv(L.apply(a)), qv(L.apply(b))), qv(L.apply(c)));
        for (int t = 0; t < lhs.coord_count(); ++t) CHECK(lhs.coord(t) == rhs.coord(t));
    }
}

TEST_CASE("apply_map is multiplicative") {
    std::mt19937_64 rng(8);
    const int k = 4;
    QMat l1(k), l2(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            l1(i, j) = random_rational(rng, 4, 3);
            l2(i, j) = random_rational(rng, 4, 3);
        }
    const QMulti v = wedge(qv(random_qvec(rng, k)), qv(random_qvec(rng, k)));
    const QMulti lhs = apply_map(l1 * l2, v);
    const QMulti rhs = apply_map(l1, apply_map(l2, v));
    for (int t = 0; t < lhs.coord_count(); ++t) CHECK(lhs.coord(t) == rhs.coord(t));
}

TEST_CASE("laplace identity examples") {
    CHECK(laplace_gram({unit(3, 0)}, {unit(3, 0)}) == 1);
    CHECK(laplace_gram({unit(3, 0), unit(3, 1)}, {unit(3, 1), unit(3, 2)}) == 0);
}

TEST_CASE("laplace identity random") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 1000; ++trial) {
        std::uniform_int_distribution<int> rd(1, 3), kd(3, 5);
        const int k = kd(rng);
        const int r = std::min(rd(rng), k);
        std::vector<QVec> u, v;
        for (int i = 0; i < r; ++i) {
            u.push_back(to_rational(random_zvec(rng, k, 10)));
            v.push_back(to_rational(random_zvec(rng, k, 10)));
        }
        const Rational lhs = laplace_gram(u, v);
        const QMulti wu = wedge_all(u, k), wv = wedge_all(v, k);
        Rational rhs = wu.inner(wv);
        if (rhs < 0) rhs = -rhs;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("hodge dual is an isometry and pairs by sign") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = 4;
        const QMulti v = wedge(qv(random_qvec(rng, k)), qv(random_qvec(rng, k)));
        const QMulti d = hodge_dual(v);
        CHECK(v.norm_squared() == d.norm_squared());
        // v ^ *v = ||v||^2 e_{1..k}
        const QMulti top = wedge(v, d);
        CHECK(top.coord(0) == v.norm_squared());
    }
}

TEST_CASE("is_primitive examples") {
    CHECK(is_primitive({{{Int(1), Int(0), Int(0)}}, 3}));
    CHECK(!is_primitive({{{Int(2), Int(0), Int(0)}}, 3}));
    CHECK(is_primitive({{{Int(2), Int(1), Int(0)}, {Int(1), Int(1), Int(1)}}, 3}));
    CHECK_THROWS(is_primitive({{{Int(1), Int(1), Int(0)}, {Int(2), Int(2), Int(0)}}, 3}));
}

TEST_CASE("smith normal form divisors") {
    SmithResult s = smith_normal_form({{Int(2), Int(4)}, {Int(6), Int(8)}});
    REQUIRE(s.divisors.size() == 2);
    CHECK(s.divisors[0] == 2);
    CHECK(s.divisors[1] == 4);  // det 16 - 24 = -8; 2 * 4 = 8
}

TEST_CASE("primitive_dual examples") {
    {
        const IntCollection d = primitive_dual({{{Int(1), Int(0), Int(0)}}, 3});
        CHECK(d.size() == 2);
    }
    {
        const IntCollection v{{{Int(2), Int(1), Int(0)}}, 3};
        const IntCollection d = primitive_dual(v);
        CHECK(wedge_of(d).norm_squared() == 5);
        CHECK(wedge_of(v).norm_squared() == 5);
    }
    {
        const IntCollection v{{{Int(1), Int(0), Int(0), Int(0)}, {Int(0), Int(1), Int(0), Int(0)}}, 4};
        const IntCollection d = primitive_dual(v);
        CHECK(wedge_of(d).norm_squared() == 1);
    }
}

TEST_CASE("primitive_dual random contract") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        std::uniform_int_distribution<int> kd(2, 5);
        const int k = kd(rng);
        std::uniform_int_distribution<int> rd(1, k - 1);
        const int r = rd(rng);
        const IntCollection v = random_primitive(rng, k, r, 5);
        const IntCollection u = primitive_dual(v);  // contract checks run inside
        CHECK(is_primitive(u));
    }
}

TEST_CASE("dual pairing identity") {
    // |(w1^..^wr).(v1^..^vr)| = ||w1^..^wr^u1^..^u_{k-r}|| for the dual u.
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 500; ++trial) {
        std::uniform_int_distribution<int> kd(2, 5);
        const int k = kd(rng);
        std::uniform_int_distribution<int> rd(1, k - 1);
        const int r = rd(rng);
        const IntCollection v = random_primitive(rng, k, r, 4);
        const IntCollection u = primitive_dual(v);
        std::vector<QVec> w;
        for (int i = 0; i < r; ++i) w.push_back(random_qvec(rng, k, 6, 4));
        Rational lhs = wedge_all(w, k).inner(wedge_of(v));
        if (lhs < 0) lhs = -lhs;
        std::vector<QVec> all = w;
        for (const auto& uv : u.vectors) all.push_back(to_rational(uv));
        const Rational rhs2 = wedge_all(all, k).norm_squared();
        CHECK(lhs * lhs == rhs2);
    }
}

TEST_CASE("wedge norm is submultiplicative") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 5;
        const QVec u = random_qvec(rng, k);
        const QVec a = random_qvec(rng, k), b = random_qvec(rng, k);
        const QMulti v = wedge(qv(a), qv(b));
        const QMulti uv = wedge(qv(u), v);
        CHECK(uv.norm_squared() <= norm2(u) * v.norm_squared());
    }
}

TEST_CASE("bivector decompose roundtrip") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<int> kd(3, 5);
        const int k = kd(rng);
        ZVec a = random_zvec(rng, k, 6), b = random_zvec(rng, k, 6);
        const QMulti x = wedge(qv(to_rational(a)), qv(to_rational(b)));
        bool zero = true;
        for (int t = 0; t < x.coord_count(); ++t) zero &= (x.coord(t) == 0);
        if (zero) continue;
        const auto [p, q] = bivector_decompose(x);
        const QMulti y = wedge(qv(to_rational(p)), qv(to_rational(q)));
        for (int t = 0; t < x.coord_count(); ++t) CHECK(x.coord(t) == y.coord(t));
    }
}

TEST_CASE("shortest vector examples") {
    {
        const SvpExactResult s = shortest_vector(QMat::identity(3));
        CHECK(s.norm2 == 1);
    }
    {
        // Basis rows (2,1) and (1,1): pass as columns of the transpose.
        QMat m(2);
        m(0, 0) = 2; m(1, 0) = 1;
        m(0, 1) = 1; m(1, 1) = 1;
        const SvpExactResult s = shortest_vector(m);
        CHECK(s.norm2 == 1);
    }
    {
        QMat m(2);
        m(0, 0) = 2;
        m(1, 1) = make_rational(1, 2);
        const SvpExactResult s = shortest_vector(m);
        CHECK(s.norm2 == make_rational(1, 4));
        const QVec w = witness_vector(m, s.coeffs);
        CHECK((w[1] == make_rational(1, 2) || w[1] == make_rational(-1, 2)));
    }
}

namespace {

Rational brute_force_min_norm2(const QMat& basis_cols, int box) {
    const int k = basis_cols.dim();
    ZVec c(k, Int(0));
    Rational best(-1);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == k) {
            QVec v(k, Rational(0));
            bool zero = true;
            for (int a = 0; a < k; ++a) {
                for (int j = 0; j < k; ++j) v[a] += basis_cols(a, j) * Rational(c[j]);
                zero &= (c[a] == 0);
            }
            if (zero) return;
            const Rational n2 = norm2(v);
            if (best < 0 || n2 < best) best = n2;
            return;
        }
        for (int x = -box; x <= box; ++x) {
            c[i] = x;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return best;
}

}  // namespace

TEST_CASE("shortest vector agrees with brute force") {
    // Well-conditioned draws: a dominant diagonal keeps the shortest witness
    // inside the brute-force coefficient box.
    std::mt19937_64 rng(15);
    int done = 0;
    while (done < 200) {
        std::uniform_int_distribution<int> kd(3, 4);
        const int k = kd(rng);
        QMat m(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                m(i, j) = random_rational(rng, 1, 2) + Rational(i == j ? 4 : 0);
        Rational d = m.det();
        if (d < 0) d = -d;
        if (d < 1) continue;
        const SvpExactResult s = shortest_vector(m);
        CHECK(s.norm2 == brute_force_min_norm2(m, 8));
        ++done;
    }
}

TEST_CASE("interval svp encloses the exact value") {
    std::mt19937_64 rng(16);
    int done = 0;
    while (done < 50) {
        const int k = 3;
        QMat m(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) m(i, j) = random_rational(rng, 3, 2) + Rational(i == j ? 3 : 0);
        if (m.det() == 0) continue;
        ++done;
        const SvpExactResult s = shortest_vector(m);
        const auto iv = shortest_vector(to_interval(m, 128));
        REQUIRE(iv.has_value());
        CHECK(iv->norm2.contains(s.norm2));
        CHECK(iv->norm2.width_double() < 1e-25);
    }
}

TEST_CASE("in_K_eps examples") {
    CHECK(in_K_eps(QMat::identity(3), Rational(1)));
    CHECK(!in_K_eps(QMat::identity(3), make_rational(10201, 10000)));  // eps = 1.01
    QMat d(2);
    d(0, 0) = 2;
    d(1, 1) = make_rational(1, 2);
    CHECK(!in_K_eps(d, make_rational(9, 25)));  // eps = 3/5 > 1/2
}

TEST_CASE("in_K_eps anti-monotone in eps") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        QMat m(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = random_rational(rng, 3, 2) + Rational(i == j ? 1 : 0);
        Rational d = m.det();
        if (d == 0) continue;
        bool prev = true;
        for (long e = 1; e <= 8; ++e) {
            const bool now = in_K_eps(m, make_rational(e, 4));
            CHECK((prev || !now));  // once false, stays false as eps grows
            prev = now;
        }
    }
}

TEST_CASE("minkowski_short examples") {
    {
        const MinkowskiResult r = minkowski_short({{Rational(3), Rational(4)}});
        CHECK(r.norm2 == 25);
    }
    {
        const MinkowskiResult r =
            minkowski_short({{Rational(10), Rational(0)}, {Rational(0), make_rational(1, 10)}});
        CHECK(r.norm2 == make_rational(1, 100));
        CHECK(r.norm2 <= 2);  // sqrt(2)^2 bound with det 1
    }
    {
        const MinkowskiResult r =
            minkowski_short({{Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
        CHECK(r.norm2 == 1);
    }
}

TEST_CASE("multivector json shape") {
    const QMulti w = wedge(qv({Rational(1), Rational(2), Rational(0)}),
                           qv({Rational(0), Rational(1), Rational(1)}));
    const std::string j = multivector_to_json(w);
    CHECK(j.find("\"dim\": 3") != std::string::npos);
    CHECK(j.find("\"1,2\": \"1\"") != std::string::npos);
    CHECK(j.find("\"2,3\": \"2\"") != std::string::npos);
}
