#include "badlatt/intlattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace badlatt {

std::vector<QVec> IntCollection::rational_rows() const {
    std::vector<QVec> r;
    r.reserve(vectors.size());
    for (const auto& v : vectors) r.push_back(to_rational(v));
    return r;
}

QMulti wedge_of(const IntCollection& c) {
    std::vector<QVec> rows = c.rational_rows();
    return wedge_all(rows, c.ambient);
}

namespace {

using ZMat = std::vector<ZVec>;

ZMat z_identity(size_t n) {
    ZMat m(n, ZVec(n, Int(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

void row_swap(ZMat& a, size_t i, size_t j) { std::swap(a[i], a[j]); }

void col_swap(ZMat& a, size_t i, size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
}

// row i -= f * row j
void row_axpy(ZMat& a, size_t i, size_t j, const Int& f) {
    for (size_t c = 0; c < a[i].size(); ++c) a[i][c] -= f * a[j][c];
}

void col_axpy(ZMat& a, size_t i, size_t j, const Int& f) {
    for (auto& row : a) row[i] -= f * row[j];
}

void row_negate(ZMat& a, size_t i) {
    for (auto& x : a[i]) x = -x;
}

void col_negate(ZMat& a, size_t i) {
    for (auto& row : a) row[i] = -row[i];
}

}  // namespace

SmithResult smith_normal_form(const std::vector<ZVec>& A) {
    const size_t nr = A.size();
    const size_t nc = nr ? A[0].size() : 0;
    SmithResult res;
    res.S = A;
    res.U = z_identity(nr);
    res.V = z_identity(nc);
    ZMat& S = res.S;
    ZMat& U = res.U;
    ZMat& V = res.V;

    size_t t = 0;
    while (t < nr && t < nc) {
        // Find a pivot with minimal absolute value in the trailing block.
        size_t pi = t, pj = t;
        bool found = false;
        Int best;
        for (size_t i = t; i < nr; ++i)
            for (size_t j = t; j < nc; ++j) {
                if (S[i][j] == 0) continue;
                Int a = abs(S[i][j]);
                if (!found || a < best) {
                    found = true;
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        if (pi != t) {
            row_swap(S, pi, t);
            row_swap(U, pi, t);
        }
        if (pj != t) {
            col_swap(S, pj, t);
            col_swap(V, pj, t);
        }
        if (S[t][t] < 0) {
            row_negate(S, t);
            row_negate(U, t);
        }

        bool dirty = false;
        for (size_t i = t + 1; i < nr; ++i) {
            if (S[i][t] == 0) continue;
            Int f;
            mpz_fdiv_q(f.get_mpz_t(), S[i][t].get_mpz_t(), S[t][t].get_mpz_t());
            row_axpy(S, i, t, f);
            row_axpy(U, i, t, f);
            if (S[i][t] != 0) dirty = true;
        }
        for (size_t j = t + 1; j < nc; ++j) {
            if (S[t][j] == 0) continue;
            Int f;
            mpz_fdiv_q(f.get_mpz_t(), S[t][j].get_mpz_t(), S[t][t].get_mpz_t());
            col_axpy(S, j, t, f);
            col_axpy(V, j, t, f);
            if (S[t][j] != 0) dirty = true;
        }
        if (dirty) continue;  // re-pick pivot, remainders are smaller now

        // Divisibility fix-up: pivot must divide every trailing entry.
        bool fixed = true;
        for (size_t i = t + 1; i < nr && fixed; ++i)
            for (size_t j = t + 1; j < nc && fixed; ++j) {
                if (S[i][j] % S[t][t] != 0) {
                    row_axpy(S, t, i, Int(-1));  // add row i to row t
                    row_axpy(U, t, i, Int(-1));
                    fixed = false;
                }
            }
        if (!fixed) continue;
        ++t;
    }
    for (size_t i = 0; i < std::min(nr, nc); ++i)
        if (S[i][i] != 0) res.divisors.push_back(S[i][i]);
    return res;
}

bool is_primitive(const IntCollection& v) {
    if (v.size() == 0) throw std::invalid_argument("is_primitive: empty collection");
    if (rational_rank(v.rational_rows()) != v.size())
        throw std::invalid_argument("is_primitive: dependent input");
    SmithResult snf = smith_normal_form(v.vectors);
    if (static_cast<int>(snf.divisors.size()) != v.size()) return false;
    for (const Int& d : snf.divisors)
        if (d != 1) return false;
    return true;
}

std::vector<ZVec> integer_kernel(const std::vector<ZVec>& A) {
    const size_t nc = A.empty() ? 0 : A[0].size();
    SmithResult snf = smith_normal_form(A);
    const size_t rank = snf.divisors.size();
    // A * (V e_j) = U^{-1} S e_j = 0 for j >= rank; those columns of V form a
    // saturated kernel basis.
    std::vector<ZVec> basis;
    for (size_t j = rank; j < nc; ++j) {
        ZVec col(nc);
        for (size_t i = 0; i < nc; ++i) col[i] = snf.V[i][j];
        basis.push_back(std::move(col));
    }
    return basis;
}

IntCollection primitive_dual(const IntCollection& v) {
    const int k = v.ambient;
    const int r = v.size();
    if (r < 1 || r > k - 1) throw std::invalid_argument("primitive_dual: bad grade");
    if (!is_primitive(v)) throw std::invalid_argument("primitive_dual: input not primitive");

    IntCollection dual;
    dual.ambient = k;
    dual.vectors = integer_kernel(v.vectors);
    if (dual.size() != k - r) throw std::logic_error("primitive_dual: kernel rank mismatch");

    // Contract checks: exact orthogonality and equal squared wedge norms.
    for (const auto& a : v.vectors)
        for (const auto& b : dual.vectors) {
            Int acc(0);
            for (int i = 0; i < k; ++i) acc += a[i] * b[i];
            if (acc != 0) throw std::logic_error("primitive_dual: orthogonality failed");
        }
    const Rational nv = wedge_of(v).norm_squared();
    const Rational nd = wedge_of(dual).norm_squared();
    if (nv != nd) throw std::logic_error("primitive_dual: norm equality failed");
    return dual;
}

std::pair<ZVec, ZVec> bivector_decompose(const QMulti& x) {
    const int k = x.ambient();
    if (x.grade() != 2) throw std::invalid_argument("bivector_decompose: grade must be 2");
    const IndexSets& is = index_sets(k, 2);

    // Integer antisymmetric matrix M with M[i][j] = coord_{i<j}.
    std::vector<ZVec> M(k, ZVec(k, Int(0)));
    bool nonzero = false;
    for (int t = 0; t < is.count(); ++t) {
        const Rational& c = x.coord(t);
        if (c.get_den() != 1) throw std::invalid_argument("bivector_decompose: non-integer coords");
        const int i = is.set(t)[0], j = is.set(t)[1];
        M[i][j] = c.get_num();
        M[j][i] = -c.get_num();
        nonzero |= (c != 0);
    }
    if (!nonzero) throw std::invalid_argument("bivector_decompose: zero input");

    // Plucker relation: decomposable iff x ^ x = 0 (automatic below dim 4).
    if (k >= 4) {
        const QMulti xx = wedge(x, x);
        for (int t = 0; t < xx.coord_count(); ++t)
            if (xx.coord(t) != 0) throw std::invalid_argument("bivector_decompose: not decomposable");
    }

    // Support plane = column space of M; its saturated lattice is the kernel
    // of the kernel.
    std::vector<ZVec> perp = integer_kernel(M);
    std::vector<ZVec> plane = integer_kernel(perp);
    if (plane.size() != 2) throw std::logic_error("bivector_decompose: support rank != 2");

    IntCollection basis{plane, k};
    const QMulti ab = wedge_of(basis);
    // x = c * (a ^ b) for an integer c; find it from any nonzero coordinate.
    Rational c;
    for (int t = 0; t < ab.coord_count(); ++t) {
        if (ab.coord(t) != 0) {
            c = x.coord(t) / ab.coord(t);
            break;
        }
    }
    if (c == 0 || c.get_den() != 1) throw std::logic_error("bivector_decompose: bad content");
    for (int t = 0; t < ab.coord_count(); ++t)
        if (ab.coord(t) * c != x.coord(t)) throw std::logic_error("bivector_decompose: mismatch");
    ZVec a = plane[0];
    for (auto& e : a) e *= c.get_num();
    return {a, plane[1]};
}

}  // namespace badlatt
