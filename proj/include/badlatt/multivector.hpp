#pragma once

// Exterior algebra over (n+1)-space with Plucker coordinates indexed by
// sorted index sets.  The standard basis e_I is orthonormal, so squared
// norms are coordinate sums of squares.

#include "badlatt/matrix.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace badlatt {

// Sorted r-subsets of {0..k-1} in lexicographic order, plus rank lookups.
class IndexSets {
  public:
    IndexSets(int k, int r);
    int count() const { return static_cast<int>(sets_.size()); }
    const std::vector<int>& set(int rank) const { return sets_[rank]; }
    int rank_of(uint32_t mask) const;
    static uint32_t mask_of(const std::vector<int>& s);

  private:
    int k_;
    std::vector<std::vector<int>> sets_;
    std::map<uint32_t, int> rank_;
};

const IndexSets& index_sets(int k, int r);

// Sign of merging two disjoint sorted index sets (count of transpositions),
// and the merged mask.  Returns 0 sign when the sets intersect.
int merge_sign(uint32_t a, uint32_t b);

template <class S>
class MultiVector {
  public:
    MultiVector() : k_(0), r_(0) {}
    MultiVector(int ambient, int grade, long prec = kDefaultPrecision)
        : k_(ambient), r_(grade),
          coords_(index_sets(ambient, grade).count(), scalar_zero<S>(prec)) {
        if (grade < 0 || grade > ambient) throw std::invalid_argument("MultiVector: bad grade");
    }

    static MultiVector from_vector(const std::vector<S>& v) {
        MultiVector m(static_cast<int>(v.size()), 1);
        m.coords_ = v;
        return m;
    }

    int ambient() const { return k_; }
    int grade() const { return r_; }
    S& coord(int rank) { return coords_[rank]; }
    const S& coord(int rank) const { return coords_[rank]; }
    int coord_count() const { return static_cast<int>(coords_.size()); }

    S norm_squared() const {
        S acc = coords_[0] * coords_[0];
        for (size_t i = 1; i < coords_.size(); ++i) acc = acc + coords_[i] * coords_[i];
        return acc;
    }

    S inner(const MultiVector& o) const {
        S acc = coords_[0] * o.coords_[0];
        for (size_t i = 1; i < coords_.size(); ++i) acc = acc + coords_[i] * o.coords_[i];
        return acc;
    }

    MultiVector operator+(const MultiVector& o) const {
        MultiVector r = *this;
        for (size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = coords_[i] + o.coords_[i];
        return r;
    }

    MultiVector operator-(const MultiVector& o) const {
        MultiVector r = *this;
        for (size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = coords_[i] - o.coords_[i];
        return r;
    }

    MultiVector scaled(const S& c) const {
        MultiVector r = *this;
        for (auto& x : r.coords_) x = x * c;
        return r;
    }

  private:
    int k_, r_;
    std::vector<S> coords_;
};

using QMulti = MultiVector<Rational>;
using IMulti = MultiVector<Interval>;

template <class S>
MultiVector<S> wedge(const MultiVector<S>& a, const MultiVector<S>& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("wedge: ambient mismatch");
    const int k = a.ambient();
    const int r = a.grade() + b.grade();
    if (r > k) throw std::invalid_argument("wedge: grade overflow");
    MultiVector<S> out(k, r);
    const IndexSets& ia = index_sets(k, a.grade());
    const IndexSets& ib = index_sets(k, b.grade());
    const IndexSets& io = index_sets(k, r);
    for (int p = 0; p < ia.count(); ++p) {
        const uint32_t ma = IndexSets::mask_of(ia.set(p));
        for (int q = 0; q < ib.count(); ++q) {
            const uint32_t mb = IndexSets::mask_of(ib.set(q));
            if (ma & mb) continue;
            const int s = merge_sign(ma, mb);
            const int rank = io.rank_of(ma | mb);
            S term = a.coord(p) * b.coord(q);
            if (s < 0) term = -term;
            out.coord(rank) = out.coord(rank) + term;
        }
    }
    return out;
}

template <class S>
MultiVector<S> wedge_all(const std::vector<std::vector<S>>& vectors, int ambient) {
    MultiVector<S> acc(ambient, 0);
    acc.coord(0) = scalar_one<S>(kDefaultPrecision);
    for (const auto& v : vectors) acc = wedge(acc, MultiVector<S>::from_vector(v));
    return acc;
}

// Induced action of L on grade-r multivectors: coordinates of the image are
// signed r x r minors, so L(v1 ^ ... ^ vr) = Lv1 ^ ... ^ Lvr on decomposables
// and the map extends linearly.
template <class S>
MultiVector<S> apply_map(const Mat<S>& L, const MultiVector<S>& v) {
    const int k = v.ambient();
    if (L.dim() != k) throw std::invalid_argument("apply_map: dimension mismatch");
    const int r = v.grade();
    const IndexSets& is = index_sets(k, r);
    MultiVector<S> out(k, r);
    for (int t = 0; t < is.count(); ++t) {
        const std::vector<int>& I = is.set(t);
        S acc = scalar_zero<S>(kDefaultPrecision);
        bool first = true;
        for (int s = 0; s < is.count(); ++s) {
            const std::vector<int>& J = is.set(s);
            Mat<S> minor(r);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) minor(i, j) = L(I[i], J[j]);
            S term = minor.det() * v.coord(s);
            acc = first ? term : acc + term;
            first = false;
        }
        out.coord(t) = acc;
    }
    return out;
}

// Hodge dual: *(e_I) = sign(I, I^c) e_{I^c}; an isometry on coordinates.
template <class S>
MultiVector<S> hodge_dual(const MultiVector<S>& v) {
    const int k = v.ambient();
    const int r = v.grade();
    const uint32_t full = (1u << k) - 1;
    const IndexSets& is = index_sets(k, r);
    const IndexSets& id = index_sets(k, k - r);
    MultiVector<S> out(k, k - r);
    for (int t = 0; t < is.count(); ++t) {
        const uint32_t m = IndexSets::mask_of(is.set(t));
        const uint32_t mc = full & ~m;
        const int s = merge_sign(m, mc);
        S val = v.coord(t);
        if (s < 0) val = -val;
        out.coord(id.rank_of(mc)) = val;
    }
    return out;
}

// |det(u_i . v_j)|; equals the absolute inner product of the two wedges.
Rational laplace_gram(const std::vector<QVec>& u, const std::vector<QVec>& v);

std::string multivector_to_json(const QMulti& v);

}  // namespace badlatt
