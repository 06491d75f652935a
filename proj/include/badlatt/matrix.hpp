#pragma once

// Dense square matrices and vectors over an exact or interval scalar.
// Dimensions in this library never exceed kMaxAmbientDim, so the simple
// algorithms here (cofactor determinants, plain Gaussian elimination)
// are the right tool.

#include "badlatt/arith.hpp"
#include "badlatt/interval.hpp"

#include <vector>

namespace badlatt {

#ifndef BADLATT_MAX_DIM
#define BADLATT_MAX_DIM 6
#endif
inline constexpr int kMaxAmbientDim = BADLATT_MAX_DIM;

inline Interval operator+(const Interval& a, const Interval& b) { return add(a, b); }
inline Interval operator-(const Interval& a, const Interval& b) { return sub(a, b); }
inline Interval operator*(const Interval& a, const Interval& b) { return mul(a, b); }
inline Interval operator-(const Interval& a) { return a.neg(); }

template <class S>
S scalar_zero(long /*prec*/) { return S(0); }
template <>
inline Interval scalar_zero<Interval>(long prec) { return Interval(prec); }

template <class S>
S scalar_one(long /*prec*/) { return S(1); }
template <>
inline Interval scalar_one<Interval>(long prec) { return Interval::from_long(1, prec); }

template <class S>
class Mat {
  public:
    Mat() : n_(0) {}
    Mat(int n, long prec = kDefaultPrecision) : n_(n), a_(n * n, scalar_zero<S>(prec)) {}

    static Mat identity(int n, long prec = kDefaultPrecision) {
        Mat m(n, prec);
        for (int i = 0; i < n; ++i) m(i, i) = scalar_one<S>(prec);
        return m;
    }

    int dim() const { return n_; }
    S& operator()(int i, int j) { return a_[i * n_ + j]; }
    const S& operator()(int i, int j) const { return a_[i * n_ + j]; }

    Mat operator*(const Mat& o) const {
        Mat r(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                S acc = a_[i * n_] * o(0, j);
                for (int k = 1; k < n_; ++k) acc = acc + a_[i * n_ + k] * o(k, j);
                r(i, j) = acc;
            }
        return r;
    }

    std::vector<S> apply(const std::vector<S>& v) const {
        std::vector<S> r;
        r.reserve(n_);
        for (int i = 0; i < n_; ++i) {
            S acc = a_[i * n_] * v[0];
            for (int k = 1; k < n_; ++k) acc = acc + a_[i * n_ + k] * v[k];
            r.push_back(acc);
        }
        return r;
    }

    Mat transposed() const {
        Mat r(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r(j, i) = a_[i * n_ + j];
        return r;
    }

    // Cofactor expansion; fine for dim <= kMaxAmbientDim + 1.
    S det() const { return det_rec(std::vector<int>{}); }

  private:
    S det_rec(std::vector<int> skip_cols) const {
        const int row = static_cast<int>(skip_cols.size());
        if (row == n_) return scalar_one<S>(kDefaultPrecision);
        bool first = true;
        S acc = scalar_zero<S>(kDefaultPrecision);
        int parity = 0;
        for (int j = 0; j < n_; ++j) {
            bool used = false;
            for (int c : skip_cols) used |= (c == j);
            if (used) continue;
            skip_cols.push_back(j);
            S term = a_[row * n_ + j] * det_rec(skip_cols);
            skip_cols.pop_back();
            if (parity % 2 == 1) term = -term;
            acc = first ? term : acc + term;
            first = false;
            ++parity;
        }
        return acc;
    }

    int n_;
    std::vector<S> a_;
};

using QMat = Mat<Rational>;
using IMat = Mat<Interval>;
using QVec = std::vector<Rational>;
using IVec = std::vector<Interval>;
using ZVec = std::vector<Int>;

inline Interval operator-(const Rational& a, const Interval& b) = delete;

IMat to_interval(const QMat& m, long prec);
IVec to_interval(const QVec& v, long prec);
QVec to_rational(const ZVec& v);

// Exact rank of a rectangular rational matrix (rows x cols, row-major).
int rational_rank(const std::vector<QVec>& rows);

Rational dot(const QVec& a, const QVec& b);
Interval dot(const IVec& a, const IVec& b);
Rational norm2(const QVec& a);
Interval norm2(const IVec& a);

}  // namespace badlatt
