#include "badlatt/matrix.hpp"

namespace badlatt {

IMat to_interval(const QMat& m, long prec) {
    IMat r(m.dim(), prec);
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) r(i, j) = Interval::from_rational(m(i, j), prec);
    return r;
}

IVec to_interval(const QVec& v, long prec) {
    IVec r;
    r.reserve(v.size());
    for (const auto& x : v) r.push_back(Interval::from_rational(x, prec));
    return r;
}

QVec to_rational(const ZVec& v) {
    QVec r;
    r.reserve(v.size());
    for (const auto& x : v) r.push_back(Rational(x));
    return r;
}

int rational_rank(const std::vector<QVec>& rows_in) {
    std::vector<QVec> rows = rows_in;
    const size_t nr = rows.size();
    if (nr == 0) return 0;
    const size_t nc = rows[0].size();
    int rank = 0;
    size_t col = 0;
    for (size_t r = 0; r < nr && col < nc; ++col) {
        size_t piv = r;
        while (piv < nr && rows[piv][col] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(rows[r], rows[piv]);
        for (size_t i = r + 1; i < nr; ++i) {
            if (rows[i][col] == 0) continue;
            const Rational f = rows[i][col] / rows[r][col];
            for (size_t j = col; j < nc; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++rank;
        ++r;
    }
    return rank;
}

Rational dot(const QVec& a, const QVec& b) {
    Rational acc(0);
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

Interval dot(const IVec& a, const IVec& b) {
    Interval acc = mul(a[0], b[0]);
    for (size_t i = 1; i < a.size(); ++i) acc = add(acc, mul(a[i], b[i]));
    return acc;
}

Rational norm2(const QVec& a) {
    Rational acc(0);
    for (const auto& x : a) acc += x * x;
    return acc;
}

Interval norm2(const IVec& a) {
    Interval acc = square(a[0]);
    for (size_t i = 1; i < a.size(); ++i) acc = add(acc, square(a[i]));
    return acc;
}

}  // namespace badlatt
