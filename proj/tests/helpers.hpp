#pragma once

// Shared test utilities: seeded random rationals, vectors, and primitive
// integer collections.

#include "badlatt/intlattice.hpp"
#include "badlatt/matrix.hpp"

#include <random>

namespace badlatt::testing {

inline Rational random_rational(std::mt19937_64& rng, int max_num = 10, int max_den = 10) {
    std::uniform_int_distribution<int> num(-max_num, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return make_rational(num(rng), den(rng));
}

inline QVec random_qvec(std::mt19937_64& rng, int k, int max_num = 10, int max_den = 10) {
    QVec v(k);
    for (auto& x : v) x = random_rational(rng, max_num, max_den);
    return v;
}

inline ZVec random_zvec(std::mt19937_64& rng, int k, int max_abs = 10) {
    std::uniform_int_distribution<int> d(-max_abs, max_abs);
    ZVec v(k);
    for (auto& x : v) x = d(rng);
    return v;
}

inline bool independent(const std::vector<ZVec>& rows, int k) {
    std::vector<QVec> q;
    for (const auto& r : rows) q.push_back(to_rational(r));
    (void)k;
    return rational_rank(q) == static_cast<int>(rows.size());
}

// Random primitive collection of r vectors in Z^k (rejection sampling).
inline IntCollection random_primitive(std::mt19937_64& rng, int k, int r, int max_abs = 6) {
    for (;;) {
        IntCollection c;
        c.ambient = k;
        for (int i = 0; i < r; ++i) c.vectors.push_back(random_zvec(rng, k, max_abs));
        bool nonzero = true;
        for (const auto& v : c.vectors) {
            bool z = true;
            for (const auto& e : v) z &= (e == 0);
            nonzero &= !z;
        }
        if (!nonzero || !independent(c.vectors, k)) continue;
        if (is_primitive(c)) return c;
    }
}

}  // namespace badlatt::testing
