#pragma once

// Integer-lattice utilities: Smith normal form, primitivity tests, kernel
// bases and primitive dual completion (Schmidt's Lemma 5G shape: the dual
// collection is orthogonal to the input and the two wedges have equal norm).

#include "badlatt/multivector.hpp"

#include <vector>

namespace badlatt {

// A collection of integer vectors in Z^k, kept as rows.
struct IntCollection {
    std::vector<ZVec> vectors;
    int ambient = 0;

    int size() const { return static_cast<int>(vectors.size()); }
    std::vector<QVec> rational_rows() const;
};

QMulti wedge_of(const IntCollection& c);

struct SmithResult {
    // S = U * A * V with U, V unimodular; S diagonal (divisors on the diagonal).
    std::vector<ZVec> S, U, V;
    std::vector<Int> divisors;  // nonzero diagonal entries
};

SmithResult smith_normal_form(const std::vector<ZVec>& A);

// True iff the vectors are linearly independent and their integer span is
// saturated (all elementary divisors 1).  Throws on dependent input.
bool is_primitive(const IntCollection& v);

// Saturated integer kernel of A (rows x cols): basis of {x : A x = 0} in Z^cols.
std::vector<ZVec> integer_kernel(const std::vector<ZVec>& A);

// For a primitive collection of r vectors in Z^k (1 <= r <= k-1), a primitive
// collection of k-r vectors orthogonal to it with equal wedge norm.
IntCollection primitive_dual(const IntCollection& v);

// Writes a decomposable integer grade-2 multivector as a ^ b with integer
// vectors.  Throws if the input is zero or not decomposable.
std::pair<ZVec, ZVec> bivector_decompose(const QMulti& x);

}  // namespace badlatt
