#pragma once

// Exact and enclosure shortest-vector computation for lattices of dimension
// <= kMaxAmbientDim + 1.  Enumeration is exhaustive within a proven
// Fincke-Pohst bounding box; LLL is used only as a preconditioner to shrink
// the box.  Removal decisions in the construction engine must be sound, so
// the exact path never rounds and the interval path only widens.

#include "badlatt/matrix.hpp"

#include <optional>

namespace badlatt {

struct SvpExactResult {
    Rational norm2;  // minimal nonzero squared norm
    ZVec coeffs;     // integer coordinates of a witness w.r.t. the basis
};

struct SvpIntervalResult {
    Interval norm2;  // enclosure of the minimum; witness attains the upper end
    ZVec coeffs;
};

// Exact SVP for a positive-definite rational Gram matrix.
SvpExactResult svp_gram_exact(const QMat& gram);

// Every nonzero coefficient vector (up to global sign) with norm^2 <= bound.
std::vector<std::pair<Rational, ZVec>> enumerate_below(const QMat& gram, const Rational& bound);

// Enclosure SVP.  Returns nullopt (indeterminate) when the Gram enclosure is
// too wide to certify positive pivots or to bound the enumeration region;
// the caller escalates precision.
std::optional<SvpIntervalResult> svp_gram_interval(const IMat& gram);

// Lattice = integer combinations of the basis *columns*.
// `lower_bound_only` marks that the caller needs a certified lower bound
// rather than a tight witness; at the supported dimensions exhaustive
// enumeration is cheap, so both modes run the same search.
SvpExactResult shortest_vector(const QMat& basis_cols, bool lower_bound_only = false);
std::optional<SvpIntervalResult> shortest_vector(const IMat& basis_cols,
                                                 bool lower_bound_only = false);

// Witness as an ambient vector (basis_cols * coeffs).
QVec witness_vector(const QMat& basis_cols, const ZVec& coeffs);
IVec witness_vector(const IMat& basis_cols, const ZVec& coeffs);

// Membership of the lattice in K_eps = {shortest vector >= eps}: true /
// false / nullopt (enclosure straddles the threshold).
bool in_K_eps(const QMat& basis_cols, const Rational& eps2);
std::optional<bool> in_K_eps(const IMat& basis_cols, const Rational& eps2);

// Exact LLL reduction of a rational Gram matrix (delta = 3/4); returns the
// unimodular transform U such that U^T G U is reduced.
std::vector<ZVec> lll_transform(const QMat& gram);

// Nonzero integer combination c of the transformed collection with
// ||c||^2i <= i^i * det(Gram), i.e. the Minkowski bound for the sublattice.
struct MinkowskiResult {
    QVec vector;
    ZVec coeffs;
    Rational norm2;
};
MinkowskiResult minkowski_short(const std::vector<QVec>& images);

}  // namespace badlatt
