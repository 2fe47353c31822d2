#pragma once

#include "kron/exact.hpp"

#include <vector>

namespace kron {

using IVec = std::vector<long>;
using RVec = std::vector<Rat>;
using RMat = std::vector<RVec>;  // row-major

long dot(const IVec& a, const IVec& b);
Rat dot(const RVec& a, const IVec& b);
Rat dot(const RVec& a, const RVec& b);
RVec to_rat(const IVec& v);

// Rank of a list of integer vectors (fraction-free elimination).
int rank_of(const std::vector<IVec>& vecs);
// True if v lies in the span of the (independent or not) vectors.
bool in_span(const std::vector<IVec>& vecs, const IVec& v);

// Inverse of the square matrix whose columns are cols; throws if singular.
RMat inverse_of_columns(const std::vector<IVec>& cols);
RVec mat_vec(const RMat& A, const RVec& v);
RVec mat_vec(const RMat& A, const IVec& v);
Int det_of(const std::vector<IVec>& cols);

// Coordinates of v in the basis of independent vectors `basis` (not necessarily
// spanning); v must lie in their span.
RVec coordinates_in(const std::vector<IVec>& basis, const RVec& v);

// Primitive integer normal of the hyperplane spanned by r-1 independent
// vectors in Z^r, first nonzero coordinate positive.
IVec primitive_normal(const std::vector<IVec>& vecs);

// Z-basis (Hermite normal form rows) of the lattice generated by vecs.
std::vector<IVec> lattice_basis(const std::vector<IVec>& vecs);

}  // namespace kron
