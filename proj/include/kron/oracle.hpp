#pragma once

#include "kron/diagram.hpp"
#include "kron/exact.hpp"

#include <unordered_map>
#include <vector>

namespace kron {

using IVec = std::vector<long>;

// Number of ways to write target as a nonnegative integer combination of Psi.
// Psi must span a pointed cone.
Int partition_count(const std::vector<IVec>& Psi, const IVec& target);

// Weight multiplicities of Sym^c(C^{n_1} x ... x C^{n_s}) for the torus of prod U(n_j).
struct WeightMultTable {
    std::vector<int> dims;
    int c = 0;
    std::unordered_map<uint64_t, Int> counts;  // packed concatenated weight

    Int get(const IVec& weight) const;
    Int total() const;
};

WeightMultTable weight_table(const std::vector<int>& dims, int c);

// g(nu_1, ..., nu_s) via the alternating sum over prod S_{n_j}.
Int kronecker_from_table(const WeightMultTable& table, const DiagramTuple& t);
Int kronecker_bruteforce(const DiagramTuple& t, int content_cap = 10);

}  // namespace kron
