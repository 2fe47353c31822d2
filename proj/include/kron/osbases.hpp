#pragma once

#include "kron/linalg.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace kron {

struct OSBasis {
    std::vector<int> indices;  // increasing positions into the weight list
    Rat det;                   // |det| in lattice coordinates
};

// Solves xi = sum c_i sigma_i; true iff every c_i > 0.
bool cone_membership(const std::vector<IVec>& sigma, const RVec& xi, RVec* coords = nullptr);

// Enumerates OS bases of an ordered list (at most 64 entries) top-down along
// the chain of flats spanned by their tails. Hyperplanes of each flat are
// memoized, so reuse one enumerator for many regular vectors.
class OSEnumerator {
public:
    explicit OSEnumerator(std::vector<IVec> psi);

    // Bases adapted to the tope of xi; throws std::domain_error when xi lies
    // on an admissible hyperplane. Empty if the list does not span.
    std::vector<OSBasis> adapted(const RVec& xi);
    // All OS bases, no cone condition.
    std::vector<OSBasis> all();

    const std::vector<IVec>& vectors() const { return psi_; }

private:
    struct Sub {
        uint64_t mask;
        std::vector<int> basis;  // rank-many independent members
    };
    const std::vector<Sub>& hyperplanes_of(uint64_t flat, int rank);
    void walk(uint64_t flat, int rank, const RVec* xi, std::vector<int>& chosen, std::vector<OSBasis>& out);
    OSBasis finish(const std::vector<int>& chosen) const;

    std::vector<IVec> psi_;
    int r_ = 0;
    bool spans_ = false;
    std::unordered_map<uint64_t, std::vector<Sub>> memo_;
};

std::vector<OSBasis> os_bases_adapted(const std::vector<IVec>& psi, const RVec& xi);

// Definitional oracle: every r-subset, OS condition checked literally, then the cone test.
std::vector<OSBasis> os_bases_bruteforce(const std::vector<IVec>& psi, const RVec* xi);

}  // namespace kron
