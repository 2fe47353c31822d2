#pragma once

#include "kron/diagram.hpp"
#include "kron/linalg.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kron {

// Branching U(M) -> K = prod_{j>=2} SU(n_j), M = n_2 ... n_s, for the
// signature (n_1, ..., n_s). Tensor position t has mixed-radix digits with
// the first K factor fastest. K weights use Dynkin coordinates per factor,
// K coweights use coroot coordinates, so the pairing is the dot product.
// The residue engine works in coordinates of the lattice L spanned by Psi
// (fields suffixed _lat); with equal contents every branching argument lies in L.

enum class SigmaKind { general, rect };

struct RootDataOptions {
    SigmaKind sigma = SigmaKind::general;
    std::vector<bool> kept;         // per K factor; empty means all kept
    IVec y1_override;               // secondary regular element on U(M), empty = default
    bool sample_deformation = true;
    uint64_t seed = 0x5eed'c0ffee;
    std::string cache_dir;          // empty disables the on-disk cache
    double coset_cap = 1e7;
};

// No (eps, delta) passed the deformation predicate, typically because the
// branching cone of the chosen Sigma is not solid.
struct no_deformation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Perm = std::vector<int>;
using RootPair = std::pair<int, int>;  // eps_a - eps_b, a < b

struct DeformationCheck {
    Rat min_abs;  // over all (w, X) of |<w(eps)| - delta, X>|
    Rat max_abs;
    bool ok() const { return sgn(min_abs) > 0 && max_abs < frac(1, 2); }
};

struct RestrictedRootData {
    std::vector<int> dims;  // (n_1, ..., n_s)
    int n1 = 0;
    int M = 1;
    int r = 0;  // rank of the (kept part of) K
    SigmaKind sigma = SigmaKind::general;
    std::vector<int> blocks;    // composition of M cut out by Sigma
    std::vector<int> block_of;  // position -> block
    std::vector<bool> kept;
    std::vector<int> factor_offset;  // first coordinate of each kept factor, -1 if dropped

    std::vector<IVec> restriction;  // restriction[t] = restricted eps_t, length r
    IVec Y;                         // coroot coordinates
    IVec Yg;                        // Y embedded in U(M), length M
    IVec Y1g;                       // secondary element (dropped factors)

    std::vector<RootPair> delta_u;
    std::vector<IVec> psi;              // nonzero restrictions of the positive roots, positive on Y
    std::vector<RootPair> psi_roots;    // originating roots, same order
    std::vector<RootPair> zero_roots;   // positive roots restricting to zero
    std::vector<IVec> delta_k_plus;
    std::vector<IVec> psi_distinct;     // first-occurrence order

    std::vector<IVec> lattice;          // Z-basis of L, Dynkin coordinates
    RMat lattice_inv;                   // Dynkin -> L coordinates
    std::vector<IVec> psi_lat;
    std::vector<IVec> psi_distinct_lat;
    std::vector<IVec> delta_k_plus_lat;
    IVec Y_lat;                         // dual coordinates, <psi_lat, Y_lat> = <psi, Y>
    std::vector<IVec> normals;          // dual coordinates of L
    long q = 1;
    std::vector<Perm> coset_reps;

    RVec eps;    // length M, zero off the first block structure
    RVec delta;  // length r

    bool regular() const { return zero_roots.empty(); }
    IVec restrict_weight(const IVec& w) const;
    RVec restrict_weight(const RVec& w) const;
    RVec to_lattice(const RVec& v) const;
    // throws std::domain_error if v is not in L
    IVec to_lattice(const IVec& v) const;
};

RestrictedRootData build_root_data(const std::vector<int>& dims, const RootDataOptions& opt = {});

// Minimal-length representatives of S_M / (S_{b_1} x ... x S_{b_k}); the
// stabilizer blocks are consecutive ranges of sizes `blocks`.
std::vector<Perm> weyl_coset_reps(const std::vector<int>& blocks, double cap = 1e7);

std::vector<IVec> admissible_hyperplanes(const std::vector<IVec>& psi, int r);

// lcm over bases of psi of the exponent of Z^r / Z sigma.
long lattice_index(const std::vector<IVec>& psi, int r);
// Smallest d with d Z^r contained in Z sigma.
long basis_exponent(const std::vector<IVec>& sigma);

// All gamma in Z^r / q Z^r for which {psi : <psi, gamma> = 0 mod q} spans,
// i.e. the union over bases sigma of q (Z sigma)^* / q Z^r. Sorted.
std::vector<IVec> spanning_gammas(const std::vector<IVec>& psi, int r, long q);

// Dynkin coordinates of the positive roots of prod SU(n_j) over kept factors.
std::vector<IVec> positive_roots_k(const RestrictedRootData& d);

// w(v)_b = v_{w^{-1}(b)}, i.e. w(eps_a) = eps_{w(a)}.
RVec apply_perm(const Perm& w, const RVec& v);
IVec apply_perm(const Perm& w, const IVec& v);

DeformationCheck check_deformation(const RestrictedRootData& d, const RVec& eps, const RVec& delta);
void sample_deformation(RestrictedRootData& d, uint64_t seed);

// Cache helpers; the key is the signature (dims, blocks, kept).
std::string cache_key(const RestrictedRootData& d);
bool cache_load(RestrictedRootData& d, const std::string& dir);
void cache_store(const RestrictedRootData& d, const std::string& dir);
std::string default_cache_dir();

struct CacheEntryStatus {
    std::string file;
    bool valid;
    std::string message;
};
std::vector<CacheEntryStatus> cache_list(const std::string& dir);
// Re-verifies every entry; bad files are renamed to *.bad.
std::vector<CacheEntryStatus> cache_verify(const std::string& dir);
int cache_clear(const std::string& dir);

}  // namespace kron
