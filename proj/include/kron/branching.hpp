#pragma once

#include "kron/osbases.hpp"
#include "kron/quasipoly.hpp"
#include "kron/residue.hpp"
#include "kron/rootdata.hpp"

#include <string>
#include <vector>

namespace kron {

// Restricted Delta_u under w, flipped so every entry pairs positively with Y.
struct PolarizedSystem {
    std::vector<IVec> psi;          // L coordinates, one entry per nonzero restriction
    std::vector<int> root;          // index into delta_u for each entry
    std::vector<bool> flipped;
    int s = 0;                      // number of flips
    IVec g;                         // minus the sum of flipped entries
    std::vector<int> zero;          // delta_u indices with vanishing restriction
};

// Throws std::domain_error on a vanishing restriction unless allow_zero.
PolarizedSystem polarize(const Perm& w, const RestrictedRootData& d, bool allow_zero = false);

// Psi_{w,u} minus DeltaK+ (list difference), keeping entries with <psi, gamma> = 0 mod q.
std::vector<IVec> pole_filter(const std::vector<IVec>& psi_w_u, const std::vector<IVec>& delta_k_plus,
                              const IVec& gamma, long q);

// Affine family of branching arguments:
//   lambda(x) = lambda_const + sum_k x_k lambda_cols[k]   (U(M) coordinates)
//   mu(x)     = mu_const + sum_k x_k mu_cols[k]           (Dynkin coordinates of K)
// The base point (lambda0, mu0) plus the deformation selects the tope.
struct BranchRequest {
    IVec lambda0, mu0;
    IVec lambda_const, mu_const;
    std::vector<std::string> vars;
    std::vector<IVec> lambda_cols, mu_cols;
    bool force_epsilon = false;  // use the constant-term path for every coset
    bool polarize_factors = true;
    int threads = 1;
    long max_terms = 0;          // residues; 0 = unlimited
};

BranchRequest numeric_request(const IVec& lambda0, const IVec& mu0);
BranchRequest dilated_request(const IVec& lambda0, const IVec& mu0, const std::string& var = "k");

struct BranchTermKey {
    Perm w;
    IVec gamma;
    OSBasis sigma;
};

struct BranchStats {
    long cosets = 0;
    long pairs = 0;     // (w, gamma) pairs whose pole set spans
    long residues = 0;
    double seconds = 0;
};

struct BranchResult {
    QuasiPolynomial value;
    BranchStats stats;
    RVec lambda1, mu1;   // tope witness
    std::string signs;   // sign of <xi_w, X> per coset rep w and normal X, row-major
};

// Sigma-dominance of lambda0 and dominance of mu0; throws std::invalid_argument.
void check_branch_input(const RestrictedRootData& d, const IVec& lambda0, const IVec& mu0);

// Terms of the triple sum in enumeration order, for diagnostics.
std::vector<BranchTermKey> branch_terms(const RestrictedRootData& d, const BranchRequest& req);

BranchResult branch_quasipoly(const RestrictedRootData& d, const BranchRequest& req);

}  // namespace kron
