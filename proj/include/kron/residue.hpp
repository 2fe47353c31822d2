#pragma once

#include "kron/linalg.hpp"
#include "kron/poly.hpp"

#include <vector>

namespace kron {

// One factor of a product of exponential type, in the coordinates
// z_j = <z, sigma_j> of an ordered basis, l(z) = sum_j coords[j] z_j:
//   pole  1 / (1 - zeta^a e^{-l})
//   numer (1 - zeta^a e^{-l})
//   inv   1 / l
enum class FactorKind { pole, numer, inv };

struct ExpFactor {
    FactorKind kind = FactorKind::pole;
    int64_t zeta = 0;  // exponent a of zeta_q
    RVec coords;
    int mult = 1;
};

// f(z) = e^{<v(x), z>} * prod factors, with <v(x), z> = sum_j (lin[j] . x + u1[j]) z_j.
struct ResidueProblem {
    int R = 0;  // number of variables
    int q = 1;  // roots of unity live in Q(zeta_q)
    std::vector<ExpFactor> factors;
    RVec u1;                 // length R
    std::vector<RVec> lin;   // R rows of length nparams; may be empty when nparams = 0
    int nparams = 0;
};

struct identically_singular : std::domain_error {
    using std::domain_error::domain_error;
};

// Res_{z_1} ... Res_{z_R} f, innermost z_R, as a polynomial in the parameters.
// No 1/|det sigma| normalization. T is Rat when q <= 2, Cyclo otherwise.
template <class T>
Poly<T> iterated_residue_raw(const ResidueProblem& p);

// Dispatches on q and returns coefficients in Q(zeta_q), divided by det.
PolyC iterated_residue(const ResidueProblem& p, const Rat& det);

// Laurent coefficients of 1 / (1 - zeta_q^a e^{-c z}) from z^{-1} up to z^{order}
// (the z^{-1} entry is zero unless zeta = 1).
std::vector<Cyclo> expand_one_minus_exp(int q, int64_t a, const Rat& c, int order);

// Bernoulli numbers B_n with B_1 = -1/2; memoized.
Rat bernoulli(int n);

// Constant term in an extra innermost variable eps: appends eps as variable
// R+1 with the given per-factor coordinates and exponent coordinate, and adds
// the 1/eps factor, so that the residue in eps is the constant term.
ResidueProblem with_epsilon_constant_term(const ResidueProblem& p, const RVec& factor_eps, const Rat& exp_eps);

// Szenes-Vergne formula for the vector partition function on the tope of
// xi, evaluated at mu (mu in the closure of that tope). psi spans Z^r.
Rat partition_function_residue(const std::vector<IVec>& psi, const IVec& mu, const RVec& xi);

}  // namespace kron
