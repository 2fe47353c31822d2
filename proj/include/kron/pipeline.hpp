#pragma once

#include "kron/branching.hpp"
#include "kron/diagram.hpp"
#include "kron/quasipoly.hpp"
#include "kron/rootdata.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kron {

struct PipelineOptions {
    std::string cache_dir = default_cache_dir();  // "" disables the disk cache
    uint64_t seed = 0x5eed'c0ffee;
    int threads = 0;                 // 0 = hardware concurrency
    long max_terms = 0;              // residues per call; 0 = unlimited
    std::optional<SigmaKind> sigma;  // expert override of the automatic choice
    double coset_cap = 1e7;
};

// Result of the trivial-rule layer. When `shortcut` is set the answer is
// value (as a constant in k for dilated mode); otherwise `tuple` is the
// reduced problem with n_1 >= n_2 >= ... >= n_s >= 2, s >= 3, n_1 <= M.
struct Normalized {
    DiagramTuple tuple;
    std::vector<int> origin;   // input position of each reduced diagram
    std::optional<long> value;
    std::string shortcut;      // rule name when value is set
};

// Throws input_error on a malformed diagram.
Normalized normalize(const DiagramTuple& t);

enum class Mode { numeric, dilated, symbolic };

struct KronResult {
    Mode mode = Mode::numeric;
    QuasiPolynomial value;      // constant for numeric mode
    Int number;                 // numeric mode only
    Normalized normalized;
    std::vector<int> dims;      // empty when a shortcut answered
    SigmaKind sigma = SigmaKind::general;
    // validity certificate: tope witness and signs of <xi_w, X>
    RVec lambda1, mu1;
    std::string signs;
    BranchStats stats;
};

// Variable names of symbolic mode: diagram j of the input (0-based) is
// letter 'a' + j, row i (1-based) gets the suffix i, e.g. "b2".
std::string symbolic_var(int diagram, int row);

KronResult kronecker_number(const DiagramTuple& t, const PipelineOptions& opt = {});
KronResult kronecker_dilated(const DiagramTuple& t, const PipelineOptions& opt = {});
// Every row of the first reduced diagram is a variable; for the others the
// last row is eliminated through the common content.
KronResult kronecker_symbolic(const DiagramTuple& t, const PipelineOptions& opt = {});

bool is_rectangular(const Diagram& d);
// Requires every diagram rectangular with a common content.
RationalGF hilbert_series(const DiagramTuple& t, const PipelineOptions& opt = {});

// Smallest k >= 1 with g(k t) > 0, or nullopt when g(k t) = 0 for all k >= 1.
std::optional<long> saturation_factor(const QuasiPolynomial& dilated);

// Root data shared across calls in this process, keyed by signature and options.
const RestrictedRootData& root_data_for(const std::vector<int>& dims, SigmaKind sigma, const PipelineOptions& opt);

}  // namespace kron
