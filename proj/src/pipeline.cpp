#include "kron/pipeline.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace kron {

namespace {

Normalized shortcut(long v, std::string rule)
{
    Normalized n;
    n.value = v;
    n.shortcut = std::move(rule);
    return n;
}

int rows(const Diagram& d) { return (int)d.size(); }

std::vector<int> dims_of(const DiagramTuple& t)
{
    std::vector<int> dims;
    for (auto& d : t) dims.push_back(rows(d));
    return dims;
}

int resolve_threads(int t)
{
    if (t > 0) return t;
    return std::max(1u, std::thread::hardware_concurrency());
}

struct Prepared {
    const RestrictedRootData* d = nullptr;
    IVec lambda, mu;
};

Prepared prepare(const Normalized& n, SigmaKind sigma, const PipelineOptions& opt)
{
    Prepared p;
    try {
        p.d = &root_data_for(dims_of(n.tuple), sigma, opt);
    } catch (const no_deformation&) {
        // the rectangular cone can be lower dimensional (e.g. n_1 = M - 1)
        if (opt.sigma || sigma != SigmaKind::rect) throw;
        p.d = &root_data_for(dims_of(n.tuple), SigmaKind::general, opt);
    }
    p.lambda.assign(p.d->M, 0);
    std::copy(n.tuple[0].begin(), n.tuple[0].end(), p.lambda.begin());
    for (size_t j = 1; j < n.tuple.size(); ++j)
        for (size_t i = 0; i + 1 < n.tuple[j].size(); ++i) p.mu.push_back(n.tuple[j][i] - n.tuple[j][i + 1]);
    return p;
}

SigmaKind choose_sigma(const Normalized& n, const PipelineOptions& opt)
{
    bool rect = is_rectangular(n.tuple[0]);
    if (opt.sigma) {
        if (*opt.sigma == SigmaKind::rect && !rect)
            throw input_error("the rectangular Sigma needs a rectangular first diagram");
        return *opt.sigma;
    }
    return rect ? SigmaKind::rect : SigmaKind::general;
}

KronResult from_shortcut(Mode mode, const Normalized& n, std::vector<std::string> vars)
{
    KronResult r;
    r.mode = mode;
    r.normalized = n;
    r.value = QuasiPolynomial::constant(std::move(vars), Rat(*n.value));
    r.number = *n.value;
    return r;
}

void fill(KronResult& r, BranchResult&& br, const Prepared& p)
{
    r.value = std::move(br.value);
    r.stats = br.stats;
    r.lambda1 = std::move(br.lambda1);
    r.mu1 = std::move(br.mu1);
    r.signs = std::move(br.signs);
    r.dims = p.d->dims;
    r.sigma = p.d->sigma;
}

void apply_limits(BranchRequest& req, const PipelineOptions& opt)
{
    req.threads = resolve_threads(opt.threads);
    req.max_terms = opt.max_terms;
}

}  // namespace

bool is_rectangular(const Diagram& d)
{
    return std::all_of(d.begin(), d.end(), [&](long x) { return x == d.front(); });
}

std::string symbolic_var(int diagram, int row)
{
    if (diagram >= 26) throw input_error("symbolic mode supports at most 26 diagrams");
    return std::string(1, char('a' + diagram)) + std::to_string(row);
}

Normalized normalize(const DiagramTuple& t)
{
    DiagramTuple trimmed;
    for (auto& d : t) {
        if (!is_partition(d)) throw input_error("not a partition: " + print_tuple({d}));
        trimmed.push_back(trim_zeros(d));
    }
    for (auto& d : trimmed)
        if (content(d) != content(trimmed.front())) return shortcut(0, "content mismatch");

    // a one-row diagram is the trivial representation of the symmetric group
    Normalized n;
    for (size_t j = 0; j < trimmed.size(); ++j)
        if (rows(trimmed[j]) >= 2) {
            n.tuple.push_back(trimmed[j]);
            n.origin.push_back((int)j);
        }
    if (n.tuple.empty()) return shortcut(1, "one-row diagrams");
    if (n.tuple.size() == 1) return shortcut(0, "single diagram with several rows");
    if (n.tuple.size() == 2) return shortcut(n.tuple[0] == n.tuple[1] ? 1 : 0, "cauchy");

    std::vector<size_t> order(n.tuple.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return rows(n.tuple[a]) > rows(n.tuple[b]); });
    Normalized sorted;
    for (size_t i : order) {
        sorted.tuple.push_back(n.tuple[i]);
        sorted.origin.push_back(n.origin[i]);
    }

    long M = 1;
    int n1 = rows(sorted.tuple[0]);
    for (size_t j = 1; j < sorted.tuple.size() && M <= n1; ++j) M *= rows(sorted.tuple[j]);
    if (n1 > M) return shortcut(0, "stabilization");
    if (n1 == M && is_rectangular(sorted.tuple[0])) {
        // a power of the determinant restricts trivially to the SU factors
        bool all = true;
        for (size_t j = 1; j < sorted.tuple.size(); ++j) all = all && is_rectangular(sorted.tuple[j]);
        return shortcut(all ? 1 : 0, "determinant");
    }
    return sorted;
}

const RestrictedRootData& root_data_for(const std::vector<int>& dims, SigmaKind sigma, const PipelineOptions& opt)
{
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<RestrictedRootData>> memo;
    std::ostringstream key;
    for (int n : dims) key << n << ',';
    key << (sigma == SigmaKind::rect ? 'r' : 'g') << '/' << opt.seed << '/' << opt.coset_cap << '/' << opt.cache_dir;

    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key.str());
    if (it != memo.end()) {
        if (!it->second) throw no_deformation("no admissible deformation for this signature");
        return *it->second;
    }
    RootDataOptions ro;
    ro.sigma = sigma;
    ro.seed = opt.seed;
    ro.cache_dir = opt.cache_dir;
    ro.coset_cap = opt.coset_cap;
    std::unique_ptr<RestrictedRootData> d;
    try {
        d = std::make_unique<RestrictedRootData>(build_root_data(dims, ro));
    } catch (const no_deformation&) {
        memo.emplace(key.str(), nullptr);
        throw;
    }
    return *memo.emplace(key.str(), std::move(d)).first->second;
}

KronResult kronecker_number(const DiagramTuple& t, const PipelineOptions& opt)
{
    auto n = normalize(t);
    if (n.value) return from_shortcut(Mode::numeric, n, {});
    auto p = prepare(n, choose_sigma(n, opt), opt);
    auto req = numeric_request(p.lambda, p.mu);
    apply_limits(req, opt);
    KronResult r;
    r.mode = Mode::numeric;
    r.normalized = n;
    fill(r, branch_quasipoly(*p.d, req), p);
    Rat v = r.value.evaluate(std::vector<long>{});
    if (v.get_den() != 1 || sgn(v) < 0) throw representation_fault("kronecker_number: value " + v.get_str() + " is not a nonnegative integer");
    r.number = v.get_num();
    return r;
}

KronResult kronecker_dilated(const DiagramTuple& t, const PipelineOptions& opt)
{
    auto n = normalize(t);
    if (n.value) return from_shortcut(Mode::dilated, n, {"k"});
    auto p = prepare(n, choose_sigma(n, opt), opt);
    auto req = dilated_request(p.lambda, p.mu, "k");
    apply_limits(req, opt);
    KronResult r;
    r.mode = Mode::dilated;
    r.normalized = n;
    fill(r, branch_quasipoly(*p.d, req), p);
    return r;
}

KronResult kronecker_symbolic(const DiagramTuple& t, const PipelineOptions& opt)
{
    auto n = normalize(t);
    if (n.value) return from_shortcut(Mode::symbolic, n, {});
    if (opt.sigma && *opt.sigma == SigmaKind::rect)
        throw input_error("symbolic mode needs the general Sigma: the rows of the first diagram vary independently");
    auto p = prepare(n, SigmaKind::general, opt);
    const auto& d = *p.d;

    BranchRequest req = numeric_request(p.lambda, p.mu);
    req.lambda_const.assign(d.M, 0);
    req.mu_const.assign(d.r, 0);
    // the last row of each later diagram is content minus the others
    auto add_var = [&](int diagram, int row, int lam_pos, int factor, int row_in_factor) {
        req.vars.push_back(symbolic_var(n.origin[diagram], row));
        IVec lc(d.M, 0), mc(d.r, 0);
        if (lam_pos >= 0) lc[lam_pos] = 1;
        for (size_t j = 1; j < n.tuple.size(); ++j) {
            int nj = rows(n.tuple[j]);
            IVec u(nj, 0);
            u[nj - 1] = lam_pos >= 0 ? 1 : 0;
            if ((int)j == factor) {
                u[row_in_factor] += 1;
                u[nj - 1] -= 1;
            }
            for (int m = 0; m + 1 < nj; ++m) mc[d.factor_offset[j - 1] + m] = u[m] - u[m + 1];
        }
        req.lambda_cols.push_back(std::move(lc));
        req.mu_cols.push_back(std::move(mc));
    };
    for (int i = 0; i < rows(n.tuple[0]); ++i) add_var(0, i + 1, i, -1, -1);
    for (size_t j = 1; j < n.tuple.size(); ++j)
        for (int i = 0; i + 1 < rows(n.tuple[j]); ++i) add_var((int)j, i + 1, -1, (int)j, i);
    if ((int)req.vars.size() > mono::max_vars)
        throw cap_exceeded("symbolic mode supports at most " + std::to_string(mono::max_vars) + " variables, this tuple needs " +
                           std::to_string(req.vars.size()));
    apply_limits(req, opt);

    KronResult r;
    r.mode = Mode::symbolic;
    r.normalized = n;
    fill(r, branch_quasipoly(d, req), p);
    return r;
}

RationalGF hilbert_series(const DiagramTuple& t, const PipelineOptions& opt)
{
    if (t.empty()) throw input_error("hilbert: empty tuple");
    for (auto& d : t) {
        if (!is_partition(d)) throw input_error("not a partition: " + print_tuple({d}));
        if (!is_rectangular(trim_zeros(d))) throw input_error("hilbert: diagram " + print_tuple({d}) + " is not rectangular");
        if (content(d) != content(t.front())) throw input_error("hilbert: contents differ");
    }
    return generating_function(kronecker_dilated(t, opt).value);
}

std::optional<long> saturation_factor(const QuasiPolynomial& dilated)
{
    if (dilated.nvars() != 1) throw std::invalid_argument("saturation_factor: expects a quasi-polynomial in one variable");
    if (dilated.is_zero()) return std::nullopt;
    auto ps = dilated.periods();
    long Q = std::accumulate(ps.begin(), ps.end(), 1L, [](long a, int b) { return std::lcm(a, (long)b); });
    // a nonzero coset polynomial of degree d cannot vanish at d + 1 points of its coset
    long bound = Q * (dilated.degree() + 1);
    for (long k = 1; k <= bound; ++k)
        if (sgn(dilated.evaluate(std::vector<long>{k})) > 0) return k;
    return std::nullopt;
}

}  // namespace kron
