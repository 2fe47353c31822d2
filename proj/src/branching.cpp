#include "kron/branching.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>

namespace kron {

PolarizedSystem polarize(const Perm& w, const RestrictedRootData& d, bool allow_zero)
{
    PolarizedSystem p;
    p.g.assign(d.r, 0);
    for (size_t i = 0; i < d.delta_u.size(); ++i) {
        auto [a, b] = d.delta_u[i];
        int wa = w[a], wb = w[b];
        IVec v(d.r);
        bool zero = true;
        for (int k = 0; k < d.r; ++k) {
            v[k] = d.restriction[wa][k] - d.restriction[wb][k];
            zero = zero && v[k] == 0;
        }
        if (zero) {
            if (!allow_zero) throw std::domain_error("polarize: restricted root vanishes");
            p.zero.push_back((int)i);
            continue;
        }
        v = d.to_lattice(v);
        bool flip = dot(v, d.Y_lat) < 0;
        if (flip) {
            for (auto& x : v) x = -x;
            ++p.s;
            for (int k = 0; k < d.r; ++k) p.g[k] -= v[k];
        }
        p.psi.push_back(std::move(v));
        p.root.push_back((int)i);
        p.flipped.push_back(flip);
    }
    return p;
}

std::vector<IVec> pole_filter(const std::vector<IVec>& psi_w_u, const std::vector<IVec>& delta_k_plus,
                              const IVec& gamma, long q)
{
    std::map<IVec, int> remove;
    for (auto& b : delta_k_plus) ++remove[b];
    std::vector<IVec> out;
    for (auto& v : psi_w_u) {
        auto it = remove.find(v);
        if (it != remove.end() && it->second > 0) {
            --it->second;
            continue;
        }
        if (mod_floor(dot(v, gamma), q) == 0) out.push_back(v);
    }
    return out;
}

BranchRequest numeric_request(const IVec& lambda0, const IVec& mu0)
{
    BranchRequest r;
    r.lambda0 = r.lambda_const = lambda0;
    r.mu0 = r.mu_const = mu0;
    return r;
}

BranchRequest dilated_request(const IVec& lambda0, const IVec& mu0, const std::string& var)
{
    BranchRequest r;
    r.lambda0 = lambda0;
    r.mu0 = mu0;
    r.lambda_const.assign(lambda0.size(), 0);
    r.mu_const.assign(mu0.size(), 0);
    r.vars = {var};
    r.lambda_cols = {lambda0};
    r.mu_cols = {mu0};
    return r;
}

void check_branch_input(const RestrictedRootData& d, const IVec& lambda0, const IVec& mu0)
{
    if ((int)lambda0.size() != d.M) throw std::invalid_argument("branching: lambda has wrong length");
    if ((int)mu0.size() != d.r) throw std::invalid_argument("branching: mu has wrong length");
    for (int a = 0; a + 1 < d.M; ++a) {
        if (lambda0[a] < lambda0[a + 1]) throw std::invalid_argument("branching: lambda is not dominant");
        if (d.block_of[a] == d.block_of[a + 1] && lambda0[a] != lambda0[a + 1])
            throw std::invalid_argument("branching: lambda is not singular along Sigma");
    }
    for (long x : mu0)
        if (x < 0) throw std::invalid_argument("branching: mu is not dominant");
}

namespace {

using Form = QuasiPolynomial::Form;

struct Factor {
    FactorKind kind;
    IVec z;     // L coordinates
    Rat eps;    // coefficient of the constant-term variable
    int mult;
};

struct Context {
    const RestrictedRootData& d;
    const BranchRequest& req;
    long q;
    std::vector<IVec> gammas;
    bool eps_mode;
    IVec y1;  // on U(M)
    int P;
    RVec lambda1, mu1;
    std::atomic<long> residues{0};
};

IVec restricted_minus(const RestrictedRootData& d, const Perm& w, const IVec& lambda, const IVec& mu)
{
    IVec v = d.restrict_weight(apply_perm(w, lambda));
    for (int k = 0; k < d.r; ++k) v[k] -= mu[k];
    return v;
}

long pair_y1(const IVec& y1, const Perm& w, const IVec& lambda)
{
    long s = 0;
    for (size_t a = 0; a < lambda.size(); ++a) s += lambda[a] * y1[w[a]];
    return s;
}

struct CosetWork {
    std::vector<Factor> factors;
    std::vector<int> os_candidates;   // polarized pole directions, indices into psi_distinct_lat
    IVec b;                           // constant exponent (L coordinates)
    std::vector<IVec> A;              // parameter columns (L coordinates)
    Rat eps_const;
    RVec eps_lin;
    int sign = 1;
    RVec xi;
};

CosetWork prepare_coset(const Context& c, const Perm& w)
{
    const auto& d = c.d;
    const auto& req = c.req;
    CosetWork cw;
    auto pol = polarize(w, d, c.eps_mode);
    bool polar = req.polarize_factors;

    cw.b = d.to_lattice(restricted_minus(d, w, req.lambda_const, req.mu_const));
    for (int k = 0; k < c.P; ++k) {
        IVec col = restricted_minus(d, w, req.lambda_cols[k], req.mu_cols[k]);
        try {
            cw.A.push_back(d.to_lattice(col));
        } catch (const std::domain_error&) {
            throw std::domain_error("branching: parameter direction leaves the lattice spanned by the roots");
        }
    }
    {
        RVec v = d.restrict_weight(apply_perm(w, c.lambda1));
        for (int k = 0; k < d.r; ++k) v[k] -= c.mu1[k];
        cw.xi = d.to_lattice(v);
    }

    auto eps_of = [&](int root) -> long {
        auto [a, b] = d.delta_u[root];
        return c.y1[w[a]] - c.y1[w[b]];
    };

    if (c.eps_mode) {
        cw.eps_const = pair_y1(c.y1, w, req.lambda_const);
        cw.eps_lin.resize(c.P);
        for (int k = 0; k < c.P; ++k) cw.eps_lin[k] = pair_y1(c.y1, w, req.lambda_cols[k]);
    }

    std::map<IVec, int> cancel;
    if (!c.eps_mode && polar)
        for (auto& beta : d.delta_k_plus_lat) ++cancel[beta];
    for (size_t i = 0; i < pol.psi.size(); ++i) {
        IVec z = pol.psi[i];
        Rat e = c.eps_mode ? Rat(eps_of(pol.root[i])) : Rat(0);
        if (pol.flipped[i]) {
            if (polar) {
                e = -e;
                // 1/(1 - e^{-l}) = -e^{l} / (1 - e^{l})
                if (c.eps_mode) cw.eps_const -= e;
            } else {
                for (auto& x : z) x = -x;
            }
        }
        auto it = cancel.find(z);
        if (it != cancel.end() && it->second > 0) {
            --it->second;
            continue;
        }
        cw.factors.push_back({FactorKind::pole, z, e, 1});
    }
    for (int i : pol.zero) cw.factors.push_back({FactorKind::pole, IVec(d.r, 0), Rat(eps_of(i)), 1});
    if (!c.eps_mode && polar) {
        // Delta_k+ entries without a matching pole stay as numerators
        for (auto& [beta, left] : cancel)
            for (int m = 0; m < left; ++m) cw.factors.push_back({FactorKind::numer, beta, Rat(0), 1});
    } else {
        for (auto& beta : d.delta_k_plus_lat) cw.factors.push_back({FactorKind::numer, beta, Rat(0), 1});
    }

    if (polar) {
        cw.sign = pol.s % 2 ? -1 : 1;
        for (int k = 0; k < d.r; ++k) cw.b[k] += pol.g[k];
    }

    // OS candidates: polarized pole directions, in the global order of psi_distinct_lat
    std::vector<bool> present(d.psi_distinct_lat.size(), false);
    std::map<IVec, int> pos;
    for (size_t i = 0; i < d.psi_distinct_lat.size(); ++i) pos[d.psi_distinct_lat[i]] = (int)i;
    for (auto& f : cw.factors) {
        if (f.kind != FactorKind::pole) continue;
        IVec z = f.z;
        if (std::all_of(z.begin(), z.end(), [](long x) { return x == 0; })) continue;
        if (dot(z, d.Y_lat) < 0)
            for (auto& x : z) x = -x;
        present[pos.at(z)] = true;
    }
    for (size_t i = 0; i < present.size(); ++i)
        if (present[i]) cw.os_candidates.push_back((int)i);
    return cw;
}

struct Accumulator {
    QuasiPolynomial value;
    BranchStats stats;
};

// Runs the (gamma, sigma) loops of one coset. keys != nullptr only lists terms.
void run_coset(Context& c, const Perm& w, Accumulator& acc, std::vector<BranchTermKey>* keys,
               std::unordered_map<uint64_t, OSEnumerator>& enums)
{
    const auto& d = c.d;
    CosetWork cw = prepare_coset(c, w);
    const int r = d.r;
    ++acc.stats.cosets;

    for (auto& g : c.gammas) {
        long dg = c.q;
        for (long x : g) dg = std::gcd(dg, x);
        int qq = (int)(c.q / dg);
        IVec gg(r);
        for (int k = 0; k < r; ++k) gg[k] = g[k] / dg;

        uint64_t mask = 0;
        std::vector<IVec> cand;
        for (int i : cw.os_candidates) {
            const IVec& v = d.psi_distinct_lat[i];
            if (mod_floor(dot(v, gg), qq) == 0) {
                cand.push_back(v);
                mask |= 1ull << i;
            }
        }
        if (rank_of(cand) < r) continue;
        ++acc.stats.pairs;
        auto it = enums.find(mask);
        if (it == enums.end()) it = enums.emplace(mask, OSEnumerator(cand)).first;
        auto bases = it->second.adapted(cw.xi);
        if (bases.empty()) continue;

        Form form(c.P);
        for (int k = 0; k < c.P; ++k) form[k] = mod_floor(dot(cw.A[k], gg), qq);
        Cyclo unit = cyclo_pow(qq, dot(cw.b, gg)) * Rat(cw.sign);

        for (auto& basis : bases) {
            if (keys) {
                keys->push_back({w, g, basis});
                continue;
            }
            long n = ++c.residues;
            if (c.req.max_terms > 0 && n > c.req.max_terms)
                throw cap_exceeded("branching: residue count exceeds --max-terms");
            std::vector<IVec> sigma;
            for (int i : basis.indices) sigma.push_back(cand[i]);
            RMat inv = inverse_of_columns(sigma);
            ResidueProblem pr;
            pr.R = r;
            pr.q = qq;
            pr.nparams = c.P;
            for (auto& f : cw.factors)
                pr.factors.push_back({f.kind, -dot(f.z, gg), mat_vec(inv, f.z), f.mult});
            pr.u1 = mat_vec(inv, cw.b);
            if (c.P) {
                pr.lin.assign(r, RVec(c.P));
                for (int k = 0; k < c.P; ++k) {
                    RVec col = mat_vec(inv, cw.A[k]);
                    for (int j = 0; j < r; ++j) pr.lin[j][k] = col[j];
                }
            }
            if (c.eps_mode) {
                RVec fe;
                for (auto& f : cw.factors) fe.push_back(f.eps);
                pr = with_epsilon_constant_term(pr, fe, cw.eps_const);
                if (c.P) pr.lin.back() = cw.eps_lin;
            }
            PolyC res = iterated_residue(pr, basis.det);
            ++acc.stats.residues;
            if (res.is_zero()) continue;
            res.scale(unit);
            acc.value.add(qq, form, res);
        }
    }
}

std::unique_ptr<Context> make_context(const RestrictedRootData& d, const BranchRequest& req)
{
    check_branch_input(d, req.lambda0, req.mu0);
    int P = (int)req.vars.size();
    if ((int)req.lambda_cols.size() != P || (int)req.mu_cols.size() != P)
        throw std::invalid_argument("branching: parameter columns do not match the variables");
    if ((int)req.lambda_const.size() != d.M || (int)req.mu_const.size() != d.r)
        throw std::invalid_argument("branching: constant part has wrong length");
    if (d.eps.size() != (size_t)d.M || d.delta.size() != (size_t)d.r)
        throw std::invalid_argument("branching: root data carries no deformation");

    auto c = std::unique_ptr<Context>(new Context{d, req, d.q, {}, false, d.Y1g, P, {}, {}});
    c->eps_mode = !d.regular() || req.force_epsilon;
    if (d.psi_distinct_lat.size() > 64) throw cap_exceeded("branching: more than 64 distinct restricted roots");
    if (c->eps_mode && std::all_of(c->y1.begin(), c->y1.end(), [](long x) { return x == 0; })) c->y1 = d.Yg;

    std::vector<IVec> gamma_list = d.psi_distinct_lat;
    if (!c->eps_mode) {
        std::map<IVec, int> count;
        for (auto& v : d.psi_lat) ++count[v];
        for (auto& v : d.delta_k_plus_lat) --count[v];
        std::vector<IVec> sub;
        for (auto& v : d.psi_distinct_lat)
            if (count[v] > 0) sub.push_back(v);
        if (rank_of(sub) == d.r) gamma_list = sub;
    } else if (d.regular()) {
        c->q = lattice_index(d.psi_distinct_lat, d.r);
    }
    c->gammas = spanning_gammas(gamma_list, d.r, c->q);

    c->lambda1 = to_rat(req.lambda0);
    for (int a = 0; a < d.M; ++a) c->lambda1[a] += d.eps[a];
    c->mu1 = to_rat(req.mu0);
    for (int k = 0; k < d.r; ++k) c->mu1[k] += d.delta[k];
    return c;
}

bool constant_in_lattice(const RestrictedRootData& d, const BranchRequest& req)
{
    Perm id(d.M);
    std::iota(id.begin(), id.end(), 0);
    try {
        d.to_lattice(restricted_minus(d, id, req.lambda_const, req.mu_const));
    } catch (const std::domain_error&) {
        return false;
    }
    return true;
}

}  // namespace

std::vector<BranchTermKey> branch_terms(const RestrictedRootData& d, const BranchRequest& req)
{
    auto c = make_context(d, req);
    std::vector<BranchTermKey> keys;
    if (!constant_in_lattice(d, req)) return keys;
    Accumulator acc{QuasiPolynomial(req.vars), {}};
    std::unordered_map<uint64_t, OSEnumerator> enums;
    for (auto& w : d.coset_reps) run_coset(*c, w, acc, &keys, enums);
    return keys;
}

BranchResult branch_quasipoly(const RestrictedRootData& d, const BranchRequest& req)
{
    auto t0 = std::chrono::steady_clock::now();
    auto c = make_context(d, req);
    BranchResult out;
    out.value = QuasiPolynomial(req.vars);
    out.lambda1 = c->lambda1;
    out.mu1 = c->mu1;
    for (auto& w : d.coset_reps) {
        RVec v = d.restrict_weight(apply_perm(w, c->lambda1));
        for (int k = 0; k < d.r; ++k) v[k] -= c->mu1[k];
        v = d.to_lattice(v);
        for (auto& X : d.normals) out.signs.push_back(sgn(dot(v, X)) > 0 ? '+' : '-');
    }
    if (!constant_in_lattice(d, req)) return out;

    int nthreads = std::max(1, std::min<int>(req.threads, (int)d.coset_reps.size()));
    std::vector<Accumulator> accs(nthreads, Accumulator{QuasiPolynomial(req.vars), {}});
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex fail_mu;
    auto worker = [&](int t) {
        std::unordered_map<uint64_t, OSEnumerator> enums;
        try {
            for (size_t i; (i = next++) < d.coset_reps.size();) {
                {
                    std::lock_guard<std::mutex> lock(fail_mu);
                    if (failure) return;
                }
                run_coset(*c, d.coset_reps[i], accs[t], nullptr, enums);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(fail_mu);
            if (!failure) failure = std::current_exception();
        }
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (auto& a : accs) {
        out.value += a.value;
        out.stats.cosets += a.stats.cosets;
        out.stats.pairs += a.stats.pairs;
        out.stats.residues += a.stats.residues;
    }
    out.value = out.value.reduced();
    out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace kron
