#include "kron/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace kron {

namespace {

constexpr int kBits = 5;
constexpr int kMaxCoords = 12;

uint64_t pack_weight(const IVec& w)
{
    uint64_t m = 0;
    for (size_t i = 0; i < w.size(); ++i) m |= (uint64_t)w[i] << (kBits * i);
    return m;
}

long dot(const IVec& a, const IVec& b)
{
    long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Some integer vector positive on every element of Psi, by small search.
bool find_positive_functional(const std::vector<IVec>& Psi, IVec& Y)
{
    int n = (int)Psi[0].size();
    for (int bound = 1; bound <= 6; ++bound) {
        IVec y(n, -bound);
        while (true) {
            bool ok = true;
            for (auto& p : Psi)
                if (dot(p, y) <= 0) {
                    ok = false;
                    break;
                }
            if (ok) {
                Y = y;
                return true;
            }
            int i = 0;
            while (i < n && y[i] == bound) y[i++] = -bound;
            if (i == n) break;
            ++y[i];
        }
    }
    return false;
}

struct Counter {
    const std::vector<IVec>& psi;
    const IVec& Y;
    std::map<std::pair<size_t, IVec>, Int> memo;

    Int count(size_t i, const IVec& rem)
    {
        long h = dot(rem, Y);
        if (h < 0) return 0;
        if (i == psi.size()) {
            for (long x : rem)
                if (x) return 0;
            return 1;
        }
        auto key = std::make_pair(i, rem);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        Int total = 0;
        IVec r = rem;
        long step = dot(psi[i], Y);
        for (long x = 0; x * step <= h; ++x) {
            total += count(i + 1, r);
            for (size_t j = 0; j < r.size(); ++j) r[j] -= psi[i][j];
        }
        memo.emplace(std::move(key), total);
        return total;
    }
};

}  // namespace

Int partition_count(const std::vector<IVec>& Psi, const IVec& target)
{
    if (Psi.empty()) {
        for (long x : target)
            if (x) return 0;
        return 1;
    }
    IVec Y;
    if (!find_positive_functional(Psi, Y)) throw std::invalid_argument("partition_count: cone not pointed");
    Counter c{Psi, Y, {}};
    return c.count(0, target);
}

Int WeightMultTable::get(const IVec& weight) const
{
    for (long x : weight)
        if (x < 0 || x > c) return 0;
    auto it = counts.find(pack_weight(weight));
    return it == counts.end() ? Int(0) : it->second;
}

Int WeightMultTable::total() const
{
    Int s = 0;
    for (auto& [k, v] : counts) s += v;
    return s;
}

WeightMultTable weight_table(const std::vector<int>& dims, int c)
{
    int coords = std::accumulate(dims.begin(), dims.end(), 0);
    if (coords > kMaxCoords || c >= (1 << kBits)) throw cap_exceeded("weight_table: instance too large");
    WeightMultTable t;
    t.dims = dims;
    t.c = c;
    // tensor basis weights: one unit per factor
    std::vector<IVec> basis{IVec()};
    int offset = 0;
    for (int n : dims) {
        std::vector<IVec> next;
        for (auto& b : basis)
            for (int i = 0; i < n; ++i) {
                IVec v = b;
                v.resize(coords, 0);
                v[offset + i] += 1;
                next.push_back(v);
            }
        basis = next;
        offset += n;
    }
    // layers[d]: weights of degree d with counts, unbounded knapsack over basis vectors
    std::vector<std::unordered_map<uint64_t, Int>> layers(c + 1);
    layers[0][0] = 1;
    for (auto& v : basis) {
        uint64_t pv = pack_weight(v);
        for (int d = 1; d <= c; ++d) {
            for (auto& [w, cnt] : layers[d - 1]) layers[d][w + pv] += cnt;
        }
    }
    // The loop above processes degree d after d-1 was already updated by the
    // same vector, so repeated use of v is counted exactly once per multiset.
    t.counts = std::move(layers[c]);
    return t;
}

Int kronecker_from_table(const WeightMultTable& table, const DiagramTuple& t)
{
    if (t.size() != table.dims.size()) throw std::invalid_argument("kronecker_from_table: arity");
    std::vector<IVec> lam;
    for (size_t j = 0; j < t.size(); ++j) {
        Diagram d = trim_zeros(t[j]);
        if ((int)d.size() > table.dims[j]) return 0;
        if (content(d) != table.c) return 0;
        d.resize(table.dims[j], 0);
        lam.push_back(d);
    }
    // sum over prod S_{n_j} of sign * P(lambda + rho - w rho)
    size_t s = t.size();
    std::vector<std::vector<int>> perm(s);
    for (size_t j = 0; j < s; ++j) {
        perm[j].resize(table.dims[j]);
        std::iota(perm[j].begin(), perm[j].end(), 0);
    }
    auto sign_of = [](const std::vector<int>& p) {
        int sg = 1;
        std::vector<bool> seen(p.size());
        for (size_t i = 0; i < p.size(); ++i) {
            if (seen[i]) continue;
            size_t len = 0;
            for (size_t k = i; !seen[k]; k = p[k]) {
                seen[k] = true;
                ++len;
            }
            if (len % 2 == 0) sg = -sg;
        }
        return sg;
    };
    Int total = 0;
    while (true) {
        IVec w;
        int sg = 1;
        for (size_t j = 0; j < s; ++j) {
            int n = table.dims[j];
            sg *= sign_of(perm[j]);
            for (int i = 0; i < n; ++i) w.push_back(lam[j][i] + (n - 1 - i) - (n - 1 - perm[j][i]));
        }
        Int v = table.get(w);
        if (v != 0) total += sg > 0 ? v : Int(-v);
        size_t j = 0;
        while (j < s && !std::next_permutation(perm[j].begin(), perm[j].end())) ++j;
        if (j == s) break;
    }
    return total;
}

Int kronecker_bruteforce(const DiagramTuple& t, int content_cap)
{
    if (t.empty()) return 1;
    long c = content(t[0]);
    for (auto& d : t) {
        if (!is_partition(d)) throw std::invalid_argument("kronecker_bruteforce: not a partition");
        if (content(d) != c) return 0;
    }
    if (c > content_cap) throw cap_exceeded("kronecker_bruteforce: content cap exceeded");
    std::vector<int> dims;
    double perms = 1;
    for (auto& d : t) {
        int n = std::max<int>(1, (int)trim_zeros(d).size());
        dims.push_back(n);
        for (int i = 2; i <= n; ++i) perms *= i;
    }
    if (perms > 1e5) throw cap_exceeded("kronecker_bruteforce: Weyl group too large");
    return kronecker_from_table(weight_table(dims, (int)c), t);
}

}  // namespace kron
