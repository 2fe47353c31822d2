#include "kron/osbases.hpp"

#include "kron/diagram.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace kron {

bool cone_membership(const std::vector<IVec>& sigma, const RVec& xi, RVec* coords)
{
    RVec c = coordinates_in(sigma, xi);
    if (coords) *coords = c;
    for (auto& x : c)
        if (sgn(x) <= 0) return false;
    return true;
}

OSEnumerator::OSEnumerator(std::vector<IVec> psi) : psi_(std::move(psi))
{
    if (psi_.size() > 64) throw cap_exceeded("OSEnumerator: more than 64 vectors");
    if (psi_.empty()) return;
    r_ = (int)psi_[0].size();
    spans_ = rank_of(psi_) == r_;
}

const std::vector<OSEnumerator::Sub>& OSEnumerator::hyperplanes_of(uint64_t flat, int rank)
{
    auto it = memo_.find(flat);
    if (it != memo_.end()) return it->second;
    std::vector<int> members;
    for (int i = 0; i < (int)psi_.size(); ++i)
        if (flat >> i & 1) members.push_back(i);
    // distinct members only; later duplicates are swept in by the closure
    std::vector<int> reps;
    for (int i : members) {
        bool dup = false;
        for (int j : reps) dup = dup || psi_[i] == psi_[j];
        if (!dup) reps.push_back(i);
    }
    std::vector<Sub> subs;
    int k = rank - 1;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (k <= (int)reps.size()) {
        uint64_t smask = 0;
        for (int x : idx) smask |= uint64_t(1) << reps[x];
        bool known = false;
        for (auto& s : subs)
            if ((s.mask & smask) == smask) {
                known = true;
                break;
            }
        if (!known) {
            std::vector<IVec> vs;
            for (int x : idx) vs.push_back(psi_[reps[x]]);
            if (rank_of(vs) == k) {
                uint64_t m = 0;
                for (int i : members)
                    if (in_span(vs, psi_[i])) m |= uint64_t(1) << i;
                std::vector<int> basis;
                for (int x : idx) basis.push_back(reps[x]);
                subs.push_back({m, basis});
            }
        }
        int i = k - 1;
        while (i >= 0 && idx[i] == (int)reps.size() - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return memo_.emplace(flat, std::move(subs)).first->second;
}

OSBasis OSEnumerator::finish(const std::vector<int>& chosen) const
{
    OSBasis b;
    b.indices = chosen;
    std::sort(b.indices.begin(), b.indices.end());
    std::vector<IVec> cols;
    for (int i : b.indices) cols.push_back(psi_[i]);
    Int d = det_of(cols);
    b.det = Rat(abs(d));
    return b;
}

void OSEnumerator::walk(uint64_t flat, int rank, const RVec* xi, std::vector<int>& chosen, std::vector<OSBasis>& out)
{
    int i = std::countr_zero(flat);
    if (rank == 1) {
        if (xi) {
            RVec c = coordinates_in({psi_[i]}, *xi);
            if (sgn(c[0]) == 0) throw std::domain_error("os_bases_adapted: vector on an admissible hyperplane");
            if (sgn(c[0]) < 0) return;
        }
        chosen.push_back(i);
        out.push_back(finish(chosen));
        chosen.pop_back();
        return;
    }
    for (auto& h : hyperplanes_of(flat, rank)) {
        if (h.mask >> i & 1) continue;
        RVec rest;
        if (xi) {
            std::vector<IVec> basis{psi_[i]};
            for (int j : h.basis) basis.push_back(psi_[j]);
            RVec c = coordinates_in(basis, *xi);
            if (sgn(c[0]) == 0) throw std::domain_error("os_bases_adapted: vector on an admissible hyperplane");
            if (sgn(c[0]) < 0) continue;
            rest = *xi;
            for (int t = 0; t < r_; ++t) rest[t] -= c[0] * psi_[i][t];
        }
        chosen.push_back(i);
        walk(h.mask, rank - 1, xi ? &rest : nullptr, chosen, out);
        chosen.pop_back();
    }
}

std::vector<OSBasis> OSEnumerator::adapted(const RVec& xi)
{
    std::vector<OSBasis> out;
    if (!spans_) return out;
    if ((int)xi.size() != r_) throw std::invalid_argument("os_bases_adapted: dimension mismatch");
    uint64_t all = psi_.size() == 64 ? ~uint64_t(0) : (uint64_t(1) << psi_.size()) - 1;
    std::vector<int> chosen;
    walk(all, r_, &xi, chosen, out);
    return out;
}

std::vector<OSBasis> OSEnumerator::all()
{
    std::vector<OSBasis> out;
    if (!spans_) return out;
    uint64_t all = psi_.size() == 64 ? ~uint64_t(0) : (uint64_t(1) << psi_.size()) - 1;
    std::vector<int> chosen;
    walk(all, r_, nullptr, chosen, out);
    return out;
}

std::vector<OSBasis> os_bases_adapted(const std::vector<IVec>& psi, const RVec& xi)
{
    return OSEnumerator(psi).adapted(xi);
}

std::vector<OSBasis> os_bases_bruteforce(const std::vector<IVec>& psi, const RVec* xi)
{
    std::vector<OSBasis> out;
    if (psi.empty()) return out;
    int r = (int)psi[0].size(), n = (int)psi.size();
    if (r > n) return out;
    std::vector<int> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        std::vector<IVec> sigma;
        for (int i : idx) sigma.push_back(psi[i]);
        if (rank_of(sigma) == r) {
            // every ordering of the subset, OS condition read literally
            std::vector<int> ord = idx;
            do {
                bool os = true;
                for (int l = 0; l < r && os; ++l)
                    for (int j = 0; j < ord[l] && os; ++j) {
                        bool repeat = std::find(ord.begin() + l, ord.end(), j) != ord.end();
                        std::vector<IVec> s{psi[j]};
                        for (int t = l; t < r; ++t) s.push_back(psi[ord[t]]);
                        if (repeat || rank_of(s) < (int)s.size()) os = false;
                    }
                if (os && (!xi || cone_membership(sigma, *xi))) {
                    Int d = det_of(sigma);
                    out.push_back({ord, Rat(abs(d))});
                }
            } while (std::next_permutation(ord.begin(), ord.end()));
        }
        int i = r - 1;
        while (i >= 0 && idx[i] == n - r + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

}  // namespace kron
