#include "kron/rootdata.hpp"

#include "json.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace kron {

namespace fs = std::filesystem;
using json = nlohmann::json;

IVec RestrictedRootData::restrict_weight(const IVec& w) const
{
    if ((int)w.size() != M) throw std::invalid_argument("restrict_weight: dimension mismatch");
    IVec out(r, 0);
    for (int t = 0; t < M; ++t)
        if (w[t])
            for (int i = 0; i < r; ++i) out[i] += w[t] * restriction[t][i];
    return out;
}

RVec RestrictedRootData::restrict_weight(const RVec& w) const
{
    if ((int)w.size() != M) throw std::invalid_argument("restrict_weight: dimension mismatch");
    RVec out(r, Rat(0));
    for (int t = 0; t < M; ++t)
        if (sgn(w[t]))
            for (int i = 0; i < r; ++i)
                if (restriction[t][i]) out[i] += w[t] * restriction[t][i];
    return out;
}

RVec RestrictedRootData::to_lattice(const RVec& v) const { return mat_vec(lattice_inv, v); }

IVec RestrictedRootData::to_lattice(const IVec& v) const
{
    RVec x = mat_vec(lattice_inv, v);
    IVec out(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i].get_den() != 1) throw std::domain_error("to_lattice: weight outside the root lattice");
        out[i] = x[i].get_num().get_si();
    }
    return out;
}

RVec apply_perm(const Perm& w, const RVec& v)
{
    RVec out(v.size());
    for (size_t a = 0; a < v.size(); ++a) out[w[a]] = v[a];
    return out;
}

IVec apply_perm(const Perm& w, const IVec& v)
{
    IVec out(v.size());
    for (size_t a = 0; a < v.size(); ++a) out[w[a]] = v[a];
    return out;
}

std::vector<Perm> weyl_coset_reps(const std::vector<int>& blocks, double cap)
{
    int M = std::accumulate(blocks.begin(), blocks.end(), 0);
    // multinomial M! / prod b!
    double count = 1;
    int placed = 0;
    for (int b : blocks)
        for (int i = 1; i <= b; ++i) count = count * (++placed) / i;
    if (count > cap) throw cap_exceeded("weyl_coset_reps: too many coset representatives");

    std::vector<Perm> out;
    Perm w(M);
    std::vector<bool> used(M, false);
    // block k occupies positions [start, start + blocks[k]) and takes an
    // increasing set of images
    std::function<void(size_t, int, int, int)> rec = [&](size_t k, int start, int i, int lo) {
        if (k == blocks.size()) {
            out.push_back(w);
            return;
        }
        if (i == blocks[k]) {
            rec(k + 1, start + blocks[k], 0, 0);
            return;
        }
        int need = blocks[k] - i, avail = 0;
        for (int img = lo; img < M; ++img) avail += !used[img];
        for (int img = lo; img < M && avail >= need; ++img) {
            if (used[img]) continue;
            --avail;
            used[img] = true;
            w[start + i] = img;
            rec(k, start, i + 1, img + 1);
            used[img] = false;
        }
    };
    rec(0, 0, 0, 0);
    return out;
}

namespace {

long det_small(std::vector<IVec> a)
{
    // fraction-free elimination in int64; entries stay small for root data
    size_t n = a.size();
    long prev = 1;
    int sign = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && a[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(a[piv], a[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

template <class F>
void for_each_subset(int n, int k, F&& f)
{
    if (k > n) return;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        f(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

double binomial(int n, int k)
{
    double c = 1;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

}  // namespace

long basis_exponent(const std::vector<IVec>& sigma)
{
    size_t r = sigma.size();
    // rows are the basis vectors; det(rows) = det(columns)
    long det = std::labs(det_small(sigma));
    if (det == 0) throw std::domain_error("basis_exponent: not a basis");
    if (det == 1 || r == 1) return det;
    // sigma^{-1} = adj / det; exponent = det / gcd(det, all cofactors)
    long g = det;
    for (size_t i = 0; i < r && g > 1; ++i)
        for (size_t j = 0; j < r && g > 1; ++j) {
            std::vector<IVec> minor;
            for (size_t a = 0; a < r; ++a) {
                if (a == i) continue;
                IVec row;
                for (size_t b = 0; b < r; ++b)
                    if (b != j) row.push_back(sigma[a][b]);
                minor.push_back(row);
            }
            g = std::gcd(g, std::labs(det_small(minor)));
        }
    return det / g;
}

long lattice_index(const std::vector<IVec>& psi, int r)
{
    if (rank_of(psi) < r) throw std::domain_error("lattice_index: vectors do not span");
    if (binomial((int)psi.size(), r) > 5e7) throw cap_exceeded("lattice_index: too many subsets");
    long q = 1;
    std::vector<IVec> sub(r);
    for_each_subset((int)psi.size(), r, [&](const std::vector<int>& idx) {
        for (int i = 0; i < r; ++i) sub[i] = psi[idx[i]];
        if (det_small(sub) == 0) return;
        q = std::lcm(q, basis_exponent(sub));
    });
    return q;
}

std::vector<IVec> spanning_gammas(const std::vector<IVec>& psi, int r, long q)
{
    std::set<IVec> out{IVec(r, 0)};
    std::vector<IVec> sub(r);
    for_each_subset((int)psi.size(), r, [&](const std::vector<int>& idx) {
        for (int i = 0; i < r; ++i) sub[i] = psi[idx[i]];
        long det = std::labs(det_small(sub));
        if (det <= 1) return;
        // generators: q times the dual basis, as integer vectors mod q
        std::vector<IVec> cols(r, IVec(r));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) cols[j][i] = sub[i][j];
        RMat inv = inverse_of_columns(cols);
        std::vector<IVec> gens;
        for (int i = 0; i < r; ++i) {
            IVec g(r);
            for (int k = 0; k < r; ++k) {
                Rat x = inv[k][i] * q;
                if (x.get_den() != 1) throw std::logic_error("spanning_gammas: q is not a multiple of the basis exponent");
                g[k] = mod_floor(x.get_num().get_si(), q);
            }
            gens.push_back(g);
        }
        std::set<IVec> group{IVec(r, 0)};
        std::vector<IVec> frontier{IVec(r, 0)};
        while (!frontier.empty()) {
            std::vector<IVec> next;
            for (auto& x : frontier)
                for (auto& g : gens) {
                    IVec y(r);
                    for (int k = 0; k < r; ++k) y[k] = mod_floor(x[k] + g[k], q);
                    if (group.insert(y).second) next.push_back(y);
                }
            frontier = std::move(next);
        }
        out.insert(group.begin(), group.end());
    });
    return {out.begin(), out.end()};
}

std::vector<IVec> admissible_hyperplanes(const std::vector<IVec>& psi, int r)
{
    if (r == 1) return {IVec{1}};
    if (binomial((int)psi.size(), r - 1) > 5e7) throw cap_exceeded("admissible_hyperplanes: too many subsets");
    std::set<IVec> seen;
    std::vector<IVec> out;
    std::vector<IVec> sub(r - 1);
    for_each_subset((int)psi.size(), r - 1, [&](const std::vector<int>& idx) {
        for (int i = 0; i < r - 1; ++i) sub[i] = psi[idx[i]];
        if (rank_of(sub) < r - 1) return;
        IVec n = primitive_normal(sub);
        if (seen.insert(n).second) out.push_back(n);
    });
    return out;
}

std::vector<IVec> positive_roots_k(const RestrictedRootData& d)
{
    std::vector<IVec> out;
    for (size_t j = 1; j < d.dims.size(); ++j) {
        int off = d.factor_offset[j - 1];
        if (off < 0) continue;
        int n = d.dims[j];
        for (int i = 0; i < n; ++i)
            for (int l = i + 1; l < n; ++l) {
                IVec v(d.r, 0);
                // Dynkin coordinate m is the pairing with e_m - e_{m+1}
                for (int m = 0; m + 1 < n; ++m)
                    v[off + m] = (m == i) - (m == l) - (m + 1 == i) + (m + 1 == l);
                out.push_back(v);
            }
    }
    return out;
}

DeformationCheck check_deformation(const RestrictedRootData& d, const RVec& eps, const RVec& delta)
{
    DeformationCheck c{Rat(-1), Rat(0)};
    bool first = true;
    for (auto& w : d.coset_reps) {
        RVec v = d.restrict_weight(apply_perm(w, eps));
        for (int i = 0; i < d.r; ++i) v[i] -= delta[i];
        v = d.to_lattice(v);
        for (auto& X : d.normals) {
            Rat p = abs(dot(v, X));
            if (first || p < c.min_abs) c.min_abs = p;
            if (p > c.max_abs) c.max_abs = p;
            first = false;
        }
    }
    if (first) c.min_abs = 1;
    return c;
}

namespace {

using CMat = Eigen::MatrixXcd;

Rat rationalize(double x)
{
    return frac((long)std::llround(x * 1e6), 1000000);
}

// Sorted (descending) spectrum of the factor-j marginal of the n1 x M tensor T.
std::vector<double> marginal_spectrum(const CMat& T, const RestrictedRootData& d, int j, int stride)
{
    int n = d.dims[j];
    CMat rho = CMat::Zero(n, n);
    for (int t = 0; t < d.M; ++t) {
        int i = (t / stride) % n;
        for (int i2 = 0; i2 < n; ++i2) {
            int t2 = t + (i2 - i) * stride;
            rho(i, i2) += (T.col(t).transpose() * T.col(t2).conjugate())(0, 0);
        }
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(rho);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(ev.rbegin(), ev.rend());
    return ev;
}

bool try_sample(RestrictedRootData& d, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    auto gauss = [&](int rows, int cols) {
        CMat m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) m(i, k) = {g(rng), g(rng)};
        return m;
    };
    CMat T;
    RVec eps(d.M, Rat(0));
    if (d.sigma == SigmaKind::rect) {
        // random isometry C^{n1} -> C^M, so the first marginal is maximally mixed
        Eigen::HouseholderQR<CMat> qr(gauss(d.M, d.n1));
        CMat Q = qr.householderQ() * CMat::Identity(d.M, d.n1);
        T = Q.transpose() / std::sqrt((double)d.n1);
        for (int a = 0; a < d.n1; ++a) eps[a] = frac(1, d.n1);
    } else {
        T = gauss(d.n1, d.M);
        T /= T.norm();
        Eigen::SelfAdjointEigenSolver<CMat> es(T * T.adjoint());
        std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + d.n1);
        std::sort(ev.rbegin(), ev.rend());
        for (int a = 0; a < d.n1; ++a) eps[a] = rationalize(ev[a]);
        for (int a = 0; a < d.n1; ++a)
            if (sgn(eps[a]) <= 0 || (a > 0 && !(eps[a] < eps[a - 1]))) return false;
    }
    RVec delta(d.r);
    int stride = 1;
    for (size_t j = 1; j < d.dims.size(); ++j) {
        int off = d.factor_offset[j - 1];
        if (off >= 0) {
            auto ev = marginal_spectrum(T, d, (int)j, stride);
            for (int m = 0; m + 1 < d.dims[j]; ++m) {
                delta[off + m] = rationalize(ev[m] - ev[m + 1]);
                if (sgn(delta[off + m]) <= 0) return false;
            }
        }
        stride *= d.dims[j];
    }
    auto c = check_deformation(d, eps, delta);
    if (sgn(c.min_abs) == 0) return false;
    Rat s = 1 / (4 * c.max_abs);
    for (auto& x : eps) x *= s;
    for (auto& x : delta) x *= s;
    d.eps = std::move(eps);
    d.delta = std::move(delta);
    return true;
}

}  // namespace

void sample_deformation(RestrictedRootData& d, uint64_t seed)
{
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::mt19937_64 rng(seed + attempt);
        if (try_sample(d, rng)) return;
    }
    throw no_deformation("sample_deformation: no admissible deformation found (cone not solid?)");
}

// ---------------------------------------------------------------- cache

std::string default_cache_dir()
{
    const char* e = std::getenv("KRON_CACHE_DIR");
    return e && *e ? e : ".kron-cache";
}

std::string cache_key(const RestrictedRootData& d)
{
    std::ostringstream s;
    s << "dims";
    for (int n : d.dims) s << '-' << n;
    s << "_blocks";
    for (int b : d.blocks) s << '-' << b;
    s << "_kept-";
    for (bool k : d.kept) s << (k ? '1' : '0');
    s << ".json";
    return s.str();
}

namespace {

json rvec_json(const RVec& v)
{
    json a = json::array();
    for (auto& x : v) a.push_back(to_string(x));
    return a;
}

RVec rvec_from(const json& a)
{
    RVec v;
    for (auto& x : a) v.push_back(rat_from_string(x.get<std::string>()));
    return v;
}

json entry_json(const RestrictedRootData& d)
{
    json j;
    j["dims"] = d.dims;
    j["sigma"] = d.sigma == SigmaKind::rect ? "rect" : "general";
    j["blocks"] = d.blocks;
    j["kept"] = d.kept;
    j["psi"] = d.psi;
    j["normals"] = d.normals;
    j["q"] = d.q;
    j["Y"] = d.Y;
    j["eps"] = rvec_json(d.eps);
    j["delta"] = rvec_json(d.delta);
    return j;
}

// Checks a parsed entry against freshly built geometry `d`; on success copies
// the cached fields into d.
bool adopt_entry(RestrictedRootData& d, const json& j, std::string& why)
{
    if (j.at("dims").get<std::vector<int>>() != d.dims || j.at("blocks").get<std::vector<int>>() != d.blocks ||
        j.at("kept").get<std::vector<bool>>() != d.kept) {
        why = "signature mismatch";
        return false;
    }
    if (j.at("psi").get<std::vector<IVec>>() != d.psi || j.at("Y").get<IVec>() != d.Y) {
        why = "restricted roots mismatch";
        return false;
    }
    RestrictedRootData c = d;
    c.normals = j.at("normals").get<std::vector<IVec>>();
    c.q = j.at("q").get<long>();
    c.eps = rvec_from(j.at("eps"));
    c.delta = rvec_from(j.at("delta"));
    if ((int)c.eps.size() != d.M || (int)c.delta.size() != d.r) {
        why = "deformation has wrong length";
        return false;
    }
    if (!check_deformation(c, c.eps, c.delta).ok()) {
        why = "deformation predicate fails";
        return false;
    }
    d = std::move(c);
    return true;
}

RestrictedRootData build_geometry(const std::vector<int>& dims, const RootDataOptions& opt);

}  // namespace

bool cache_load(RestrictedRootData& d, const std::string& dir)
{
    fs::path p = fs::path(dir) / cache_key(d);
    std::ifstream in(p);
    if (!in) return false;
    try {
        json j = json::parse(in);
        std::string why;
        return adopt_entry(d, j, why);
    } catch (const std::exception&) {
        return false;
    }
}

void cache_store(const RestrictedRootData& d, const std::string& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) return;
    fs::path p = fs::path(dir) / cache_key(d);
    fs::path tmp = p;
    tmp += ".tmp" + std::to_string(std::random_device{}());
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << entry_json(d).dump(1);
    }
    fs::rename(tmp, p, ec);
    if (ec) fs::remove(tmp, ec);
}

std::vector<CacheEntryStatus> cache_list(const std::string& dir)
{
    std::vector<CacheEntryStatus> out;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) return out;
    for (auto& e : fs::directory_iterator(dir)) {
        if (e.path().extension() != ".json") continue;
        CacheEntryStatus st{e.path().filename().string(), true, ""};
        try {
            std::ifstream in(e.path());
            json j = json::parse(in);
            st.message = "q=" + std::to_string(j.at("q").get<long>()) + " psi=" + std::to_string(j.at("psi").size()) +
                         " normals=" + std::to_string(j.at("normals").size());
        } catch (const std::exception& ex) {
            st.valid = false;
            st.message = ex.what();
        }
        out.push_back(std::move(st));
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.file < b.file; });
    return out;
}

std::vector<CacheEntryStatus> cache_verify(const std::string& dir)
{
    auto entries = cache_list(dir);
    for (auto& st : entries) {
        fs::path p = fs::path(dir) / st.file;
        try {
            std::ifstream in(p);
            json j = json::parse(in);
            RootDataOptions opt;
            opt.sigma = j.at("sigma").get<std::string>() == "rect" ? SigmaKind::rect : SigmaKind::general;
            opt.kept = j.at("kept").get<std::vector<bool>>();
            auto d = build_geometry(j.at("dims").get<std::vector<int>>(), opt);
            std::string why;
            st.valid = adopt_entry(d, j, why) && d.normals == admissible_hyperplanes(d.psi_distinct_lat, d.r);
            if (!st.valid) st.message = why.empty() ? "hyperplane normals mismatch" : why;
        } catch (const std::exception& e) {
            st.valid = false;
            st.message = e.what();
        }
        if (!st.valid) {
            std::error_code ec;
            fs::path bad = p;
            bad += ".bad";
            fs::rename(p, bad, ec);
        }
    }
    return entries;
}

int cache_clear(const std::string& dir)
{
    int n = 0;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) return 0;
    for (auto& e : fs::directory_iterator(dir)) {
        auto ext = e.path().extension();
        if (ext == ".json" || ext == ".bad") {
            fs::remove(e.path(), ec);
            ++n;
        }
    }
    return n;
}

// ---------------------------------------------------------------- build

namespace {

RestrictedRootData build_geometry(const std::vector<int>& dims, const RootDataOptions& opt)
{
    if (dims.size() < 3) throw std::invalid_argument("build_root_data: need at least three factors");
    for (size_t j = 0; j < dims.size(); ++j) {
        if (dims[j] < 1) throw std::invalid_argument("build_root_data: bad dimension");
        if (j > 0 && dims[j] < 2) throw std::invalid_argument("build_root_data: K factors need n >= 2");
    }
    RestrictedRootData d;
    d.dims = dims;
    d.n1 = dims[0];
    d.sigma = opt.sigma;
    size_t s = dims.size();
    d.kept = opt.kept.empty() ? std::vector<bool>(s - 1, true) : opt.kept;
    if (d.kept.size() != s - 1) throw std::invalid_argument("build_root_data: kept mask has wrong length");

    std::vector<int> stride(s - 1);
    d.M = 1;
    for (size_t j = 1; j < s; ++j) {
        stride[j - 1] = d.M;
        d.M *= dims[j];
    }
    if (d.n1 > d.M) throw std::invalid_argument("build_root_data: n1 exceeds M");
    d.factor_offset.assign(s - 1, -1);
    for (size_t j = 1; j < s; ++j)
        if (d.kept[j - 1]) {
            d.factor_offset[j - 1] = d.r;
            d.r += dims[j] - 1;
        }
    if (d.r == 0) throw std::invalid_argument("build_root_data: no kept factor");

    // blocks of W_l
    if (d.sigma == SigmaKind::rect)
        d.blocks = {d.n1};
    else
        d.blocks.assign(d.n1, 1);
    if (d.M > d.n1) d.blocks.push_back(d.M - d.n1);
    for (size_t k = 0; k < d.blocks.size(); ++k)
        for (int i = 0; i < d.blocks[k]; ++i) d.block_of.push_back((int)k);

    d.restriction.assign(d.M, IVec(d.r, 0));
    d.Yg.assign(d.M, 0);
    d.Y1g.assign(d.M, 0);
    for (int t = 0; t < d.M; ++t)
        for (size_t j = 1; j < s; ++j) {
            int n = dims[j], i = (t / stride[j - 1]) % n;
            long y = (long)(n - 1 - 2 * i) * stride[j - 1];
            int off = d.factor_offset[j - 1];
            if (off < 0) {
                d.Y1g[t] += y;
                continue;
            }
            d.Yg[t] += y;
            if (i < n - 1) d.restriction[t][off + i] += 1;
            if (i > 0) d.restriction[t][off + i - 1] -= 1;
        }
    if (!opt.y1_override.empty()) {
        if ((int)opt.y1_override.size() != d.M) throw std::invalid_argument("build_root_data: Y1 has wrong length");
        d.Y1g = opt.y1_override;
    }
    d.Y.assign(d.r, 0);
    for (size_t j = 1; j < s; ++j) {
        int off = d.factor_offset[j - 1];
        if (off < 0) continue;
        long acc = 0;
        for (int i = 0; i + 1 < dims[j]; ++i) {
            acc += (long)(dims[j] - 1 - 2 * i) * stride[j - 1];
            d.Y[off + i] = acc;
        }
    }

    for (int a = 0; a < d.M; ++a)
        for (int b = a + 1; b < d.M; ++b) {
            if (d.block_of[a] != d.block_of[b]) d.delta_u.push_back({a, b});
            IVec v(d.r);
            bool zero = true;
            for (int i = 0; i < d.r; ++i) {
                v[i] = d.restriction[a][i] - d.restriction[b][i];
                zero = zero && v[i] == 0;
            }
            if (zero) {
                d.zero_roots.push_back({a, b});
                continue;
            }
            long y = dot(v, d.Y);
            if (y != d.Yg[a] - d.Yg[b]) throw std::logic_error("build_root_data: embedding of Y inconsistent");
            if (y == 0) throw std::logic_error("build_root_data: Y is not regular");
            if (y < 0)
                for (auto& x : v) x = -x;
            d.psi.push_back(v);
            d.psi_roots.push_back({a, b});
        }
    std::set<IVec> seen;
    for (auto& v : d.psi)
        if (seen.insert(v).second) d.psi_distinct.push_back(v);
    if (rank_of(d.psi_distinct) < d.r) throw std::domain_error("build_root_data: restricted roots do not span");
    d.delta_k_plus = positive_roots_k(d);

    d.lattice = lattice_basis(d.psi_distinct);
    d.lattice_inv = inverse_of_columns(d.lattice);
    for (auto& v : d.psi) d.psi_lat.push_back(d.to_lattice(v));
    for (auto& v : d.psi_distinct) d.psi_distinct_lat.push_back(d.to_lattice(v));
    for (auto& v : d.delta_k_plus) d.delta_k_plus_lat.push_back(d.to_lattice(v));
    for (auto& b : d.lattice) d.Y_lat.push_back(dot(b, d.Y));
    d.coset_reps = weyl_coset_reps(d.blocks, opt.coset_cap);
    return d;
}

// Distinct vectors of the list difference Psi \ DeltaK+.
std::vector<IVec> psi_minus_k(const RestrictedRootData& d)
{
    std::map<IVec, int> count;
    for (auto& v : d.psi) ++count[v];
    for (auto& v : d.delta_k_plus) --count[v];
    std::vector<IVec> out;
    for (size_t i = 0; i < d.psi_distinct.size(); ++i)
        if (count[d.psi_distinct[i]] > 0) out.push_back(d.psi_distinct_lat[i]);
    return out;
}

}  // namespace

RestrictedRootData build_root_data(const std::vector<int>& dims, const RootDataOptions& opt)
{
    RestrictedRootData d = build_geometry(dims, opt);
    if (!opt.cache_dir.empty() && cache_load(d, opt.cache_dir)) return d;
    d.normals = admissible_hyperplanes(d.psi_distinct_lat, d.r);
    auto sub = psi_minus_k(d);
    d.q = lattice_index(d.regular() && rank_of(sub) == d.r ? sub : d.psi_distinct_lat, d.r);
    if (!opt.sample_deformation) return d;
    sample_deformation(d, opt.seed);
    if (!opt.cache_dir.empty()) cache_store(d, opt.cache_dir);
    return d;
}

}  // namespace kron
