#include "kron/residue.hpp"

#include "kron/osbases.hpp"
#include "kron/rootdata.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

namespace kron {

namespace {

template <class T>
struct Field;

template <>
struct Field<Rat> {
    int q;
    Rat from(const Rat& x) const { return x; }
    Rat zeta(int64_t a) const { return q == 2 && mod_floor(a, 2) ? Rat(-1) : Rat(1); }
    Rat inv(const Rat& x) const { return 1 / x; }
    static bool zero(const Rat& x) { return sgn(x) == 0; }
};

template <>
struct Field<Cyclo> {
    int q;
    Cyclo from(const Rat& x) const { return Cyclo(q, x); }
    Cyclo zeta(int64_t a) const { return cyclo_pow(q, a); }
    Cyclo inv(const Cyclo& x) const { return cyclo_inverse(x); }
    static bool zero(const Cyclo& x) { return x.is_zero(); }
};

Rat factorial(int n)
{
    Rat f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Coefficients of A(x) with A(0) = 1 for the unit part of a factor:
// zeta = 1: (1 - e^{-x}) / x; zeta != 1: (1 - zeta e^{-x}) / (1 - zeta).
template <class T>
std::vector<T> unit_series(const Field<T>& F, int64_t a, int n)
{
    std::vector<T> A(n + 1, F.from(Rat(0)));
    bool one = is_root_of_unity_one(F.q, a);
    T scale = F.from(Rat(1));
    if (!one) scale = F.inv(F.from(Rat(1)) - F.zeta(a));
    for (int k = 0; k <= n; ++k) {
        if (one) {
            A[k] = F.from(Rat((k % 2 ? -1 : 1)) / factorial(k + 1));
        } else if (k == 0) {
            A[k] = F.from(Rat(1));
        } else {
            A[k] = F.zeta(a) * scale * (Rat(k % 2 ? 1 : -1) / factorial(k));
        }
    }
    return A;
}

// log A for A(0) = 1, via L' A = A'.
template <class T>
std::vector<T> series_log(const Field<T>& F, const std::vector<T>& A)
{
    int n = (int)A.size() - 1;
    std::vector<T> dL(std::max(n, 0), F.from(Rat(0))), L(n + 1, F.from(Rat(0)));
    for (int k = 0; k < n; ++k) {
        T v = A[k + 1] * Rat(k + 1);
        for (int i = 1; i <= k; ++i) v -= A[i] * dL[k - i];
        dL[k] = v;
        L[k + 1] = v * (Rat(1) / Rat(k + 1));
    }
    return L;
}

template <class T>
std::vector<T> series_inverse(const Field<T>& F, const std::vector<T>& A)
{
    int n = (int)A.size() - 1;
    std::vector<T> B(n + 1, F.from(Rat(0)));
    T inv0 = F.inv(A[0]);
    B[0] = inv0;
    for (int k = 1; k <= n; ++k) {
        T s = F.from(Rat(0));
        for (int i = 1; i <= k; ++i) s += A[i] * B[k - i];
        B[k] = -(s * inv0);
    }
    return B;
}

// omega = log(F(x) / (g0 x^v)) for pole (sign -1) or numer (sign +1) kinds.
template <class T>
const std::vector<T>& omega_series(const Field<T>& F, int sign, int64_t a, int n)
{
    using Key = std::tuple<int, int, int64_t>;
    thread_local std::map<Key, std::vector<T>> memo;
    Key key{sign, F.q, mod_floor(a, F.q)};
    auto it = memo.find(key);
    if (it != memo.end() && (int)it->second.size() > n) return it->second;
    int m = std::max(n, 8) * 2;
    auto L = series_log(F, unit_series(F, a, m));
    if (sign < 0)
        for (auto& x : L) x = -x;
    auto& slot = memo[key];
    slot = std::move(L);
    return slot;
}

struct Box {
    int R = 0;
    std::vector<int> N;
    std::vector<size_t> stride;
    size_t size = 1;

    explicit Box(std::vector<int> n) : R((int)n.size()), N(std::move(n)), stride(R)
    {
        for (int j = R - 1; j >= 0; --j) {
            stride[j] = size;
            size *= (size_t)(N[j] + 1);
        }
    }
    bool fits(const std::vector<int>& e) const
    {
        for (int j = 0; j < R; ++j)
            if (e[j] > N[j]) return false;
        return true;
    }
    size_t index(const std::vector<int>& e) const
    {
        size_t i = 0;
        for (int j = 0; j < R; ++j) i += e[j] * stride[j];
        return i;
    }
    void decode(size_t i, std::vector<int>& e) const
    {
        e.resize(R);
        for (int j = 0; j < R; ++j) {
            e[j] = (int)(i / stride[j]);
            i %= stride[j];
        }
    }
};

template <class C>
struct SparseTerm {
    std::vector<int> e;
    size_t idx;
    C c;
};

// out = in * sparse, truncated to the box.
template <class C>
std::vector<C> mul_sparse(const Box& box, const std::vector<C>& in, const std::vector<SparseTerm<Rat>>& sp)
{
    std::vector<C> out(box.size, in.empty() ? C() : in[0] * Rat(0));
    std::vector<int> a;
    for (size_t i = 0; i < box.size; ++i) {
        box.decode(i, a);
        for (auto& t : sp) {
            bool ok = true;
            for (int j = 0; j < box.R && ok; ++j) ok = t.e[j] <= a[j];
            if (ok) out[i] += in[i - t.idx] * t.c;
        }
    }
    return out;
}

}  // namespace

template <class T>
Poly<T> iterated_residue_raw(const ResidueProblem& p)
{
    Field<T> F{p.q};
    const int R = p.R;
    const T zero = F.from(Rat(0));
    T pref = F.from(Rat(1));

    struct Prepared {
        int j0;
        int v;     // valuation of the whole factor (with multiplicity)
        int mult;
        int sign;  // -1 pole, +1 numer, 0 inv
        int64_t a;
        Rat lead;
        std::vector<Rat> h;  // h[i], i > j0: coefficient of y_{j0+1} ... y_i
    };
    std::vector<Prepared> prep;
    for (auto& f : p.factors) {
        if ((int)f.coords.size() != R) throw std::invalid_argument("iterated_residue: factor dimension");
        int j0 = 0;
        while (j0 < R && sgn(f.coords[j0]) == 0) ++j0;
        bool one = is_root_of_unity_one(p.q, f.zeta);
        if (j0 == R) {
            if (f.kind == FactorKind::inv || (f.kind == FactorKind::pole && one))
                throw identically_singular("iterated_residue: identically singular factor");
            if (f.kind == FactorKind::numer && one) return {};
            T g = F.from(Rat(1)) - F.zeta(f.zeta);
            if (f.kind == FactorKind::pole) g = F.inv(g);
            for (int m = 0; m < f.mult; ++m) pref *= g;
            continue;
        }
        Prepared q{j0, 0, f.mult, 0, f.zeta, f.coords[j0], std::vector<Rat>(R, Rat(0))};
        if (f.kind == FactorKind::inv) {
            q.v = -f.mult;
        } else {
            q.sign = f.kind == FactorKind::pole ? -1 : 1;
            if (one) {
                q.v = q.sign * f.mult;
            } else {
                T g = F.from(Rat(1)) - F.zeta(f.zeta);
                if (q.sign < 0) g = F.inv(g);
                for (int m = 0; m < f.mult; ++m) pref *= g;
            }
        }
        Rat c = q.v > 0 ? q.lead : 1 / q.lead;
        for (int m = 0; m < std::abs(q.v); ++m) pref *= c;
        for (int i = j0 + 1; i < R; ++i) q.h[i] = f.coords[i] / q.lead;
        prep.push_back(std::move(q));
    }

    // exponent of y_j in Jacobian * monomial parts is e_j; we need y^{-1-e}
    std::vector<int> N(R);
    for (int j = 0; j < R; ++j) {
        long e = R - 1 - j;
        for (auto& f : prep)
            if (f.j0 >= j) e += f.v;
        N[j] = (int)(-1 - e);
        if (N[j] < 0) return {};
    }
    Box box(N);
    std::vector<T> S(box.size, zero);

    auto prefix = [&](int from, int to) {  // exponent of y_from ... y_to
        std::vector<int> e(R, 0);
        for (int j = from; j <= to; ++j) e[j] = 1;
        return e;
    };

    for (auto& f : prep) {
        // sparse 1 + h
        std::vector<SparseTerm<Rat>> one_h;
        one_h.push_back({std::vector<int>(R, 0), 0, Rat(1)});
        for (int i = f.j0 + 1; i < R; ++i)
            if (sgn(f.h[i])) {
                auto e = prefix(f.j0 + 1, i);
                if (box.fits(e)) one_h.push_back({e, box.index(e), f.h[i]});
            }
        bool has_h = one_h.size() > 1;

        if (f.v && has_h) {
            // v * log(1 + h) = v * sum_k (-1)^{k+1} h^k / k
            std::vector<SparseTerm<Rat>> hs(one_h.begin() + 1, one_h.end());
            std::vector<Rat> hk(box.size, Rat(0));
            hk[0] = 1;
            for (int k = 1;; ++k) {
                hk = mul_sparse(box, hk, hs);
                bool any = false;
                Rat w = Rat(f.v * (k % 2 ? 1 : -1)) / k;
                for (size_t i = 0; i < box.size; ++i)
                    if (sgn(hk[i])) {
                        any = true;
                        S[i] += F.from(hk[i] * w);
                    }
                if (!any) break;
            }
        }
        if (f.sign == 0) continue;
        int nmax = N[0];
        for (int j = 0; j <= f.j0; ++j) nmax = std::min(nmax, N[j]);
        if (nmax < 1) continue;
        const auto& om = omega_series(F, f.sign, f.a, nmax);
        auto pe = prefix(0, f.j0);
        size_t pidx = box.index(pe);
        std::vector<Rat> pw(box.size, Rat(0));  // (1 + h)^n
        pw[0] = 1;
        Rat cn = 1;
        for (int n = 1; n <= nmax; ++n) {
            cn *= f.lead;
            if (has_h)
                pw = mul_sparse(box, pw, one_h);
            if (Field<T>::zero(om[n])) continue;
            T coef = om[n] * (cn * f.mult);
            // pw is supported on y_{j0+1..}; shift by p^n where it fits
            std::vector<int> a;
            for (size_t i = 0; i < box.size; ++i) {
                if (!sgn(pw[i])) continue;
                box.decode(i, a);
                bool ok = true;
                for (int j = 0; j <= f.j0 && ok; ++j) ok = a[j] + n <= N[j];
                if (ok) S[i + n * pidx] += coef * pw[i];
            }
        }
    }
    for (int j = 0; j < R; ++j)
        if (j < (int)p.u1.size() && sgn(p.u1[j])) {
            auto e = prefix(0, j);
            if (box.fits(e)) S[box.index(e)] += F.from(p.u1[j]);
        }

    // E = exp(S) via deg(a) E_a = sum_b deg(b) S_b E_{a-b}
    std::vector<SparseTerm<T>> sp;
    {
        std::vector<int> e;
        for (size_t i = 1; i < box.size; ++i)
            if (!Field<T>::zero(S[i])) {
                box.decode(i, e);
                int d = std::accumulate(e.begin(), e.end(), 0);
                sp.push_back({e, i, S[i] * Rat(d)});
            }
    }
    std::vector<T> E(box.size, zero);
    E[0] = F.from(Rat(1));
    {
        std::vector<int> a;
        for (size_t i = 1; i < box.size; ++i) {
            box.decode(i, a);
            int d = std::accumulate(a.begin(), a.end(), 0);
            T acc = zero;
            for (auto& t : sp) {
                bool ok = true;
                for (int j = 0; j < R && ok; ++j) ok = t.e[j] <= a[j];
                if (ok) acc += t.c * E[i - t.idx];
            }
            E[i] = acc * (Rat(1) / Rat(d));
        }
    }

    Poly<T> out;
    size_t top = box.size - 1;
    if (p.nparams == 0 || p.lin.empty()) {
        out.add(0, E[top] * Rat(1));
        return out.scale(pref);
    }
    // sum over a with m(a) <= N of prod l_j^{a_j} / a_j! * E_{N - m(a)}
    std::vector<std::vector<PolyQ>> lpow(R);
    for (int j = 0; j < R; ++j) {
        PolyQ l;
        for (int k = 0; k < p.nparams; ++k) l.add(mono::var(k), p.lin[j][k]);
        lpow[j].push_back(PolyQ(Rat(1)));
        for (int k = 1; k <= N[j]; ++k) {
            PolyQ nx = lpow[j].back() * l;
            nx.scale(Rat(1) / Rat(k));
            lpow[j].push_back(nx);
        }
    }
    // choose a_{R-1}, ..., a_0; m_j = a_j + m_{j+1}
    std::vector<int> m(R + 1, 0);
    std::function<void(int, const PolyQ&)> rec = [&](int j, const PolyQ& acc) {
        if (j < 0) {
            std::vector<int> rest(R);
            for (int i = 0; i < R; ++i) rest[i] = N[i] - m[i];
            const T& e = E[box.index(rest)];
            if (Field<T>::zero(e)) return;
            for (auto& [mono_, c] : acc.terms()) out.add(mono_, e * c);
            return;
        }
        for (int a = 0; m[j + 1] + a <= N[j]; ++a) {
            m[j] = m[j + 1] + a;
            if (lpow[j][a].is_zero()) continue;
            rec(j - 1, a ? acc * lpow[j][a] : acc);
        }
    };
    rec(R - 1, PolyQ(Rat(1)));
    return out.scale(pref);
}

template Poly<Rat> iterated_residue_raw<Rat>(const ResidueProblem&);
template Poly<Cyclo> iterated_residue_raw<Cyclo>(const ResidueProblem&);

PolyC iterated_residue(const ResidueProblem& p, const Rat& det)
{
    PolyC out;
    Rat inv = 1 / abs(det);
    if (p.q <= 2) {
        auto r = iterated_residue_raw<Rat>(p);
        for (auto& [m, c] : r.terms()) out.add(m, Cyclo(p.q, c * inv));
        return out;
    }
    out = iterated_residue_raw<Cyclo>(p);
    out.scale(inv);
    return out;
}

std::vector<Cyclo> expand_one_minus_exp(int q, int64_t a, const Rat& c, int order)
{
    if (sgn(c) == 0) throw identically_singular("expand_one_minus_exp: constant factor");
    Field<Cyclo> F{q};
    std::vector<Cyclo> out(order + 2, Cyclo(q));
    auto A = unit_series(F, a, order + 2);
    auto B = series_inverse(F, A);
    if (is_root_of_unity_one(q, a)) {
        // 1/(1 - e^{-x}) = x^{-1} B(x), x = c z
        Rat ck = 1 / c;
        for (int k = -1; k <= order; ++k) {
            out[k + 1] = B[k + 1] * ck;
            ck *= c;
        }
    } else {
        Cyclo g0 = cyclo_inverse(Cyclo(q, Rat(1)) - cyclo_pow(q, a));
        Rat ck = 1;
        for (int k = 0; k <= order; ++k) {
            out[k + 1] = B[k] * g0 * ck;
            ck *= c;
        }
    }
    return out;
}

Rat bernoulli(int n)
{
    static std::mutex mu;
    static std::vector<Rat> B{Rat(1)};
    std::lock_guard<std::mutex> lock(mu);
    while ((int)B.size() <= n) {
        int m = (int)B.size();
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        Rat s = 0;
        Int binom = 1;
        for (int k = 0; k < m; ++k) {
            s += B[k] * Rat(binom);
            binom = binom * (m + 1 - k) / (k + 1);
        }
        B.push_back(-s / Rat(m + 1));
    }
    return B[n];
}

ResidueProblem with_epsilon_constant_term(const ResidueProblem& p, const RVec& factor_eps, const Rat& exp_eps)
{
    if (factor_eps.size() != p.factors.size()) throw std::invalid_argument("with_epsilon_constant_term: size");
    ResidueProblem e = p;
    e.R = p.R + 1;
    for (size_t i = 0; i < e.factors.size(); ++i) e.factors[i].coords.push_back(factor_eps[i]);
    e.u1.resize(p.R, Rat(0));
    e.u1.push_back(exp_eps);
    if (!e.lin.empty()) e.lin.push_back(RVec(p.nparams, Rat(0)));
    ExpFactor inv{FactorKind::inv, 0, RVec(e.R, Rat(0)), 1};
    inv.coords[p.R] = 1;
    e.factors.push_back(inv);
    return e;
}

Rat partition_function_residue(const std::vector<IVec>& psi, const IVec& mu, const RVec& xi)
{
    if (psi.empty()) throw std::invalid_argument("partition_function_residue: empty list");
    int r = (int)psi[0].size();
    std::vector<IVec> distinct;
    for (auto& v : psi)
        if (std::find(distinct.begin(), distinct.end(), v) == distinct.end()) distinct.push_back(v);
    if (rank_of(distinct) < r) throw std::domain_error("partition_function_residue: list does not span");
    long q = lattice_index(distinct, r);
    // gammas of one exact order form Galois orbits, so each partial sum is rational
    std::map<int, Cyclo> by_order;
    for (auto& g : spanning_gammas(distinct, r, q)) {
        long d = q;
        for (long x : g) d = std::gcd(d, x);
        int qq = (int)(q / d);
        IVec gg(r);
        for (int i = 0; i < r; ++i) gg[i] = g[i] / d;
        std::vector<IVec> sub;
        for (auto& v : psi)
            if (mod_floor(dot(v, gg), qq) == 0) sub.push_back(v);
        OSEnumerator os(sub);
        for (auto& b : os.adapted(xi)) {
            std::vector<IVec> sigma;
            for (int i : b.indices) sigma.push_back(sub[i]);
            ResidueProblem pr;
            pr.R = r;
            pr.q = qq;
            for (auto& v : psi)
                pr.factors.push_back({FactorKind::pole, -dot(v, gg), coordinates_in(sigma, to_rat(v)), 1});
            pr.u1 = coordinates_in(sigma, to_rat(mu));
            PolyC res = iterated_residue(pr, b.det);
            const Cyclo* c = res.coeff(0);
            if (!c) continue;
            auto it = by_order.try_emplace(qq, Cyclo(qq)).first;
            it->second += *c * cyclo_pow(qq, dot(mu, gg));
        }
    }
    Rat total = 0;
    for (auto& [qq, s] : by_order) {
        if (!s.is_rational()) throw std::logic_error("partition_function_residue: non-rational partial sum");
        total += s.rational_part();
    }
    return total;
}

}  // namespace kron
