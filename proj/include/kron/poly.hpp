#pragma once

#include "kron/exact.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace kron {

// Monomials are packed into 64 bits: 5 bits per variable, up to 12 variables.
namespace mono {

constexpr int bits = 5;
constexpr int max_vars = 12;
constexpr int max_exp = (1 << bits) - 1;

inline int exp(uint64_t m, int i) { return (int)((m >> (bits * i)) & max_exp); }

inline uint64_t var(int i, int e = 1)
{
    if (i >= max_vars || e > max_exp) throw std::length_error("monomial out of packing range");
    return (uint64_t)e << (bits * i);
}

inline uint64_t pack(const std::vector<int>& e)
{
    uint64_t m = 0;
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i]) m |= var((int)i, e[i]);
    return m;
}

inline std::vector<int> unpack(uint64_t m, int n)
{
    std::vector<int> e(n);
    for (int i = 0; i < n; ++i) e[i] = exp(m, i);
    return e;
}

inline int degree(uint64_t m)
{
    int d = 0;
    for (int i = 0; i < max_vars; ++i) d += exp(m, i);
    return d;
}

// Caller guarantees no field overflows (total degree bounded by max_exp).
inline uint64_t mul(uint64_t a, uint64_t b) { return a + b; }

}  // namespace mono

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool is_zero(const Cyclo& x) { return x.is_zero(); }

// Sparse multivariate polynomial over a commutative ring T.
template <class T>
class Poly {
public:
    using Terms = std::map<uint64_t, T>;

    Poly() = default;
    explicit Poly(const T& c)
    {
        if (!kron::is_zero(c)) t_.emplace(0, c);
    }
    Poly(uint64_t m, const T& c)
    {
        if (!kron::is_zero(c)) t_.emplace(m, c);
    }

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }

    int degree() const
    {
        int d = -1;
        for (auto& [m, c] : t_) d = std::max(d, mono::degree(m));
        return d;
    }

    void add(uint64_t m, const T& c)
    {
        if (kron::is_zero(c)) return;
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_.emplace(m, c);
            return;
        }
        it->second += c;
        if (kron::is_zero(it->second)) t_.erase(it);
    }

    Poly& operator+=(const Poly& o)
    {
        for (auto& [m, c] : o.t_) add(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o)
    {
        for (auto& [m, c] : o.t_) add(m, -c);
        return *this;
    }
    template <class S>
    Poly& scale(const S& s)
    {
        for (auto it = t_.begin(); it != t_.end();) {
            it->second *= s;
            if (kron::is_zero(it->second))
                it = t_.erase(it);
            else
                ++it;
        }
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        Poly r;
        for (auto& [ma, ca] : a.t_)
            for (auto& [mb, cb] : b.t_) r.add(mono::mul(ma, mb), ca * cb);
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }

    // Coefficient of monomial m, or nullptr.
    const T* coeff(uint64_t m) const
    {
        auto it = t_.find(m);
        return it == t_.end() ? nullptr : &it->second;
    }

    // Substitute x_i -> subs[i] (each a polynomial in the new variables).
    Poly compose(const std::vector<Poly>& subs, const T& one) const
    {
        Poly r;
        int n = (int)subs.size();
        std::vector<std::vector<Poly>> pw(n);
        for (auto& [m, c] : t_) {
            Poly term(c);
            for (int i = 0; i < n; ++i) {
                int e = mono::exp(m, i);
                if (!e) continue;
                auto& p = pw[i];
                if (p.empty()) p.push_back(Poly(one));
                while ((int)p.size() <= e) p.push_back(p.back() * subs[i]);
                term = term * p[e];
            }
            r += term;
        }
        return r;
    }

private:
    Terms t_;
};

using PolyQ = Poly<Rat>;
using PolyC = Poly<Cyclo>;

}  // namespace kron
