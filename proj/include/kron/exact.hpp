#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kron {

using Int = mpz_class;
using Rat = mpq_class;

// gmpxx does not canonicalize on construction from a pair.
inline Rat frac(long n, long d)
{
    Rat r(n, d);
    r.canonicalize();
    return r;
}

struct division_by_zero : std::domain_error {
    using std::domain_error::domain_error;
};

std::string to_string(const Rat& x);          // "n/d", or "n" when d = 1
Rat rat_from_string(const std::string& s);     // accepts "n", "n/d", "-n/d"

int64_t mod_floor(int64_t a, int64_t m);
int64_t gcd64(int64_t a, int64_t b);
int64_t lcm64(int64_t a, int64_t b);
int euler_phi(int q);

// Integer coefficients of the q-th cyclotomic polynomial, lowest degree first.
// Memoized; safe to call from several threads.
const std::vector<int64_t>& cyclotomic_poly(int q);

// An element of Q(zeta_q) stored as a residue class in Q[x]/Phi_q(x).
class Cyclo {
public:
    Cyclo() : q_(1), c_(1) {}
    explicit Cyclo(int q);                      // zero of Q(zeta_q)
    Cyclo(int q, const Rat& r);
    Cyclo(int q, std::vector<Rat> coeffs);      // reduces coeffs of any length

    int modulus() const { return q_; }
    int degree() const { return (int)c_.size(); }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    const Rat& rational_part() const { return c_[0]; }

    Cyclo& operator+=(const Cyclo& o);
    Cyclo& operator-=(const Cyclo& o);
    Cyclo& operator*=(const Cyclo& o);
    Cyclo& operator*=(const Rat& r);
    Cyclo operator-() const;

    friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
    friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
    friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
    friend Cyclo operator*(Cyclo a, const Rat& b) { return a *= b; }
    friend bool operator==(const Cyclo& a, const Cyclo& b);
    friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

    // Automorphism zeta -> zeta^t, gcd(t, q) = 1.
    Cyclo galois(int t) const;
    // Same element viewed in Q(zeta_Q), q | Q.
    Cyclo lift(int Q) const;

    std::string str() const;

private:
    int q_;
    std::vector<Rat> c_;
};

Cyclo cyclo_pow(int q, int64_t a);
Cyclo cyclo_inverse(const Cyclo& v);
inline bool is_root_of_unity_one(int q, int64_t a) { return mod_floor(a, q) == 0; }

// Complex embedding zeta -> exp(2 pi i t / q); test-side sanity only.
void cyclo_eval(const Cyclo& v, int t, double& re, double& im);

}  // namespace kron
