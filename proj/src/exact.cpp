#include "kron/exact.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace kron {

std::string to_string(const Rat& x)
{
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat rat_from_string(const std::string& s)
{
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (r.get_den() == 0) throw division_by_zero("zero denominator: " + s);
    r.canonicalize();
    return r;
}

int64_t mod_floor(int64_t a, int64_t m)
{
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

int64_t gcd64(int64_t a, int64_t b)
{
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

int64_t lcm64(int64_t a, int64_t b)
{
    if (a == 0 || b == 0) return 0;
    return a / gcd64(a, b) * b;
}

int euler_phi(int q)
{
    int r = q;
    for (int p = 2; p * p <= q; ++p)
        if (q % p == 0) {
            while (q % p == 0) q /= p;
            r -= r / p;
        }
    if (q > 1) r -= r / q;
    return r;
}

namespace {

struct Field {
    std::vector<int64_t> phi_poly;           // Phi_q, monic
    std::vector<std::vector<int64_t>> pw;    // x^e mod Phi_q, e < q
};

std::vector<int64_t> poly_divexact(std::vector<int64_t> a, const std::vector<int64_t>& b)
{
    // b monic
    size_t n = a.size(), m = b.size();
    std::vector<int64_t> quo(n - m + 1, 0);
    for (size_t k = n - m + 1; k-- > 0;) {
        int64_t c = a[k + m - 1];
        quo[k] = c;
        if (c)
            for (size_t j = 0; j < m; ++j) a[k + j] -= c * b[j];
    }
    return quo;
}

const Field& field(int q)
{
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Field>> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(q);
    if (it != memo.end()) return *it->second;

    auto f = std::make_unique<Field>();
    // Phi_q(x) = prod_{d | q} (x^d - 1)^{mu(q/d)}
    auto mobius = [](int n) {
        int m = 1;
        for (int pr = 2; pr * pr <= n; ++pr)
            if (n % pr == 0) {
                n /= pr;
                if (n % pr == 0) return 0;
                m = -m;
            }
        if (n > 1) m = -m;
        return m;
    };
    std::vector<int64_t> num{1}, den{1};
    auto mul_xd_minus_1 = [](const std::vector<int64_t>& a, int d) {
        std::vector<int64_t> r(a.size() + d, 0);
        for (size_t i = 0; i < a.size(); ++i) {
            r[i + d] += a[i];
            r[i] -= a[i];
        }
        return r;
    };
    for (int d = 1; d <= q; ++d) {
        if (q % d) continue;
        int mu = mobius(q / d);
        if (mu == 1) num = mul_xd_minus_1(num, d);
        if (mu == -1) den = mul_xd_minus_1(den, d);
    }
    f->phi_poly = poly_divexact(num, den);
    if (f->phi_poly.back() < 0)
        for (auto& c : f->phi_poly) c = -c;

    int deg = (int)f->phi_poly.size() - 1;
    f->pw.assign(q, std::vector<int64_t>(deg, 0));
    std::vector<int64_t> cur(deg, 0);
    if (deg > 0) cur[0] = 1;
    for (int e = 0; e < q; ++e) {
        f->pw[e] = cur;
        // cur *= x
        int64_t top = deg > 0 ? cur[deg - 1] : 0;
        for (int i = deg - 1; i > 0; --i) cur[i] = cur[i - 1];
        if (deg > 0) cur[0] = 0;
        for (int i = 0; i < deg; ++i) cur[i] -= top * f->phi_poly[i];
    }
    if (deg == 0) f->pw.assign(q, std::vector<int64_t>());
    const Field& ref = *f;
    memo.emplace(q, std::move(f));
    return ref;
}

}  // namespace

const std::vector<int64_t>& cyclotomic_poly(int q)
{
    if (q < 1) throw std::invalid_argument("cyclotomic_poly: q < 1");
    return field(q).phi_poly;
}

Cyclo::Cyclo(int q) : q_(q), c_(euler_phi(q))
{
    if (q < 1) throw std::invalid_argument("Cyclo: q < 1");
}

Cyclo::Cyclo(int q, const Rat& r) : Cyclo(q) { c_[0] = r; }

Cyclo::Cyclo(int q, std::vector<Rat> coeffs) : Cyclo(q)
{
    const Field& f = field(q);
    int deg = degree();
    for (size_t e = 0; e < coeffs.size(); ++e) {
        if (coeffs[e] == 0) continue;
        if ((int)e < deg) {
            c_[e] += coeffs[e];
            continue;
        }
        // x^e = x^(e mod q) since x^q = 1 in the quotient
        const auto& row = f.pw[e % q];
        for (int i = 0; i < deg; ++i)
            if (row[i]) c_[i] += coeffs[e] * row[i];
    }
}

bool Cyclo::is_zero() const
{
    for (auto& c : c_)
        if (c != 0) return false;
    return true;
}

bool Cyclo::is_rational() const
{
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool Cyclo::is_one() const { return is_rational() && c_[0] == 1; }

static void check_same(const Cyclo& a, const Cyclo& b)
{
    if (a.modulus() != b.modulus()) throw std::logic_error("Cyclo: modulus mismatch");
}

Cyclo& Cyclo::operator+=(const Cyclo& o)
{
    check_same(*this, o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o)
{
    check_same(*this, o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Cyclo& Cyclo::operator*=(const Rat& r)
{
    for (auto& c : c_) c *= r;
    return *this;
}

Cyclo& Cyclo::operator*=(const Cyclo& o)
{
    check_same(*this, o);
    int deg = degree();
    if (deg == 1) {
        c_[0] *= o.c_[0];
        return *this;
    }
    const Field& f = field(q_);
    std::vector<Rat> prod(2 * deg - 1);
    Rat t;
    for (int i = 0; i < deg; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < deg; ++j) {
            if (o.c_[j] == 0) continue;
            mpq_mul(t.get_mpq_t(), c_[i].get_mpq_t(), o.c_[j].get_mpq_t());
            prod[i + j] += t;
        }
    }
    for (int i = 0; i < deg; ++i) c_[i] = prod[i];
    for (int e = deg; e < 2 * deg - 1; ++e) {
        if (prod[e] == 0) continue;
        const auto& row = f.pw[e % q_];
        for (int i = 0; i < deg; ++i)
            if (row[i]) c_[i] += prod[e] * row[i];
    }
    return *this;
}

Cyclo Cyclo::operator-() const
{
    Cyclo r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

bool operator==(const Cyclo& a, const Cyclo& b)
{
    if (a.q_ != b.q_) return a.lift((int)lcm64(a.q_, b.q_)) == b.lift((int)lcm64(a.q_, b.q_));
    return a.c_ == b.c_;
}

Cyclo Cyclo::galois(int t) const
{
    if (gcd64(t, q_) != 1) throw std::invalid_argument("Cyclo::galois: t not a unit");
    std::vector<Rat> big(q_);
    for (int i = 0; i < degree(); ++i) big[mod_floor((int64_t)i * t, q_)] += c_[i];
    return Cyclo(q_, std::move(big));
}

Cyclo Cyclo::lift(int Q) const
{
    if (Q % q_) throw std::invalid_argument("Cyclo::lift: modulus does not divide");
    if (Q == q_) return *this;
    int step = Q / q_;
    std::vector<Rat> big(Q);
    for (int i = 0; i < degree(); ++i) big[(int64_t)i * step % Q] += c_[i];
    return Cyclo(Q, std::move(big));
}

std::string Cyclo::str() const
{
    std::string s;
    for (int i = 0; i < degree(); ++i) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += " + ";
        s += "(" + to_string(c_[i]) + ")";
        if (i > 0) s += "*z" + std::to_string(q_) + "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

Cyclo cyclo_pow(int q, int64_t a)
{
    if (q < 1) throw std::invalid_argument("cyclo_pow: q < 1");
    const Field& f = field(q);
    const auto& row = f.pw[mod_floor(a, q)];
    Cyclo r(q);
    std::vector<Rat> c(row.begin(), row.end());
    if (c.empty()) c.push_back(1);
    return Cyclo(q, std::move(c));
}

namespace {

using RPoly = std::vector<Rat>;

void trim(RPoly& p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// a = b*quo + rem
void divmod(const RPoly& a, const RPoly& b, RPoly& quo, RPoly& rem)
{
    rem = a;
    trim(rem);
    quo.assign(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, Rat(0));
    while (rem.size() >= b.size() && !rem.empty()) {
        size_t sh = rem.size() - b.size();
        Rat c = rem.back() / b.back();
        quo[sh] = c;
        for (size_t i = 0; i < b.size(); ++i) rem[sh + i] -= c * b[i];
        trim(rem);
    }
}

RPoly mul(const RPoly& a, const RPoly& b)
{
    if (a.empty() || b.empty()) return {};
    RPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

RPoly sub(const RPoly& a, const RPoly& b)
{
    RPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

}  // namespace

Cyclo cyclo_inverse(const Cyclo& v)
{
    if (v.is_zero()) throw division_by_zero("cyclo_inverse of zero");
    int q = v.modulus();
    if (v.degree() == 1) return Cyclo(q, Rat(1) / v.rational_part());
    // extended Euclid: s*a + t*phi = g
    const auto& pz = cyclotomic_poly(q);
    RPoly phi(pz.begin(), pz.end());
    RPoly a = v.coeffs();
    trim(a);
    RPoly r0 = phi, r1 = a, s0, s1{Rat(1)};
    while (!r1.empty()) {
        RPoly quo, rem;
        divmod(r0, r1, quo, rem);
        RPoly s2 = sub(s0, mul(quo, s1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is a nonzero constant since Phi_q is irreducible
    if (r0.size() != 1) throw std::logic_error("cyclo_inverse: non-constant gcd");
    for (auto& c : s0) c /= r0[0];
    return Cyclo(q, s0);
}

void cyclo_eval(const Cyclo& v, int t, double& re, double& im)
{
    re = im = 0;
    const double two_pi = 6.283185307179586476925;
    for (int i = 0; i < v.degree(); ++i) {
        double c = v.coeffs()[i].get_d();
        double ang = two_pi * (double)((int64_t)i * t % v.modulus()) / v.modulus();
        re += c * std::cos(ang);
        im += c * std::sin(ang);
    }
}

}  // namespace kron
