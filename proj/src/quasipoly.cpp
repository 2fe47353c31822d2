#include "kron/quasipoly.hpp"

#include "json.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace kron {

using json = nlohmann::json;

QuasiPolynomial::QuasiPolynomial(std::vector<std::string> vars, int Q) : vars_(std::move(vars)), Q_(Q)
{
    if (Q < 1) throw std::invalid_argument("QuasiPolynomial: modulus < 1");
    if ((int)vars_.size() > mono::max_vars)
        throw std::length_error("QuasiPolynomial: at most 12 variables supported");
}

QuasiPolynomial QuasiPolynomial::constant(std::vector<std::string> vars, const Rat& c)
{
    QuasiPolynomial p(std::move(vars));
    p.add(1, Form(p.nvars(), 0), PolyC(Cyclo(1, c)));
    return p;
}

void QuasiPolynomial::normalize_form(Form& L) const
{
    for (auto& x : L) x = mod_floor(x, Q_);
}

static PolyC lift_poly(const PolyC& p, int Q)
{
    PolyC r;
    for (auto& [m, c] : p.terms()) r.add(m, c.lift(Q));
    return r;
}

void QuasiPolynomial::add(int q, const Form& L, const PolyC& p)
{
    if ((int)L.size() != nvars()) throw std::invalid_argument("QuasiPolynomial::add: form arity");
    if (p.is_zero()) return;
    int Qn = (int)lcm64(Q_, q);
    if (Qn != Q_) *this = lifted(Qn);
    Form Ln(L);
    for (auto& x : Ln) x *= Q_ / q;
    normalize_form(Ln);
    PolyC pl = lift_poly(p, Q_);
    auto it = g_.find(Ln);
    if (it == g_.end()) {
        g_.emplace(Ln, std::move(pl));
        return;
    }
    it->second += pl;
    if (it->second.is_zero()) g_.erase(it);
}

void QuasiPolynomial::add_rational(const Form& L, int q, const PolyQ& p)
{
    PolyC pc;
    for (auto& [m, c] : p.terms()) pc.add(m, Cyclo(q, c));
    add(q, L, pc);
}

QuasiPolynomial& QuasiPolynomial::operator+=(const QuasiPolynomial& o)
{
    if (o.vars_ != vars_) throw std::invalid_argument("QuasiPolynomial: variable mismatch");
    for (auto& [L, p] : o.g_) add(o.Q_, L, p);
    return *this;
}

QuasiPolynomial& QuasiPolynomial::operator*=(const Rat& c)
{
    if (c == 0) {
        g_.clear();
        return *this;
    }
    for (auto& [L, p] : g_) p.scale(c);
    return *this;
}

QuasiPolynomial QuasiPolynomial::lifted(int Q) const
{
    if (Q % Q_) throw std::invalid_argument("QuasiPolynomial::lifted: modulus does not divide");
    QuasiPolynomial r(vars_, Q);
    for (auto& [L, p] : g_) {
        Form Ln(L);
        for (auto& x : Ln) x *= Q / Q_;
        r.normalize_form(Ln);
        r.g_.emplace(Ln, lift_poly(p, Q));
    }
    return r;
}

namespace {

// Express c in Q(zeta_Q) as an element of Q(zeta_q), q | Q, if possible.
bool descend(const Cyclo& c, int q, Cyclo& out)
{
    int Q = c.modulus();
    int n = c.degree(), m = euler_phi(q);
    // columns: lifts of zeta_q^j, j < m
    std::vector<std::vector<Rat>> A(n, std::vector<Rat>(m + 1));
    for (int j = 0; j < m; ++j) {
        Cyclo b = cyclo_pow(q, j).lift(Q);
        for (int i = 0; i < n; ++i) A[i][j] = b.coeffs()[i];
    }
    for (int i = 0; i < n; ++i) A[i][m] = c.coeffs()[i];
    int row = 0;
    std::vector<int> pivcol;
    for (int col = 0; col < m && row < n; ++col) {
        int p = -1;
        for (int i = row; i < n; ++i)
            if (A[i][col] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(A[p], A[row]);
        for (int i = 0; i < n; ++i) {
            if (i == row || A[i][col] == 0) continue;
            Rat f = A[i][col] / A[row][col];
            for (int j = col; j <= m; ++j) A[i][j] -= f * A[row][j];
        }
        pivcol.push_back(col);
        ++row;
    }
    for (int i = row; i < n; ++i)
        if (A[i][m] != 0) return false;
    std::vector<Rat> x(m);
    for (int i = 0; i < row; ++i) x[pivcol[i]] = A[i][m] / A[i][pivcol[i]];
    out = Cyclo(q, x);
    return true;
}

}  // namespace

QuasiPolynomial QuasiPolynomial::reduced() const
{
    for (int q = 1; q < Q_; ++q) {
        if (Q_ % q) continue;
        int step = Q_ / q;
        bool ok = true;
        QuasiPolynomial r(vars_, q);
        for (auto& [L, p] : g_) {
            Form Ln(L);
            for (auto& x : Ln) {
                if (x % step) ok = false;
                x /= step;
            }
            if (!ok) break;
            PolyC pd;
            for (auto& [mm, c] : p.terms()) {
                Cyclo d;
                if (!descend(c, q, d)) {
                    ok = false;
                    break;
                }
                pd.add(mm, d);
            }
            if (!ok) break;
            r.g_.emplace(Ln, std::move(pd));
        }
        if (ok) return r;
    }
    return *this;
}

int QuasiPolynomial::degree() const
{
    int d = -1;
    for (auto& [L, p] : g_) d = std::max(d, p.degree());
    return d;
}

std::set<int> QuasiPolynomial::periods() const
{
    std::set<int> s;
    for (auto& [L, p] : g_) {
        int64_t g = Q_;
        for (auto x : L) g = gcd64(g, x);
        s.insert((int)(Q_ / g));
    }
    return s;
}

Rat QuasiPolynomial::evaluate(const std::vector<Int>& point) const
{
    if ((int)point.size() != nvars()) throw std::invalid_argument("evaluate: point arity");
    Cyclo acc(Q_);
    for (auto& [L, p] : g_) {
        Int e = 0;
        for (int i = 0; i < nvars(); ++i) e += L[i] * point[i];
        Int er = e % Q_;
        if (er < 0) er += Q_;
        Cyclo val(Q_);
        for (auto& [m, c] : p.terms()) {
            Int mv = 1;
            for (int i = 0; i < nvars(); ++i) {
                int k = mono::exp(m, i);
                for (int j = 0; j < k; ++j) mv *= point[i];
            }
            val += c * Rat(mv);
        }
        acc += val * cyclo_pow(Q_, er.get_si());
    }
    if (!acc.is_rational())
        throw representation_fault("quasi-polynomial value is not rational: " + acc.str());
    return acc.rational_part();
}

Rat QuasiPolynomial::evaluate(const std::vector<long>& point) const
{
    std::vector<Int> p(point.begin(), point.end());
    return evaluate(p);
}

QuasiPolynomial QuasiPolynomial::compose(const std::vector<std::string>& new_vars,
                                         const std::vector<std::vector<int64_t>>& B,
                                         const std::vector<int64_t>& b) const
{
    int m = (int)new_vars.size();
    if ((int)B.size() != nvars() || (int)b.size() != nvars())
        throw std::invalid_argument("compose: map arity");
    std::vector<PolyC> subs(nvars());
    for (int i = 0; i < nvars(); ++i) {
        PolyC s(Cyclo(Q_, Rat(b[i])));
        for (int j = 0; j < m; ++j)
            if (B[i][j]) s.add(mono::var(j), Cyclo(Q_, Rat(B[i][j])));
        subs[i] = s;
    }
    QuasiPolynomial r(new_vars, Q_);
    Cyclo one(Q_, Rat(1));
    for (auto& [L, p] : g_) {
        Form Ln(m, 0);
        int64_t shift = 0;
        for (int i = 0; i < nvars(); ++i) {
            shift += L[i] * b[i];
            for (int j = 0; j < m; ++j) Ln[j] += L[i] * B[i][j];
        }
        PolyC c = p.compose(subs, one);
        c.scale(cyclo_pow(Q_, shift));
        r.add(Q_, Ln, c);
    }
    return r;
}

bool operator==(const QuasiPolynomial& a, const QuasiPolynomial& b)
{
    if (a.vars_ != b.vars_) return false;
    int Q = (int)lcm64(a.Q_, b.Q_);
    QuasiPolynomial x = a.lifted(Q), y = b.lifted(Q);
    return x.g_ == y.g_;
}

// ---------------------------------------------------------------- printing

static std::string mono_pretty(uint64_t m, const std::vector<std::string>& vars)
{
    std::string s;
    for (int i = 0; i < (int)vars.size(); ++i) {
        int e = mono::exp(m, i);
        if (!e) continue;
        if (!s.empty()) s += "*";
        s += vars[i];
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

template <class T, class F>
static std::string poly_pretty_impl(const Poly<T>& p, const std::vector<std::string>& vars, F coeff_str)
{
    if (p.is_zero()) return "0";
    std::vector<std::pair<uint64_t, const T*>> ts;
    for (auto& [m, c] : p.terms()) ts.push_back({m, &c});
    std::stable_sort(ts.begin(), ts.end(), [](auto& x, auto& y) {
        int dx = mono::degree(x.first), dy = mono::degree(y.first);
        if (dx != dy) return dx > dy;
        return x.first > y.first;
    });
    std::string s;
    for (auto& [m, c] : ts) {
        std::string cs = coeff_str(*c);
        std::string ms = mono_pretty(m, vars);
        bool neg = !cs.empty() && cs[0] == '-';
        if (neg) cs = cs.substr(1);
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        if (ms.empty())
            s += cs;
        else if (cs == "1")
            s += ms;
        else
            s += cs + "*" + ms;
    }
    return s;
}

std::string poly_pretty(const PolyQ& p, const std::vector<std::string>& vars)
{
    return poly_pretty_impl(p, vars, [](const Rat& c) { return to_string(c); });
}

static std::string form_pretty(const QuasiPolynomial::Form& L, const std::vector<std::string>& vars)
{
    std::string s;
    for (size_t i = 0; i < L.size(); ++i) {
        if (!L[i]) continue;
        if (!s.empty()) s += "+";
        if (L[i] != 1) s += std::to_string(L[i]) + "*";
        s += vars[i];
    }
    return s;
}

std::string QuasiPolynomial::pretty() const
{
    if (is_zero()) return "0";
    QuasiPolynomial r = reduced();
    std::string out;
    for (auto& [L, p] : r.g_) {
        bool zero_form = std::all_of(L.begin(), L.end(), [](int64_t x) { return x == 0; });
        std::string ps = poly_pretty_impl(p, vars_, [](const Cyclo& c) {
            if (c.is_rational()) return to_string(c.rational_part());
            return "[" + c.str() + "]";
        });
        std::string piece;
        if (zero_form) {
            piece = ps;
        } else {
            std::string base = r.Q_ == 2 ? "(-1)" : "zeta" + std::to_string(r.Q_);
            int64_t g = r.Q_;
            for (auto x : L) g = gcd64(g, x);
            QuasiPolynomial::Form Ls(L);
            if (r.Q_ % 2 == 0 && g == r.Q_ / 2) {
                base = "(-1)";
                for (auto& x : Ls) x /= g;
            }
            piece = "(" + ps + ")*" + base + "^(" + form_pretty(Ls, vars_) + ")";
        }
        if (!out.empty()) out += " + ";
        out += piece;
    }
    return out;
}

static std::string mono_key(uint64_t m, int n)
{
    std::string s;
    for (int i = 0; i < n; ++i) {
        if (i) s += ",";
        s += std::to_string(mono::exp(m, i));
    }
    return s;
}

std::string QuasiPolynomial::to_json() const
{
    QuasiPolynomial r = reduced();
    json j;
    j["vars"] = vars_;
    json terms = json::array();
    for (auto& [L, p] : r.g_) {
        int phi = euler_phi(r.Q_);
        for (int i = 0; i < phi; ++i) {
            json poly = json::object();
            for (auto& [m, c] : p.terms())
                if (c.coeffs()[i] != 0) poly[mono_key(m, nvars())] = to_string(c.coeffs()[i]);
            if (poly.empty()) continue;
            json t;
            t["q"] = r.Q_;
            std::vector<std::string> zc(phi, "0");
            zc[i] = "1";
            t["zeta_coeff"] = zc;
            json form = json::object();
            for (int v = 0; v < nvars(); ++v)
                if (L[v]) form[vars_[v]] = L[v];
            t["exponent_form"] = form;
            t["poly"] = poly;
            terms.push_back(t);
        }
    }
    j["terms"] = terms;
    return j.dump();
}

QuasiPolynomial QuasiPolynomial::from_json(const std::string& s)
{
    json j = json::parse(s);
    QuasiPolynomial r(j.at("vars").get<std::vector<std::string>>());
    for (auto& t : j.at("terms")) {
        int q = t.at("q").get<int>();
        std::vector<Rat> zc;
        for (auto& x : t.at("zeta_coeff")) zc.push_back(rat_from_string(x.get<std::string>()));
        Cyclo coef(q, zc);
        Form L(r.nvars(), 0);
        for (auto& [name, val] : t.at("exponent_form").items()) {
            auto it = std::find(r.vars_.begin(), r.vars_.end(), name);
            if (it == r.vars_.end()) throw std::invalid_argument("from_json: unknown variable " + name);
            L[it - r.vars_.begin()] = val.get<int64_t>();
        }
        PolyC p;
        for (auto& [key, val] : t.at("poly").items()) {
            std::vector<int> e;
            std::stringstream ss(key);
            std::string tok;
            while (std::getline(ss, tok, ',')) e.push_back(std::stoi(tok));
            if ((int)e.size() != r.nvars()) throw std::invalid_argument("from_json: monomial arity");
            p.add(mono::pack(e), coef * rat_from_string(val.get<std::string>()));
        }
        r.add(q, L, p);
    }
    return r;
}

// ---------------------------------------------------------------- cosets

CosetForm to_coset_form(const QuasiPolynomial& p, int g)
{
    CosetForm cf;
    cf.Q = p.modulus();
    for (auto& [L, poly] : p.groups())
        for (int i = 0; i < p.nvars(); ++i)
            if (i != g && L[i] != 0)
                throw std::invalid_argument("to_coset_form: periodic part depends on another variable");
    // shrink to the lcm of periods
    int Qp = 1;
    for (int per : p.periods()) Qp = (int)lcm64(Qp, per);
    int Q = p.modulus();
    cf.Q = Qp;
    cf.polys.resize(Qp);
    for (int f = 0; f < Qp; ++f) {
        PolyC acc;
        for (auto& [L, poly] : p.groups()) {
            PolyC t = poly;
            t.scale(cyclo_pow(Q, L[g] * f));
            acc += t;
        }
        PolyQ out;
        for (auto& [m, c] : acc.terms()) {
            if (!c.is_rational()) throw representation_fault("coset polynomial is not rational");
            out.add(m, c.rational_part());
        }
        cf.polys[f] = out;
    }
    return cf;
}

// ---------------------------------------------------------------- generating functions

void upoly_trim(UPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

UPoly upoly_mul(const UPoly& a, const UPoly& b)
{
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    upoly_trim(r);
    return r;
}

static bool upoly_divmod(const UPoly& a, const UPoly& b, UPoly& quo)
{
    UPoly rem = a;
    upoly_trim(rem);
    UPoly bb = b;
    upoly_trim(bb);
    if (bb.empty()) throw division_by_zero("polynomial division by zero");
    quo.assign(rem.size() >= bb.size() ? rem.size() - bb.size() + 1 : 0, Rat(0));
    while (rem.size() >= bb.size()) {
        size_t sh = rem.size() - bb.size();
        Rat c = rem.back() / bb.back();
        quo[sh] = c;
        for (size_t i = 0; i < bb.size(); ++i) rem[sh + i] -= c * bb[i];
        upoly_trim(rem);
    }
    upoly_trim(quo);
    return rem.empty();
}

UPoly upoly_divexact(const UPoly& a, const UPoly& b)
{
    UPoly q;
    if (!upoly_divmod(a, b, q)) throw representation_fault("inexact polynomial division");
    return q;
}

bool upoly_divisible(const UPoly& a, const UPoly& b)
{
    UPoly q;
    return upoly_divmod(a, b, q);
}

static UPoly one_minus_t(int a)
{
    UPoly r(a + 1);
    r[0] = 1;
    r[a] = -1;
    return r;
}

UPoly RationalGF::denominator() const
{
    UPoly d{Rat(1)};
    for (int a : den_exponents) d = upoly_mul(d, one_minus_t(a));
    return d;
}

std::vector<Rat> RationalGF::taylor(int n) const
{
    UPoly d = denominator();
    std::vector<Rat> s(n);
    for (int i = 0; i < n; ++i) {
        Rat v = i < (int)numerator.size() ? numerator[i] : Rat(0);
        for (int j = 1; j <= i && j < (int)d.size(); ++j) v -= d[j] * s[i - j];
        s[i] = v;  // d[0] = 1
    }
    return s;
}

bool operator==(const RationalGF& a, const RationalGF& b)
{
    UPoly l = upoly_mul(a.numerator, b.denominator());
    UPoly r = upoly_mul(b.numerator, a.denominator());
    upoly_trim(l);
    upoly_trim(r);
    return l == r;
}

bool RationalGF::numerator_palindromic() const
{
    UPoly n = numerator;
    upoly_trim(n);
    size_t lo = 0;
    while (lo < n.size() && n[lo] == 0) ++lo;
    for (size_t i = lo, j = n.size(); i < j; ++i, --j)
        if (n[i] != n[j - 1]) return false;
    return true;
}

static std::string upoly_pretty(const UPoly& p)
{
    std::string s;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        Rat c = p[i];
        bool neg = sgn(c) < 0;
        if (neg) c = -c;
        std::string term;
        if (i == 0)
            term = to_string(c);
        else {
            term = c == 1 ? "" : to_string(c) + "*";
            term += i == 1 ? "t" : "t^" + std::to_string(i);
        }
        if (s.empty())
            s = (neg ? "-" : "") + term;
        else
            s += (neg ? "-" : "+") + term;
    }
    return s.empty() ? "0" : s;
}

std::string RationalGF::pretty() const
{
    std::string num = upoly_pretty(numerator);
    if (den_exponents.empty()) return num;
    bool simple = std::count_if(numerator.begin(), numerator.end(), [](const Rat& x) { return x != 0; }) <= 1;
    std::string s = simple ? num : "(" + num + ")";
    s += "/(";
    for (int a : den_exponents) s += a == 1 ? "(1-t)" : "(1-t^" + std::to_string(a) + ")";
    return s + ")";
}

std::string RationalGF::to_json() const
{
    json j;
    // integers as JSON numbers when they fit, otherwise as strings
    json num = json::array();
    for (auto& c : numerator) {
        if (c.get_den() == 1 && c.get_num().fits_slong_p())
            num.push_back(c.get_num().get_si());
        else
            num.push_back(to_string(c));
    }
    j["numerator"] = num;
    j["denominator_exponents"] = den_exponents;
    return j.dump();
}

namespace {

UPoly cyclotomic_upoly(int d)
{
    const auto& c = cyclotomic_poly(d);
    return UPoly(c.begin(), c.end());
}

int negatives(const UPoly& p)
{
    return (int)std::count_if(p.begin(), p.end(), [](const Rat& x) { return sgn(x) < 0; });
}

}  // namespace

RationalGF generating_function(const QuasiPolynomial& p)
{
    if (p.nvars() != 1) throw std::invalid_argument("generating_function: univariate input required");
    RationalGF gf;
    if (p.is_zero()) return gf;
    CosetForm cf = to_coset_form(p, 0);
    int Q = cf.Q;
    int D = std::max(0, p.degree());
    // N(t) = sum_f t^f (1 - x)^{D+1} sum_{j<=D} p_f(f+Qj) x^j truncated, x = t^Q
    UPoly binom_pow{Rat(1)};
    for (int i = 0; i <= D; ++i) binom_pow = upoly_mul(binom_pow, UPoly{Rat(1), Rat(-1)});
    UPoly num;
    for (int f = 0; f < Q; ++f) {
        UPoly h(D + 1);
        for (int j = 0; j <= D; ++j) {
            Rat v = 0;
            long k = f + (long)Q * j;
            for (auto& [m, c] : cf.polys[f].terms()) {
                Rat mv = 1;
                for (int e = 0; e < mono::exp(m, 0); ++e) mv *= k;
                v += c * mv;
            }
            h[j] = v;
        }
        UPoly nf = upoly_mul(h, binom_pow);
        nf.resize(std::min(nf.size(), (size_t)D + 1));
        UPoly expanded((size_t)Q * D + f + 1);
        for (size_t j = 0; j < nf.size(); ++j) expanded[f + Q * j] += nf[j];
        if (num.size() < expanded.size()) num.resize(expanded.size());
        for (size_t i = 0; i < expanded.size(); ++i) num[i] += expanded[i];
    }
    upoly_trim(num);
    // denominator (1 - t^Q)^{D+1} = (-1)^{D+1} prod_{d|Q} Phi_d^{D+1}
    std::map<int, int> mult;
    for (int d = 1; d <= Q; ++d)
        if (Q % d == 0) mult[d] = D + 1;
    for (auto& [d, m] : mult) {
        UPoly phi = cyclotomic_upoly(d);
        UPoly quo;
        while (m > 0 && upoly_divmod(num, phi, quo)) {
            num = quo;
            --m;
        }
    }
    UPoly reduced_den{Rat((D + 1) % 2 ? -1 : 1)};
    for (auto& [d, m] : mult)
        for (int i = 0; i < m; ++i) reduced_den = upoly_mul(reduced_den, cyclotomic_upoly(d));
    // greedy shape: largest cyclotomic index first
    std::map<int, int> left = mult;
    std::vector<int> as;
    while (true) {
        int best = 0;
        for (auto& [d, m] : left)
            if (m > 0) best = std::max(best, d);
        if (!best) break;
        as.push_back(best);
        for (int e = 1; e <= best; ++e)
            if (best % e == 0) left[e] -= 1;
    }
    auto numerator_for = [&](const std::vector<int>& a) {
        UPoly d{Rat(1)};
        for (int x : a) d = upoly_mul(d, one_minus_t(x));
        return upoly_divexact(upoly_mul(num, d), reduced_den);
    };
    UPoly best_num = numerator_for(as);
    // nudge towards a numerator with nonnegative coefficients
    for (int step = 0; step < 6 && negatives(best_num) > 0; ++step) {
        int best_neg = negatives(best_num);
        std::vector<int> best_as;
        UPoly cand_num;
        for (size_t i = 0; i < as.size(); ++i)
            for (int m : {2, 3}) {
                std::vector<int> c = as;
                c[i] *= m;
                UPoly n = numerator_for(c);
                if (negatives(n) < best_neg) {
                    best_neg = negatives(n);
                    best_as = c;
                    cand_num = n;
                }
            }
        if (best_as.empty()) break;
        as = best_as;
        best_num = cand_num;
    }
    std::sort(as.begin(), as.end());
    gf.numerator = best_num;
    gf.den_exponents = as;
    return gf;
}

}  // namespace kron
