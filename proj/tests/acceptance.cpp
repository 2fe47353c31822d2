// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [ids...] [--stretch]
//
// Every comparison is exact (integers, rationals, cyclotomic coefficients).
// A criterion also fails when it exceeds its wall-clock budget below.

#include "kron/oracle.hpp"
#include "kron/osbases.hpp"
#include "kron/pipeline.hpp"
#include "kron/residue.hpp"

#include <chrono>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

using namespace kron;

namespace {

// wall-clock budgets in seconds
constexpr double budget_instant = 10;
constexpr double budget_seconds = 120;
constexpr double budget_minute = 60;
constexpr double budget_minutes = 3600;
constexpr double budget_stretch = 6 * 3600;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    int failures = 0;

    void expect(bool ok, const std::string& what)
    {
        if (ok) return;
        pass = false;
        if (failures++ < 5) detail << " [mismatch: " << what << "]";
    }
};

struct Criterion {
    std::string id;
    std::string title;
    double budget;
    std::function<void(Outcome&)> run;
    bool stretch = false;
};

PipelineOptions opts()
{
    PipelineOptions o;
    o.threads = 1;
    o.cache_dir = "";
    return o;
}

Int number(const DiagramTuple& t) { return kronecker_number(t, opts()).number; }
QuasiPolynomial dilated(const DiagramTuple& t) { return kronecker_dilated(t, opts()).value; }
Rat at(const QuasiPolynomial& p, long k) { return p.evaluate(std::vector<long>{k}); }

DiagramTuple scaled(DiagramTuple t, long k)
{
    for (auto& d : t)
        for (auto& x : d) x *= k;
    return t;
}

std::vector<Diagram> partitions(long n, int rows)
{
    std::vector<Diagram> out;
    Diagram cur;
    std::function<void(long, long)> rec = [&](long left, long cap) {
        if ((int)cur.size() == rows) {
            if (left == 0) out.push_back(trim_zeros(cur));
            return;
        }
        for (long x = std::min(left, cap); x >= 0; --x) {
            cur.push_back(x);
            rec(left - x, x);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

// exactly `rows` positive rows with sum c >= rows
Diagram random_rows(std::mt19937_64& rng, int rows, long c)
{
    std::set<long> cuts;
    while ((int)cuts.size() < rows - 1) cuts.insert(std::uniform_int_distribution<long>(1, c - 1)(rng));
    Diagram d;
    long prev = 0;
    for (long x : cuts) {
        d.push_back(x - prev);
        prev = x;
    }
    d.push_back(c - prev);
    std::sort(d.rbegin(), d.rend());
    return d;
}

DiagramTuple random_tuple(std::mt19937_64& rng, const std::vector<int>& dims, long lo, long hi)
{
    long c = std::uniform_int_distribution<long>(std::max<long>(lo, *std::max_element(dims.begin(), dims.end())), hi)(rng);
    DiagramTuple t;
    for (int n : dims) t.push_back(random_rows(rng, n, c));
    return t;
}

long lcm_of(const std::set<int>& ps)
{
    return std::accumulate(ps.begin(), ps.end(), 1L, [](long a, int b) { return std::lcm(a, (long)b); });
}

PolyQ upoly(const std::vector<Rat>& c)
{
    PolyQ p;
    for (size_t i = 0; i < c.size(); ++i) p.add(mono::var(0, (int)i), c[i]);
    return p;
}

// per residue class f mod 6: coefficients from degree 0 up, alt[i] multiplies (-1)^f
void expect_cosets(Outcome& o, const QuasiPolynomial& p, const std::vector<Rat>& plain, const std::vector<Rat>& alt,
                   const std::vector<Rat>& constant)
{
    auto cf = to_coset_form(p);
    if (cf.Q % 6 != 0) {
        o.expect(false, "coset modulus " + std::to_string(cf.Q));
        return;
    }
    for (int f = 0; f < cf.Q; ++f) {
        std::vector<Rat> want(plain);
        for (size_t i = 0; i < alt.size(); ++i) want[i] += (f % 2 ? -1 : 1) * alt[i];
        want[0] = constant[f % 6];
        o.expect(cf.polys[f] == upoly(want), "coset polynomial " + std::to_string(f));
    }
}

// ---------------------------------------------------------------- criteria

void cauchy(Outcome& o)
{
    std::mt19937_64 rng(101);
    int checked = 0;
    for (int it = 0; it < 50; ++it) {
        long c = std::uniform_int_distribution<long>(2, 14)(rng);
        auto all = partitions(c, (int)c);
        auto& nu = all[std::uniform_int_distribution<size_t>(0, all.size() - 1)(rng)];
        auto other = all[std::uniform_int_distribution<size_t>(0, all.size() - 1)(rng)];
        if (other == nu) other = all[(std::find(all.begin(), all.end(), nu) - all.begin() + 1) % all.size()];
        o.expect(number({nu, nu}) == 1, print_tuple({nu, nu}));
        o.expect(number({nu, other}) == 0, print_tuple({nu, other}));
        checked += 2;
    }
    o.detail << checked << " pairs";
}

void oracle_equivalence(Outcome& o)
{
    long total = 0;
    for (auto dims : std::vector<std::vector<int>>{{2, 2, 2}, {3, 2, 2}, {2, 2, 2, 2}, {3, 3, 2}}) {
        long count = 0;
        for (int c = 1; c <= 8; ++c) {
            auto table = weight_table(dims, c);
            std::vector<std::vector<Diagram>> choices;
            for (int n : dims) choices.push_back(partitions(c, n));
            std::vector<size_t> idx(dims.size(), 0);
            while (true) {
                DiagramTuple t;
                for (size_t j = 0; j < dims.size(); ++j) t.push_back(choices[j][idx[j]]);
                Int a = kronecker_from_table(table, t);
                Int b = number(t);
                o.expect(a == b, print_tuple(t) + " oracle " + a.get_str() + " pipeline " + b.get_str());
                ++count;
                size_t j = 0;
                while (j < idx.size() && ++idx[j] == choices[j].size()) idx[j++] = 0;
                if (j == idx.size()) break;
            }
        }
        o.detail << " (";
        for (size_t j = 0; j < dims.size(); ++j) o.detail << (j ? "," : "") << dims[j];
        o.detail << "):" << count;
        total += count;
    }
    o.detail << " total " << total;
}

void qutrit_sequence(Outcome& o)
{
    DiagramTuple t{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
    auto p = dilated(t);
    std::vector<long> want{1, 0, 1, 1, 2, 1, 3, 2, 4, 3, 5, 4, 7, 5, 8, 7, 10, 8, 12, 10, 14};
    for (long k = 0; k <= 20; ++k) o.expect(at(p, k) == want[k], "k=" + std::to_string(k));
    auto h = hilbert_series(t, opts());
    o.expect(h == RationalGF{{1}, {2, 3, 4}}, "Hilbert series " + h.pretty());
    o.detail << "21 values, " << h.pretty();
}

void small_chamber(Outcome& o)
{
    DiagramTuple t{{132, 38, 19, 11}, {110, 90}, {120, 80}};
    auto r = kronecker_symbolic(t, opts());
    o.expect(r.value.vars() == std::vector<std::string>{"a1", "a2", "a3", "a4", "b1", "c1"}, "variables");
    enum { l1, l2, l3, l4, m1, n1 };
    auto x = [](int i) { return PolyQ(mono::var(i), Rat(1)); };
    auto c = [](long p, long q) { return PolyQ(frac(p, q)); };
    PolyQ P = c(1, 2) * x(l3) * x(m1) + c(1, 2) * x(l2) * x(l3) - c(1, 2) * x(n1) + c(1, 2) * x(l2) + c(1, 2) * x(l3) -
              x(l4) + c(1, 2) * x(m1) - c(1, 4) * x(l3) * x(l3) - c(1, 2) * x(l3) * x(n1) - c(1, 2) * x(l4) * x(m1) -
              c(1, 2) * x(l2) * x(l4) + c(3, 4) + c(1, 4) * x(l4) * x(l4) + c(1, 2) * x(l4) * x(n1);
    QuasiPolynomial want(r.value.vars());
    want.add_rational({0, 0, 0, 0, 0, 0}, 1, P);
    want.add_rational({0, 1, 0, 1, 1, 1}, 2, c(1, 8));
    want.add_rational({0, 1, 1, 0, 1, 1}, 2, c(1, 8));
    o.expect(r.value == want, "symbolic formula");

    QuasiPolynomial d({"k"});
    d.add_rational({0}, 1, upoly({frac(3, 4), frac(25, 2), Rat(52)}));
    d.add_rational({1}, 2, PolyQ(frac(1, 4)));
    o.expect(dilated(t) == d, "dilated");
    o.detail << "symbolic " << r.value.groups().size() << " character groups, dilated " << d.pretty();
}

void four_qubits(Outcome& o)
{
    auto p = dilated({{2, 1}, {2, 1}, {2, 1}, {2, 1}});
    o.expect(p.degree() == 7, "degree");
    std::vector<Rat> plain{0, frac(38545, 32256), frac(9799, 11520), frac(81601, 207360), frac(139, 1152), frac(155, 6912),
                           frac(13, 5760), frac(23, 241920)};
    std::vector<Rat> alt{0, frac(179, 1536), frac(5, 256), frac(1, 1536)};
    std::vector<Rat> c0{1, frac(5725, 10368), frac(76, 81), frac(77, 128), frac(77, 81), frac(5597, 10368)};
    expect_cosets(o, p, plain, alt, c0);
    std::vector<long> vals{1, 3, 13, 39, 110, 264, 588, 1194, 2289, 4134, 7152, 11865};
    for (long k = 0; k < 12; ++k) o.expect(at(p, k) == vals[k], "k=" + std::to_string(k));
    o.detail << "degree " << p.degree() << ", periods " << lcm_of(p.periods()) << ", 12 values";
}

void six_three_two(Outcome& o)
{
    auto p = dilated({{15, 10, 9, 4, 3, 2}, {21, 14, 8}, {27, 16}});
    o.expect(p.degree() == 8, "degree");
    std::vector<Rat> plain{0,
                           frac(117661, 23040),
                           frac(1833073, 107520),
                           frac(871363, 25920),
                           frac(710713, 17280),
                           frac(1091771, 34560),
                           frac(3072191, 207360),
                           frac(66773, 17280),
                           frac(413587, 967680)};
    std::vector<Rat> alt{0, frac(79, 512), frac(55, 1024)};
    std::vector<Rat> c0{1, frac(50429, 82944), frac(25, 27), frac(749, 1024), frac(71, 81), frac(18175, 27648)};
    expect_cosets(o, p, plain, alt, c0);
    std::vector<long> vals{1, 148, 3570, 34140, 197331, 829417, 2797696};
    for (long k = 0; k < 7; ++k) o.expect(at(p, k) == vals[k], "k=" + std::to_string(k));
    DiagramTuple s{{9, 7, 5, 3, 2, 1}, {9, 9, 9}, {14, 13}};
    Int g1 = number(s), g17 = number(scaled(s, 17));
    o.expect(g1 == 5, "g = " + g1.get_str());
    o.expect(g17 == 344715, "g(17) = " + g17.get_str());
    o.detail << "degree 8, 7 values, g = " << g1.get_str() << ", g(17.) = " << g17.get_str();
}

void wall_table(Outcome& o)
{
    auto lin = [](std::vector<Rat> c) { return upoly(c); };
    std::vector<std::pair<DiagramTuple, QuasiPolynomial>> rows;
    auto qp = [&](PolyQ p, Rat alt = 0) {
        QuasiPolynomial q({"k"});
        q.add_rational({0}, 1, p);
        if (sgn(alt)) q.add_rational({1}, 2, PolyQ(alt));
        return q;
    };
    rows.push_back({{{288, 192, 174, 120, 30, 6}, {343, 270, 197}, {654, 156}}, qp(lin({1, 17}))});
    rows.push_back({{{300, 186, 150, 78, 48, 6}, {438, 276, 54}, {465, 303}},
                    qp(lin({frac(13, 16), frac(311, 4), frac(21051, 8), frac(121077, 4)}), frac(3, 16))});
    rows.push_back({{{47, 35, 23, 13, 5, 1}, {76, 38, 10}, {85, 39}}, qp(lin({1}))});
    rows.push_back({{{276, 204, 120, 66, 30, 6}, {351, 273, 78}, {552, 150}}, qp(lin({1, 36}))});
    rows.push_back({{{276, 198, 126, 66, 48, 6}, {406, 201, 113}, {536, 184}}, qp(lin({1, 41}))});
    int i = 0;
    for (auto& [t, want] : rows) o.expect(dilated(t) == want, "wall row " + std::to_string(++i));

    auto r = kronecker_symbolic({{291, 194, 175, 120, 30, 6}, {347, 272, 197}, {659, 157}}, opts());
    enum { l1, l2, l3, l4, l5, l6, m1, m2, n1 };
    PolyQ P(frac(1, 5040));
    for (int k = 1; k <= 7; ++k) {
        PolyQ f{Rat(k)};
        for (int v : {l1, l2, l3}) f.add(mono::var(v), 1);
        f.add(mono::var(n1), -1);
        P = P * f;
    }
    PolyQ g{Rat(1)};
    for (int v : {l1, l2, l4, l5}) g.add(mono::var(v), 1);
    for (int v : {m1, m2}) g.add(mono::var(v), -1);
    P = P * g;
    QuasiPolynomial want(r.value.vars());
    want.add_rational(QuasiPolynomial::Form(r.value.nvars(), 0), 1, P);
    o.expect(r.value.vars().size() == 9 && r.value == want, "type I product formula");
    o.detail << "5 wall points, product formula with " << P.size() << " monomials";
}

void hilbert_rows(Outcome& o)
{
    auto h = [](const DiagramTuple& t) { return hilbert_series(t, opts()); };
    o.expect(h({{1, 1}, {1, 1}, {1, 1}}) == RationalGF{{1}, {2}}, "([1,1])^3");
    o.expect(h({{1, 1}, {1, 1}, {1, 1}, {1, 1}}) == RationalGF{{1}, {1, 2, 2, 3}}, "([1,1])^4");
    o.expect(h({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}) == RationalGF{{1}, {2, 3, 4}}, "([1,1,1])^3");
    UPoly num(10, 0);
    num[0] = num[9] = 1;
    auto big = h({{3, 3, 3, 3}, {4, 4, 4}, {4, 4, 4}});
    o.expect(big == RationalGF{num, {2, 2, 4, 1, 3}}, "([3,3,3,3],[4,4,4],[4,4,4]) " + big.pretty());
    o.expect(big.numerator_palindromic(), "palindromic numerator");
    o.detail << "4 rows, last " << big.pretty();
}

void five_qubits(Outcome& o)
{
    auto h = hilbert_series({{1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}}, opts());
    std::vector<long> c{1,      0,      0,      0,      16,     9,      82,     145,    383,    770,    1659,
                        3024,   5604,   9664,   15594,  24659,  36611,  52409,  71847,  95014,  119947, 146849,
                        172742, 195358, 214238, 225699, 229752, 225699, 214238, 195358, 172742, 146849, 119947,
                        95014,  71847,  52409,  36611,  24659,  15594,  9664,   5604,   3024,   1659,   770,
                        383,    145,    82,     9,      16,     0,      0,      0,      1};
    UPoly P(c.begin(), c.end());
    std::vector<int> den;
    for (int a : {2, 4, 6})
        for (int i = 0; i < 5; ++i) den.push_back(a);
    den.push_back(3);
    den.push_back(5);
    o.expect(h == RationalGF{P, den}, "HS numerator");
    o.detail << "t^21 coefficient 146849";
}

// Invariants of SL(2)^4 in Sym(H + H), H four qubits: U(16) -> SU(2)^3 x {1}
// on dims (2,2,2,2,2), rectangular Sigma, lambda = k [1,1], mu = 0.
void entanglement_measures(Outcome& o)
{
    RootDataOptions ro;
    ro.cache_dir = "";
    ro.sigma = SigmaKind::rect;
    ro.kept = {true, true, true, false};
    auto d = build_root_data({2, 2, 2, 2, 2}, ro);
    IVec lam(16, 0);
    lam[0] = lam[1] = 1;
    auto m = branch_quasipoly(d, dilated_request(lam, IVec(d.r, 0))).value;
    o.expect(m.degree() == 19, "degree " + std::to_string(m.degree()));

    // numerator in u = q^2
    std::vector<long> c{1,     0,     3,     20,    76,    219,   654,   1539, 3119, 5660, 9157, 12876, 16177, 18275,
                        18275, 16177, 12876, 9157,  5660,  3119,  1539,  654,  219,  76,   20,   3,     0,     1};
    UPoly P(c.begin(), c.end());
    std::vector<int> den;
    for (auto [a, n] : {std::pair{1, 3}, std::pair{2, 11}, std::pair{3, 6}})
        for (int i = 0; i < n; ++i) den.push_back(a);
    o.expect(generating_function(m) == RationalGF{P, den}, "generating function");

    std::vector<Rat> p(20, Rat(0)), pe(20, Rat(0)), po(20, Rat(0));
    const char* top[] = {"1507096313/159993501696000",        "13432299961/14079428149248000",
                         "556811179/7039714074624000",        "299075479/56317712596992000",
                         "4335209/15252713828352000",         "96329/8134780708454400",
                         "90331/244043421253632000",          "271067/33189905290493952000",
                         "353/3111553620983808000",           "353/472956150389538816000"};
    for (int i = 0; i < 10; ++i) p[10 + i] = Rat(top[i]);
    const char* even[] = {"84164633999/5884534656000", "417926105131/141228831744000", "8474560763/16295634432000",
                          "30016136009/391095226368000"};
    const char* odd[] = {"1335013209659/94152554496000", "6671912967271/2259661307904000",
                         "542157180107/1042920603648000", "1920961135001/25030094487552000"};
    for (int i = 0; i < 4; ++i) {
        pe[6 + i] = Rat(even[i]);
        po[6 + i] = Rat(odd[i]);
    }
    // degrees 0..5 of W_0 .. W_5
    const std::vector<std::vector<const char*>> low{
        {"1", "14055407/8953560", "4572054901/3859455600", "266225257897/463134672000", "50415619753/245188944000",
         "38627139511/653837184000"},
        {"290588607887/835884417024", "159318923928183241/166314250686431232", "572824001947094231/622310724196761600",
         "12577822401820393489/24892428967870464000", "276452038823221/1429941921408000",
         "219573425545427/3813178457088000"},
        {"1506571/1594323", "815186343623/528698764440", "89590754414783/75965664574800",
         "1745362160646217/3038626582992000", "36750520335937/178742740176000", "38627139511/653837184000"},
        {"261589/524288", "109432200819/104316534784", "29795123615357/31616660275200",
         "1927034414248049/3793999233024000", "379529711549/1961511552000", "301217799563/5230697472000"},
        {"1353103/1594323", "2345378642869/1586096293320", "88327521243583/75965664574800",
         "1738714367494217/3038626582992000", "36724846687937/178742740176000", "28157390911519/476647307136000"},
        {"371050038671/835884417024", "56607866326977347/55438083562143744", "583172408085564631/622310724196761600",
         "12632281123321577489/24892428967870464000", "276657428007221/1429941921408000",
         "301217799563/5230697472000"}};
    auto cf = to_coset_form(m);
    o.expect(cf.Q == 6, "coset modulus " + std::to_string(cf.Q));
    for (int f = 0; f < std::min(cf.Q, 6); ++f) {
        std::vector<Rat> w(20, Rat(0));
        for (int i = 0; i < 20; ++i) w[i] = p[i] + (f % 2 ? po[i] : pe[i]);
        for (int i = 0; i < 6; ++i) w[i] = Rat(low[f][i]);
        o.expect(cf.polys[f] == upoly(w), "W_" + std::to_string(f));
    }
    o.detail << "degree " << m.degree() << ", generating function and W_0..W_5";
}

void degree_periods(Outcome& o)
{
    struct Case {
        std::vector<int> dims;
        int degree;
        std::set<int> periods;
        long lo, hi;
    };
    std::mt19937_64 rng(909);
    for (auto& cs : std::vector<Case>{{{3, 3, 3}, 11, {1, 2, 3, 4}, 6, 30},
                                      {{2, 2, 2, 2}, 7, {1, 2, 3}, 2, 30},
                                      {{6, 3, 2}, 8, {1, 2, 3}, 6, 40}}) {
        int in_cone = 0, tried = 0, max_deg = -1;
        std::set<int> seen;
        while (in_cone < 100 && tried < 2000) {
            ++tried;
            auto t = random_tuple(rng, cs.dims, cs.lo, cs.hi);
            auto p = dilated(t);
            if (p.is_zero()) continue;
            ++in_cone;
            max_deg = std::max(max_deg, p.degree());
            auto ps = p.periods();
            seen.insert(ps.begin(), ps.end());
            o.expect(p.degree() <= cs.degree, print_tuple(t) + " degree " + std::to_string(p.degree()));
            o.expect(std::includes(cs.periods.begin(), cs.periods.end(), ps.begin(), ps.end()),
                     print_tuple(t) + " periods");
        }
        o.expect(in_cone == 100, "only " + std::to_string(in_cone) + " in-cone tuples");
        o.detail << " (";
        for (size_t j = 0; j < cs.dims.size(); ++j) o.detail << (j ? "," : "") << cs.dims[j];
        o.detail << "): " << in_cone << "/" << tried << " in cone, max degree " << max_deg << ", periods {";
        for (int q : seen) o.detail << q << (q == *seen.rbegin() ? "" : ",");
        o.detail << "}";
    }
}

// sum over OS bases adapted to xi of the residue of e^{<x,z>} / prod (1 - e^{-psi})
PolyC tope_sum(const std::vector<IVec>& list, const std::vector<IVec>& poles, const RVec& xi)
{
    int r = (int)list[0].size();
    PolyC total;
    for (auto& b : os_bases_adapted(list, xi)) {
        std::vector<IVec> sigma;
        for (int i : b.indices) sigma.push_back(list[i]);
        ResidueProblem p;
        p.R = r;
        p.nparams = r;
        for (auto& v : poles) p.factors.push_back({FactorKind::pole, 0, coordinates_in(sigma, to_rat(v)), 1});
        p.u1.assign(r, Rat(0));
        p.lin = inverse_of_columns(sigma);
        total += iterated_residue(p, b.det);
    }
    return total;
}

void engine(Outcome& o)
{
    // residue formula versus enumeration
    std::mt19937 rng(2025);
    int sv = 0;
    for (int it = 0; sv < 200 && it < 3000; ++it) {
        int r = 1 + (int)(rng() % 3);
        int n = r + (int)(rng() % (7 - r));
        IVec Y(r);
        for (auto& y : Y) y = 1 + (long)(rng() % 3);
        std::vector<IVec> psi;
        std::uniform_int_distribution<long> c(-2, 2);
        while ((int)psi.size() < n) {
            IVec v(r);
            for (auto& x : v) x = c(rng);
            if (dot(v, Y) > 0) psi.push_back(v);
        }
        if (rank_of(psi) < r) continue;
        IVec mu(r, 0);
        for (auto& v : psi) {
            long t = (long)(rng() % 3);
            for (int i = 0; i < r; ++i) mu[i] += t * v[i];
        }
        if (rng() % 4 == 0) mu[rng() % r] += 1;
        RVec xi = to_rat(mu);
        for (auto& v : psi) {
            Rat t = frac(1 + (long)(rng() % 997), 1009 * 64);
            for (int i = 0; i < r; ++i) xi[i] += t * v[i];
        }
        Rat got;
        try {
            got = partition_function_residue(psi, mu, xi);
        } catch (const std::domain_error&) {
            continue;
        }
        o.expect(got == Rat(partition_count(psi, mu)), "partition function instance " + std::to_string(sv));
        ++sv;
    }
    o.expect(sv >= 200, "partition-function instances");

    // adding vectors to the OS list does not change the tope sum
    int sub_ok = 0;
    for (int it = 0; sub_ok < 50 && it < 2000; ++it) {
        int r = 2 + (int)(rng() % 2);
        std::uniform_int_distribution<long> c(-2, 2);
        auto random_vec = [&]() {
            while (true) {
                IVec v(r);
                for (auto& x : v) x = c(rng);
                if (v[0] > 0 || (v[0] == 0 && v[1] > 0)) return v;
            }
        };
        std::vector<IVec> sub;
        while ((int)sub.size() < r + 1) sub.push_back(random_vec());
        if (rank_of(sub) < r) continue;
        std::vector<IVec> full;
        size_t k = 0;
        while (k < sub.size()) {
            if (rng() % 3 == 0)
                full.push_back(random_vec());
            else
                full.push_back(sub[k++]);
        }
        full.push_back(random_vec());
        RVec xi(r);
        for (auto& x : xi) x = frac((long)(rng() % 2001) - 1000, 613);
        PolyC a, b;
        try {
            a = tope_sum(full, sub, xi);
            b = tope_sum(sub, sub, xi);
        } catch (const std::domain_error&) {
            continue;
        }
        o.expect(a == b, "sublist instance " + std::to_string(sub_ok));
        ++sub_ok;
    }
    o.expect(sub_ok >= 50, "sublist instances");

    // constant-term path: a dropped factor makes restrictions vanish; compare
    // with the regular computation summed over that factor's weights
    RootDataOptions full_opt, drop_opt;
    full_opt.cache_dir = drop_opt.cache_dir = "";
    drop_opt.kept = {true, true, false};
    auto d = build_root_data({2, 2, 2, 2}, full_opt);
    auto d1 = build_root_data({2, 2, 2, 2}, drop_opt);
    auto numeric = [](const RestrictedRootData& rd, const IVec& lam, const IVec& mu, bool force) {
        auto req = numeric_request(lam, mu);
        req.force_epsilon = force;
        return branch_quasipoly(rd, req).value.evaluate(std::vector<long>{});
    };
    int eps_cases = 0;
    for (auto [nu1, mu] : std::vector<std::pair<IVec, IVec>>{{{3, 1}, {2, 0}}, {{4, 2}, {2, 2}}, {{5, 3}, {2, 4}}, {{6, 2}, {4, 2}}}) {
        IVec lam(8, 0);
        lam[0] = nu1[0];
        lam[1] = nu1[1];
        Rat sum = 0;
        for (long m4 = 0; m4 <= nu1[0] + nu1[1]; ++m4) {
            IVec mm = mu;
            mm.push_back(m4);
            Rat plain = numeric(d, lam, mm, false);
            o.expect(numeric(d, lam, mm, true) == plain, "forced constant-term path on regular data");
            sum += plain * (m4 + 1);
        }
        o.expect(numeric(d1, lam, mu, false) == sum, "dropped factor versus weight sum");
        ++eps_cases;
    }
    o.detail << sv << " partition-function instances, " << sub_ok << " sublist instances, " << eps_cases
             << " constant-term cases";
}

std::vector<long> input_values(const std::vector<std::string>& vars, const DiagramTuple& t)
{
    std::vector<long> v;
    for (auto& name : vars) v.push_back(t[name[0] - 'a'][std::stoi(name.substr(1)) - 1]);
    return v;
}

void consistency(Outcome& o)
{
    std::mt19937_64 rng(4242);
    std::vector<std::vector<int>> shapes{{3, 2, 2}, {4, 2, 2}, {3, 3, 2}, {2, 2, 2, 2}, {2, 2, 2}};
    int in_cone = 0;
    for (int it = 0; it < 30; ++it) {
        auto& dims = shapes[it % shapes.size()];
        auto t = random_tuple(rng, dims, 4, 14);
        auto sym = kronecker_symbolic(t, opts()).value;
        Int g = number(t);
        auto dil = dilated(t);
        o.expect(sym.evaluate(input_values(sym.vars(), t)) == Rat(g), print_tuple(t) + " symbolic");
        o.expect(at(dil, 1) == Rat(g), print_tuple(t) + " dilated(1)");
        long Q = lcm_of(dil.periods());
        bool support = false;
        for (long k = 1; k <= Q && !support; ++k) support = number(scaled(t, k)) > 0;
        o.expect((at(dil, 0) == 1) == support, print_tuple(t) + " support");
        in_cone += support;
        if (auto s = saturation_factor(dil); s && *s <= Q) o.expect(number(scaled(t, *s)) > 0, "saturation");
    }
    o.detail << "30 tuples, " << in_cone << " in the cone";
}

}  // namespace

int main(int argc, char** argv)
{
    std::vector<Criterion> all{
        {"1", "Cauchy layer on 50 random diagrams", budget_instant, cauchy},
        {"2", "numeric = brute force, dims (2,2,2) (3,2,2) (2,2,2,2) (3,3,2), content <= 8", budget_minutes,
         oracle_equivalence},
        {"3", "([1,1,1])^3 values k = 0..20 and Hilbert series", budget_seconds, qutrit_sequence},
        {"4", "C^4 x C^2 x C^2 chamber: symbolic formula and dilation", budget_seconds, small_chamber},
        {"5", "four qubits [2,1]^4: degree-7 quasi-polynomial and values", budget_minute, four_qubits},
        {"6", "C^6 x C^3 x C^2 interior point, g = 5 and g(17.) = 344715", budget_minutes, six_three_two},
        {"7", "wall table and type I product formula", budget_minutes, wall_table},
        {"8", "Hilbert series of rectangular rows", budget_minutes, hilbert_rows},
        {"8s", "STRETCH five qubits Hilbert series", budget_stretch, five_qubits, true},
        {"8w", "STRETCH four-qubit entanglement measures series", budget_stretch, entanglement_measures, true},
        {"9", "degree and period bounds on random in-cone tuples", budget_minutes, degree_periods},
        {"10", "engine: partition function, sublist identity, constant-term path", budget_minutes, engine},
        {"11", "symbolic = numeric = dilated(1); dilated(0) versus support", budget_minutes, consistency},
    };
    std::set<std::string> only;
    bool stretch = false;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--stretch"))
            stretch = true;
        else
            only.insert(argv[i]);
    }

    int failed = 0;
    for (auto& c : all) {
        if (!only.empty() ? !only.count(c.id) : (c.stretch && !stretch)) continue;
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = secs <= c.budget;
        bool pass = o.pass && in_time;
        failed += !pass;
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " -- " << o.detail.str()
                  << " (" << std::fixed << std::setprecision(1) << secs << "s of " << c.budget << "s"
                  << (in_time ? "" : ", over budget") << ")" << std::endl;
    }
    return failed ? 1 : 0;
}
