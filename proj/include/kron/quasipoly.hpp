#pragma once

#include "kron/exact.hpp"
#include "kron/poly.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace kron {

// sum over L of zeta_Q^{L(x)} * P_L(x), P_L with coefficients in Q(zeta_Q).
// Characters of Z^n / Q Z^n are independent over the polynomial ring, so
// keying by L mod Q gives a canonical form.
class QuasiPolynomial {
public:
    using Form = std::vector<int64_t>;

    QuasiPolynomial() : QuasiPolynomial(std::vector<std::string>{}) {}
    explicit QuasiPolynomial(std::vector<std::string> vars, int Q = 1);

    static QuasiPolynomial constant(std::vector<std::string> vars, const Rat& c);

    const std::vector<std::string>& vars() const { return vars_; }
    int nvars() const { return (int)vars_.size(); }
    int modulus() const { return Q_; }
    const std::map<Form, PolyC>& groups() const { return g_; }

    // Adds zeta_q^{L(x)} * p; p's coefficients live in Q(zeta_q).
    void add(int q, const Form& L, const PolyC& p);
    void add_rational(const Form& L, int q, const PolyQ& p);
    QuasiPolynomial& operator+=(const QuasiPolynomial& o);
    QuasiPolynomial& operator*=(const Rat& c);

    // Re-express over Q(zeta_Q'), Q | Q'.
    QuasiPolynomial lifted(int Q) const;
    // Smallest modulus holding every form and coefficient.
    QuasiPolynomial reduced() const;

    bool is_zero() const { return g_.empty(); }
    int degree() const;                    // -1 for the zero quasi-polynomial
    std::set<int> periods() const;

    Rat evaluate(const std::vector<Int>& point) const;
    Rat evaluate(const std::vector<long>& point) const;

    // x = B y + b, y in new_vars. B is nvars x |new_vars|.
    QuasiPolynomial compose(const std::vector<std::string>& new_vars,
                            const std::vector<std::vector<int64_t>>& B,
                            const std::vector<int64_t>& b) const;

    friend bool operator==(const QuasiPolynomial& a, const QuasiPolynomial& b);
    friend bool operator!=(const QuasiPolynomial& a, const QuasiPolynomial& b) { return !(a == b); }

    std::string pretty() const;
    std::string to_json() const;
    static QuasiPolynomial from_json(const std::string& s);

private:
    void normalize_form(Form& L) const;

    std::vector<std::string> vars_;
    int Q_;
    std::map<Form, PolyC> g_;
};

struct representation_fault : std::logic_error {
    using std::logic_error::logic_error;
};

struct CosetForm {
    int Q = 1;
    std::vector<PolyQ> polys;  // polys[f] valid on f + Q Z of the grading variable
};

CosetForm to_coset_form(const QuasiPolynomial& p, int grading_var = 0);

// Dense univariate polynomial helpers, lowest degree first.
using UPoly = std::vector<Rat>;
UPoly upoly_mul(const UPoly& a, const UPoly& b);
void upoly_trim(UPoly& a);
// exact division; throws representation_fault if the remainder is nonzero
UPoly upoly_divexact(const UPoly& a, const UPoly& b);
bool upoly_divisible(const UPoly& a, const UPoly& b);

struct RationalGF {
    UPoly numerator;                 // integral in practice
    std::vector<int> den_exponents;  // prod (1 - t^a)

    UPoly denominator() const;
    std::vector<Rat> taylor(int n) const;  // first n coefficients
    std::string pretty() const;
    std::string to_json() const;
    // equality as rational functions
    friend bool operator==(const RationalGF& a, const RationalGF& b);
    bool numerator_palindromic() const;
};

RationalGF generating_function(const QuasiPolynomial& p);

std::string poly_pretty(const PolyQ& p, const std::vector<std::string>& vars);

}  // namespace kron
