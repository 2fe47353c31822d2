#include "kron/linalg.hpp"

#include <numeric>

namespace kron {

long dot(const IVec& a, const IVec& b)
{
    long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const RVec& a, const IVec& b)
{
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (b[i]) s += a[i] * b[i];
    return s;
}

Rat dot(const RVec& a, const RVec& b)
{
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RVec to_rat(const IVec& v)
{
    RVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = v[i];
    return r;
}

namespace {

// Row echelon form in place over int64 with gcd normalization; returns rank.
int echelon(std::vector<IVec>& m)
{
    if (m.empty()) return 0;
    size_t cols = m[0].size();
    int rank = 0;
    for (size_t c = 0; c < cols && rank < (int)m.size(); ++c) {
        int piv = -1;
        for (size_t i = rank; i < m.size(); ++i)
            if (m[i][c]) {
                piv = (int)i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        for (size_t i = rank + 1; i < m.size(); ++i) {
            if (!m[i][c]) continue;
            long a = m[rank][c], b = m[i][c];
            long g = std::gcd(a, b);
            long fa = b / g, fb = a / g;
            long h = 0;
            for (size_t k = 0; k < cols; ++k) {
                m[i][k] = m[i][k] * fb - m[rank][k] * fa;
                h = std::gcd(h, m[i][k]);
            }
            if (h > 1)
                for (auto& x : m[i]) x /= h;
        }
        ++rank;
    }
    return rank;
}

}  // namespace

int rank_of(const std::vector<IVec>& vecs)
{
    std::vector<IVec> m = vecs;
    return echelon(m);
}

bool in_span(const std::vector<IVec>& vecs, const IVec& v)
{
    std::vector<IVec> m = vecs;
    int r0 = echelon(m);
    m.resize(r0);
    m.push_back(v);
    return echelon(m) == r0;
}

RMat inverse_of_columns(const std::vector<IVec>& cols)
{
    size_t n = cols.size();
    RMat a(n, RVec(2 * n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) a[i][j] = cols[j][i];
        a[i][n + i] = 1;
    }
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && sgn(a[piv][c]) == 0) ++piv;
        if (piv == n) throw std::domain_error("inverse_of_columns: singular matrix");
        std::swap(a[c], a[piv]);
        Rat inv = 1 / a[c][c];
        for (auto& x : a[c]) x *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == c || sgn(a[i][c]) == 0) continue;
            Rat f = a[i][c];
            for (size_t k = c; k < 2 * n; ++k) a[i][k] -= f * a[c][k];
        }
    }
    RMat inv(n, RVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

RVec mat_vec(const RMat& A, const RVec& v)
{
    RVec r(A.size());
    for (size_t i = 0; i < A.size(); ++i) r[i] = dot(A[i], v);
    return r;
}

RVec mat_vec(const RMat& A, const IVec& v)
{
    RVec r(A.size());
    for (size_t i = 0; i < A.size(); ++i) r[i] = dot(A[i], v);
    return r;
}

Int det_of(const std::vector<IVec>& cols)
{
    // Bareiss on arbitrary precision integers
    size_t n = cols.size();
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = cols[j][i];
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && a[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(a[piv], a[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

RVec coordinates_in(const std::vector<IVec>& basis, const RVec& v)
{
    // least-squares-free solve: eliminate on the augmented system [B | v]
    size_t rows = v.size(), k = basis.size();
    RMat a(rows, RVec(k + 1));
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < k; ++j) a[i][j] = basis[j][i];
        a[i][k] = v[i];
    }
    std::vector<size_t> pivrow(k);
    size_t row = 0;
    for (size_t c = 0; c < k; ++c) {
        size_t piv = row;
        while (piv < rows && sgn(a[piv][c]) == 0) ++piv;
        if (piv == rows) throw std::domain_error("coordinates_in: dependent basis");
        std::swap(a[row], a[piv]);
        Rat inv = 1 / a[row][c];
        for (auto& x : a[row]) x *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == row || sgn(a[i][c]) == 0) continue;
            Rat f = a[i][c];
            for (size_t j = c; j <= k; ++j) a[i][j] -= f * a[row][j];
        }
        pivrow[c] = row++;
    }
    for (size_t i = row; i < rows; ++i)
        if (sgn(a[i][k]) != 0) throw std::domain_error("coordinates_in: vector not in span");
    RVec x(k);
    for (size_t c = 0; c < k; ++c) x[c] = a[pivrow[c]][k];
    return x;
}

IVec primitive_normal(const std::vector<IVec>& vecs)
{
    size_t r = vecs.size() + 1;
    IVec n(r);
    // cofactor expansion: n_i = (-1)^i det(vecs with coordinate i removed)
    for (size_t i = 0; i < r; ++i) {
        std::vector<IVec> cols;
        for (auto& v : vecs) {
            IVec c;
            for (size_t k = 0; k < r; ++k)
                if (k != i) c.push_back(v[k]);
            cols.push_back(c);
        }
        Int d = cols.empty() ? Int(1) : det_of(cols);
        n[i] = (i % 2 ? -1 : 1) * d.get_si();
    }
    long g = 0;
    for (long x : n) g = std::gcd(g, x);
    if (g == 0) throw std::domain_error("primitive_normal: dependent vectors");
    for (auto& x : n) x /= g;
    for (long x : n)
        if (x) {
            if (x < 0)
                for (auto& y : n) y = -y;
            break;
        }
    return n;
}

std::vector<IVec> lattice_basis(const std::vector<IVec>& vecs)
{
    std::vector<IVec> m = vecs;
    if (m.empty()) return {};
    size_t cols = m[0].size();
    size_t row = 0;
    for (size_t c = 0; c < cols && row < m.size(); ++c) {
        // Euclid between rows until a single row has a nonzero entry in column c
        while (true) {
            size_t piv = m.size();
            for (size_t i = row; i < m.size(); ++i)
                if (m[i][c] && (piv == m.size() || std::labs(m[i][c]) < std::labs(m[piv][c]))) piv = i;
            if (piv == m.size()) break;
            std::swap(m[row], m[piv]);
            bool done = true;
            for (size_t i = row + 1; i < m.size(); ++i) {
                if (!m[i][c]) continue;
                long f = m[i][c] / m[row][c];
                for (size_t k = 0; k < cols; ++k) m[i][k] -= f * m[row][k];
                if (m[i][c]) done = false;
            }
            if (done) break;
        }
        if (row < m.size() && m[row][c]) {
            if (m[row][c] < 0)
                for (auto& x : m[row]) x = -x;
            for (size_t i = 0; i < row; ++i) {
                long f = mod_floor(m[i][c], m[row][c]);
                f = (m[i][c] - f) / m[row][c];
                for (size_t k = 0; k < cols; ++k) m[i][k] -= f * m[row][k];
            }
            ++row;
        }
    }
    m.resize(row);
    return m;
}

}  // namespace kron
