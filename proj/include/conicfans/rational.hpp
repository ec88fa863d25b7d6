#pragma once

// Exact rational scalars and the small dense linear algebra used throughout.

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace conicfans {

using Q = boost::multiprecision::mpq_rational;
using Z = boost::multiprecision::mpz_int;

using QVec = std::vector<Q>;
using QMatrix = std::vector<QVec>;
using IVec = std::vector<int>;
using IMatrix = std::vector<IVec>;

/// Raised when an input violates a structural precondition.
class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string to_string(const Q& q) { return q.str(); }

/// Parses "a", "-a" or "a/b".
inline Q parse_rational(const std::string& s) {
    try {
        return Q(s);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational: " + s);
    }
}

inline bool is_integer(const Q& q) { return boost::multiprecision::denominator(q) == 1; }

inline long long to_ll(const Q& q) {
    if (!is_integer(q)) throw StructureError("non-integral value " + q.str());
    Z n = boost::multiprecision::numerator(q);
    if (n > Z(INT64_MAX) || n < Z(INT64_MIN)) throw StructureError("integer overflow");
    return n.convert_to<long long>();
}

inline QVec to_q(const IVec& v) { return QVec(v.begin(), v.end()); }

inline QMatrix to_q(const IMatrix& m) {
    QMatrix r;
    r.reserve(m.size());
    for (const auto& row : m) r.push_back(to_q(row));
    return r;
}

inline bool is_zero(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Q& q) { return q == 0; });
}

inline QVec operator+(QVec a, const QVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline QVec operator-(QVec a, const QVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline QVec operator*(const Q& s, QVec a) {
    for (auto& x : a) x *= s;
    return a;
}

inline Q dot(const QVec& a, const QVec& b) {
    Q s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline QVec mat_vec(const QMatrix& m, const QVec& v) {
    QVec r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
    return r;
}

inline QMatrix transpose(const QMatrix& m) {
    if (m.empty()) return {};
    QMatrix t(m[0].size(), QVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

inline QMatrix mat_mul(const QMatrix& a, const QMatrix& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    QMatrix r(n, QVec(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

inline QMatrix identity(std::size_t n) {
    QMatrix r(n, QVec(n));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
    return r;
}

/// Row-reduces in place; returns pivot columns.
inline std::vector<std::size_t> row_reduce(QMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Q inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Q f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank_of(QMatrix m) { return row_reduce(m).size(); }

inline std::size_t rank_of(const std::vector<QVec>& vecs, std::size_t dim) {
    if (vecs.empty()) return 0;
    QMatrix m = vecs;
    for (auto& row : m) row.resize(dim);
    return rank_of(std::move(m));
}

/// Basis of {x : m x = 0}.
inline std::vector<QVec> nullspace(QMatrix m, std::size_t cols) {
    for (auto& row : m) row.resize(cols);
    auto piv = row_reduce(m);
    std::vector<bool> is_piv(cols, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<QVec> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        QVec v(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Q determinant(QMatrix m) {
    std::size_t n = m.size();
    Q det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Q f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

inline std::optional<QMatrix> inverse(const QMatrix& m) {
    std::size_t n = m.size();
    QMatrix aug(n, QVec(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = 1;
    }
    auto piv = row_reduce(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    QMatrix inv(n, QVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

/// Solves sum_i c_i basis[i] = v; nullopt if v is outside the span.
inline std::optional<QVec> solve_in_span(const std::vector<QVec>& basis, const QVec& v) {
    std::size_t k = basis.size(), dim = v.size();
    QMatrix aug(dim, QVec(k + 1));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t i = 0; i < k; ++i) aug[r][i] = basis[i][r];
        aug[r][k] = v[r];
    }
    auto piv = row_reduce(aug);
    if (!piv.empty() && piv.back() == k) return std::nullopt;
    if (piv.size() < k) throw StructureError("solve_in_span: dependent basis");
    QVec c(k);
    for (std::size_t i = 0; i < piv.size(); ++i) c[piv[i]] = aug[i][k];
    return c;
}

/// Scales a nonzero rational vector to the primitive integer vector on the same ray.
inline std::vector<long long> primitive(const QVec& v) {
    Z l = 1;
    for (const auto& x : v) {
        Z d = boost::multiprecision::denominator(x);
        l = boost::multiprecision::lcm(l, d);
    }
    std::vector<Z> n;
    Z g = 0;
    for (const auto& x : v) {
        Z y = boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x));
        n.push_back(y);
        g = boost::multiprecision::gcd(g, abs(y));
    }
    if (g == 0) throw StructureError("primitive of zero vector");
    std::vector<long long> out;
    for (auto& y : n) out.push_back((y / g).convert_to<long long>());
    return out;
}

inline QVec to_q(const std::vector<long long>& v) {
    QVec r;
    for (auto x : v) r.emplace_back(x);
    return r;
}

inline std::string vec_string(const QVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
    return s + ")";
}

}  // namespace conicfans
