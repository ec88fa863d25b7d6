#pragma once

// Exact rational feasibility LP (two-phase simplex, Bland's rule).

#include "conicfans/rational.hpp"

namespace conicfans {

enum class Rel { LE, GE, EQ };

struct LinearConstraint {
    QVec a;
    Rel rel;
    Q b;
};

/// Returns some x >= 0 satisfying all constraints, or nullopt.
inline std::optional<QVec> lp_find(std::size_t nvars, const std::vector<LinearConstraint>& cons) {
    std::size_t m = cons.size();
    if (m == 0) return QVec(nvars, 0);
    std::size_t nslack = 0, nart = 0;
    for (const auto& c : cons) {
        Rel r = c.rel;
        if (c.b < 0) r = r == Rel::LE ? Rel::GE : r == Rel::GE ? Rel::LE : Rel::EQ;
        if (r != Rel::EQ) ++nslack;
        if (r != Rel::LE) ++nart;
    }
    std::size_t ncols = nvars + nslack + nart;
    QMatrix t(m, QVec(ncols + 1, 0));
    std::vector<std::size_t> basis(m);
    std::vector<bool> artificial(ncols, false);
    std::size_t s = nvars, a = nvars + nslack;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = cons[i];
        bool flip = c.b < 0;
        Rel r = c.rel;
        if (flip) r = r == Rel::LE ? Rel::GE : r == Rel::GE ? Rel::LE : Rel::EQ;
        for (std::size_t j = 0; j < nvars; ++j) t[i][j] = flip ? -c.a[j] : c.a[j];
        t[i][ncols] = flip ? -c.b : c.b;
        if (r == Rel::LE) {
            t[i][s] = 1;
            basis[i] = s++;
        } else {
            if (r == Rel::GE) t[i][s++] = -1;
            t[i][a] = 1;
            artificial[a] = true;
            basis[i] = a++;
        }
    }
    // phase 1: minimise the sum of artificials
    while (true) {
        std::size_t enter = ncols;
        for (std::size_t j = 0; j < ncols && enter == ncols; ++j) {
            Q d = artificial[j] ? 1 : 0;
            for (std::size_t i = 0; i < m; ++i)
                if (artificial[basis[i]] && t[i][j] != 0) d -= t[i][j];
            if (d < 0) enter = j;
        }
        if (enter == ncols) break;
        std::size_t leave = m;
        Q best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Q ratio = t[i][ncols] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) break;  // unbounded direction cannot occur in phase 1
        Q p = t[leave][enter];
        for (auto& x : t[leave]) x /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Q f = t[i][enter];
            for (std::size_t j = 0; j <= ncols; ++j)
                if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }
    QVec x(ncols, 0);
    for (std::size_t i = 0; i < m; ++i) x[basis[i]] = t[i][ncols];
    for (std::size_t j = 0; j < ncols; ++j)
        if (artificial[j] && x[j] != 0) return std::nullopt;
    x.resize(nvars);
    return x;
}

/// As lp_find but with unrestricted variables.
inline std::optional<QVec> lp_find_free(std::size_t nvars, const std::vector<LinearConstraint>& cons) {
    std::vector<LinearConstraint> split;
    for (const auto& c : cons) {
        LinearConstraint d{QVec(2 * nvars), c.rel, c.b};
        for (std::size_t j = 0; j < nvars; ++j) {
            d.a[j] = c.a[j];
            d.a[nvars + j] = -c.a[j];
        }
        split.push_back(std::move(d));
    }
    auto x = lp_find(2 * nvars, split);
    if (!x) return std::nullopt;
    QVec r(nvars);
    for (std::size_t j = 0; j < nvars; ++j) r[j] = (*x)[j] - (*x)[nvars + j];
    return r;
}

}  // namespace conicfans
