#pragma once

// Satake diagrams of the quaternionic real forms and the associated symmetric-space data.

#include "conicfans/rootcore.hpp"

namespace conicfans {

struct SatakeDiagram {
    SimpleType type;
    RootDatum base;
    std::set<int> black;
    std::vector<std::pair<int, int>> arrows;

    bool is_black(int i) const { return black.count(i) > 0; }
};

namespace detail {

struct SatakeRow {
    std::set<int> black;
    std::vector<std::pair<int, int>> arrows;
    std::vector<IVec> groups;  // lambda_i -> white simple roots restricting to it
    SimpleType restricted;
};

inline SatakeRow satake_row(Series s, int r) {
    switch (s) {
        case Series::B:
            if (r == 3) return {{}, {}, {{0}, {1}, {2}}, {Series::B, 3}};
            if (r >= 4) {
                std::set<int> black;
                for (int i = 4; i < r; ++i) black.insert(i);
                return {black, {}, {{0}, {1}, {2}, {3}}, {Series::B, 4}};
            }
            break;
        case Series::D:
            if (r == 4) return {{}, {}, {{0}, {1}, {2}, {3}}, {Series::D, 4}};
            if (r == 5) return {{}, {{3, 4}}, {{0}, {1}, {2}, {3, 4}}, {Series::B, 4}};
            if (r >= 6) {
                std::set<int> black;
                for (int i = 4; i < r; ++i) black.insert(i);
                return {black, {}, {{0}, {1}, {2}, {3}}, {Series::B, 4}};
            }
            break;
        case Series::E:
            if (r == 6) return {{}, {{0, 4}, {1, 3}}, {{0, 4}, {1, 3}, {2}, {5}}, {Series::F, 4}};
            if (r == 7) return {{0, 2, 6}, {}, {{1}, {3}, {4}, {5}}, {Series::F, 4}};
            if (r == 8) return {{3, 4, 5, 7}, {}, {{6}, {2}, {1}, {0}}, {Series::F, 4}};
            break;
        case Series::F: return {{}, {}, {{0}, {1}, {2}, {3}}, {Series::F, 4}};
        case Series::G: return {{}, {}, {{0}, {1}}, {Series::G, 2}};
        default: break;
    }
    throw UnsupportedType("no quaternionic Satake diagram for " + SimpleType{s, r}.name());
}

}  // namespace detail

inline bool supported_algebra(Series s, int r) {
    if (!valid_type(s, r)) return false;
    switch (s) {
        case Series::B: return r >= 3;
        case Series::D: return r >= 4;
        case Series::E:
        case Series::F:
        case Series::G: return true;
        default: return false;
    }
}

inline SatakeDiagram satake_of(Series s, int r) {
    if (!valid_type(s, r))
        throw UnsupportedType("unsupported type " + SimpleType{s, r}.name());
    auto row = detail::satake_row(s, r);
    SatakeDiagram sd{{s, r}, build_root_datum(s, r), row.black, row.arrows};
    return sd;
}

/// Checks black/arrow consistency of a Satake diagram.
inline void validate_satake(const SatakeDiagram& sd) {
    std::set<int> touched;
    for (auto [a, b] : sd.arrows) {
        if (a == b || sd.is_black(a) || sd.is_black(b)) throw StructureError("invalid Satake arrow");
        if (!touched.insert(a).second || !touched.insert(b).second)
            throw StructureError("Satake arrows are not an involution");
    }
    for (int i : sd.black)
        if (i < 0 || i >= sd.base.rank) throw StructureError("black node out of range");
}

/// Extended Cartan matrix: node 0 is alpha_0 = -theta, nodes 1..r the simple roots.
inline IMatrix extended_cartan(const RootDatum& rd) {
    int n = rd.rank;
    std::vector<Root> vecs;
    Root th = rd.highest_root();
    for (auto& x : th) x = -x;
    vecs.push_back(th);
    for (int i = 0; i < n; ++i) vecs.push_back(rd.simple(i));
    IMatrix c(n + 1, IVec(n + 1));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) c[i][j] = rd.pair(vecs[i], vecs[j]);
    return c;
}

/// Unique j0 with <theta, alpha_j0^vee> != 0 (the node adjacent to the affine node).
inline int contact_node(const RootDatum& rd) {
    Root th = rd.highest_root();
    int j0 = -1;
    for (int i = 0; i < rd.rank; ++i)
        if (rd.pair_simple(th, i) != 0) {
            if (j0 >= 0) throw UnsupportedType("highest root is not fundamental for " + rd.name());
            j0 = i;
        }
    return j0;
}

/// Components of g^sigma: the extended diagram with alpha_{j0} removed; canonical names, sorted.
inline std::vector<std::string> fixed_subalgebra_type(const RootDatum& rd) {
    auto ext = extended_cartan(rd);
    int j0 = contact_node(rd) + 1;
    IVec keep;
    for (int i = 0; i <= rd.rank; ++i)
        if (i != j0) keep.push_back(i);
    IMatrix sub(keep.size(), IVec(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j) sub[i][j] = ext[keep[i]][keep[j]];
    auto k = from_cartan(sub);
    std::vector<std::string> names;
    for (const auto& t : k.components) names.push_back(canonical_type_name(t));
    std::sort(names.begin(), names.end());
    return names;
}

struct ColorEntry {
    int index;                      // lambda_i, 0-based
    std::set<int> simple_roots;     // I'_i
    ParabolicSubset stabilizer;     // P'_{I'_i}
    Root spherical_root;            // alpha' - sigma(alpha')
    std::string type;               // "a", "2a" or "b"
    int a_coefficient;              // a_D
};

struct RestrictedRootDatum {
    SatakeDiagram satake;
    IMatrix sigma_cols;             // sigma(alpha_i) in simple-root coordinates
    SimpleType restricted_type;
    RootDatum restricted;
    std::vector<IVec> groups;
    std::vector<QVec> lambda;       // restricted simple roots in simple-root coordinates of g
    QMatrix gamma;                  // gamma_j in lambda^vee coordinates
    int rank() const { return restricted.rank; }
    const RootDatum& g() const { return satake.base; }
};

/// sigma(v) = -w_black(p(v)).
inline Root sigma_apply(const SatakeDiagram& sd, const Root& v) {
    const RootDatum& rd = sd.base;
    IVec blk(sd.black.begin(), sd.black.end());
    IVec perm(rd.rank);
    std::iota(perm.begin(), perm.end(), 0);
    for (auto [a, b] : sd.arrows) {
        perm[a] = b;
        perm[b] = a;
    }
    WeylWord wb;
    if (!blk.empty()) {
        auto sub = subdiagram(rd, blk);
        for (int k : longest_element(sub)) wb.push_back(blk[k]);
        auto iota = duality_involution(sub);
        for (std::size_t k = 0; k < blk.size(); ++k) perm[blk[k]] = blk[iota[k]];
    }
    Root pv(rd.rank, 0);
    for (int i = 0; i < rd.rank; ++i) pv[perm[i]] += v[i];
    Root w = weyl_apply(rd, wb, pv);
    for (auto& x : w) x = -x;
    return w;
}

inline IMatrix sigma_matrix(const SatakeDiagram& sd) {
    IMatrix cols;
    for (int i = 0; i < sd.base.rank; ++i) cols.push_back(sigma_apply(sd, sd.base.simple(i)));
    return cols;
}

inline Root sigma_of(const IMatrix& cols, const Root& v) {
    Root r(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            for (std::size_t k = 0; k < v.size(); ++k) r[k] += v[i] * cols[i][k];
    return r;
}

/// Restriction (v - sigma v)/2 to the split torus, in simple-root coordinates of g.
inline QVec restrict_root(const IMatrix& cols, const Root& v) {
    Root s = sigma_of(cols, v);
    QVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Q(v[i] - s[i]) / 2;
    return r;
}

inline QVec sigma_on_characters(const SatakeDiagram& sd, const QVec& v) {
    auto cols = sigma_matrix(sd);
    QVec r(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t k = 0; k < v.size(); ++k) r[k] += v[i] * cols[i][k];
    return r;
}

/// gamma_j as the fundamental coweights: <lambda_i, gamma_j> = delta_ij.
inline QMatrix fundamental_coweights(const RootDatum& r) {
    QMatrix ct = transpose(to_q(r.cartan));
    auto inv = inverse(ct);
    if (!inv) throw StructureError("singular Cartan matrix");
    return *inv;
}

/// <lambda, x> for lambda in root coordinates and x in coroot coordinates.
inline Q pair_root_coroot(const RootDatum& r, const QVec& lambda, const QVec& x) {
    Q s = 0;
    for (int i = 0; i < r.rank; ++i)
        for (int k = 0; k < r.rank; ++k) s += lambda[i] * x[k] * r.cartan[i][k];
    return s;
}

inline RestrictedRootDatum restricted_datum(const SatakeDiagram& sd) {
    validate_satake(sd);
    const RootDatum& g = sd.base;
    auto row = detail::satake_row(sd.type.series, sd.type.rank);
    RestrictedRootDatum rr{sd, sigma_matrix(sd), row.restricted, build_root_datum(row.restricted), row.groups, {}, {}};

    // sigma is an involution preserving the form and fixing black roots
    for (int i = 0; i < g.rank; ++i) {
        if (sigma_of(rr.sigma_cols, rr.sigma_cols[i]) != g.simple(i)) throw StructureError("sigma is not an involution");
        if (sd.is_black(i) && rr.sigma_cols[i] != g.simple(i)) throw StructureError("sigma moves a black root");
        for (int j = 0; j < g.rank; ++j)
            if (g.form(rr.sigma_cols[i], rr.sigma_cols[j]) != g.killing[i][j])
                throw StructureError("sigma does not preserve the Killing form");
    }
    std::set<int> covered;
    for (const auto& grp : rr.groups) {
        QVec lam = restrict_root(rr.sigma_cols, g.simple(grp[0]));
        for (int i : grp) {
            if (sd.is_black(i)) throw StructureError("black node in a color group");
            if (restrict_root(rr.sigma_cols, g.simple(i)) != lam) throw StructureError("group restrictions differ");
            covered.insert(i);
        }
        for (const auto& prev : rr.lambda)
            if (prev == lam) throw StructureError("distinct groups restrict to the same root");
        rr.lambda.push_back(lam);
    }
    for (int i = 0; i < g.rank; ++i) {
        bool zero = is_zero(restrict_root(rr.sigma_cols, g.simple(i)));
        if (sd.is_black(i) != zero) throw StructureError("restriction vanishing does not match black nodes");
        if (!sd.is_black(i) && !covered.count(i)) throw StructureError("white node missing from groups");
    }
    // Cartan matrix of the restricted simple roots must be the claimed type in OV numbering
    int m = static_cast<int>(rr.lambda.size());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Q c = 2 * g.form(rr.lambda[i], rr.lambda[j]) / g.form(rr.lambda[j], rr.lambda[j]);
            if (c != rr.restricted.cartan[i][j])
                throw StructureError("restricted Cartan matrix mismatch at " + std::to_string(i + 1) + "," +
                                     std::to_string(j + 1));
        }
    rr.gamma = fundamental_coweights(rr.restricted);
    return rr;
}

/// Nonzero restrictions of all roots of g in lambda coordinates.
inline std::set<IVec> restricted_roots_in_lambda(const RestrictedRootDatum& rr) {
    std::set<IVec> out;
    for (const auto& a : rr.g().roots) {
        QVec r = restrict_root(rr.sigma_cols, a);
        if (is_zero(r)) continue;
        auto c = solve_in_span(rr.lambda, r);
        if (!c) throw StructureError("restriction outside the span of lambda");
        IVec iv;
        for (auto& x : *c) iv.push_back(static_cast<int>(to_ll(x)));
        out.insert(iv);
    }
    return out;
}

/// gamma_j written out from the closed-form expressions (independent of the Cartan inverse).
inline QMatrix closed_form_gamma(const SimpleType& t) {
    int m = t.rank;
    QMatrix g(m, QVec(m, 0));
    if (t.series == Series::B) {
        for (int i = 1; i <= m; ++i) {
            for (int k = 1; k < m; ++k) g[i - 1][k - 1] = std::min(k, i);
            g[i - 1][m - 1] = Q(i) / 2;
        }
        return g;
    }
    auto rows = [](std::vector<std::vector<std::string>> s) {
        QMatrix r;
        for (auto& row : s) {
            QVec v;
            for (auto& x : row) v.push_back(parse_rational(x));
            r.push_back(v);
        }
        return r;
    };
    if (t.series == Series::D && m == 4)
        return rows({{"1", "1", "1/2", "1/2"}, {"1", "2", "1", "1"}, {"1/2", "1", "1", "1/2"}, {"1/2", "1", "1/2", "1"}});
    if (t.series == Series::F)
        return rows({{"2", "3", "4", "2"}, {"3", "6", "8", "4"}, {"2", "4", "6", "3"}, {"1", "2", "3", "2"}});
    if (t.series == Series::G) return rows({{"2", "3"}, {"1", "2"}});
    throw UnsupportedType("no closed form for gamma of " + t.name());
}

inline std::vector<ColorEntry> color_table(const RestrictedRootDatum& rr) {
    const RootDatum& g = rr.g();
    std::vector<ColorEntry> out;
    IVec blk(rr.satake.black.begin(), rr.satake.black.end());
    for (std::size_t i = 0; i < rr.groups.size(); ++i) {
        ColorEntry c;
        c.index = static_cast<int>(i);
        c.simple_roots = std::set<int>(rr.groups[i].begin(), rr.groups[i].end());
        c.stabilizer.missing = c.simple_roots;
        int a = rr.groups[i][0];
        Root sa = sigma_of(rr.sigma_cols, g.simple(a));
        Root sr(g.rank);
        for (int k = 0; k < g.rank; ++k) sr[k] = g.simple(a)[k] - sa[k];
        for (int b : rr.groups[i]) {
            Root sb = sigma_of(rr.sigma_cols, g.simple(b));
            Root other(g.rank);
            for (int k = 0; k < g.rank; ++k) other[k] = g.simple(b)[k] - sb[k];
            if (other != sr) throw StructureError("spherical roots differ within a color group");
        }
        c.spherical_root = sr;
        Root twice = g.simple(a);
        for (auto& x : twice) x *= 2;
        if (sr == twice) {
            c.type = "2a";
            c.a_coefficient = 1;
        } else if (sr == g.simple(a)) {
            c.type = "a";
            c.a_coefficient = 1;
        } else {
            c.type = "b";
            int s = 0;
            for (const auto& beta : g.positive_roots) {
                bool in_black = true;
                for (int k = 0; k < g.rank; ++k)
                    if (beta[k] != 0 && !rr.satake.is_black(k)) in_black = false;
                if (in_black) continue;
                s += g.pair(beta, g.simple(a));
            }
            c.a_coefficient = s;
        }
        out.push_back(c);
    }
    return out;
}

/// theta(I'_i) for each color, the twisted parabolics (w0 P_{I'_i} w0^{-1})^-.
inline std::vector<ParabolicSubset> twisted_color_parabolics(const RestrictedRootDatum& rr) {
    std::vector<ParabolicSubset> out;
    for (const auto& c : color_table(rr)) out.push_back(opposite_conjugate(rr.g(), c.stabilizer));
    return out;
}

inline RestrictedRootDatum restricted_datum(Series s, int r) { return restricted_datum(satake_of(s, r)); }

}  // namespace conicfans
