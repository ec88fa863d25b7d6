#pragma once

// Colored cones and fans in the coroot space of the restricted root system.
// Coordinates are always in the basis lambda_1^vee, ..., lambda_m^vee.

#include "conicfans/lp.hpp"
#include "conicfans/symdata.hpp"

#include <functional>

namespace conicfans {

using Ray = std::vector<long long>;

struct QCone {
    std::vector<QVec> generators;
    std::size_t dim = 0;  // ambient dimension
};

struct ColoredCone {
    std::vector<Ray> rays;  // primitive integral extremal rays, sorted
    std::set<int> colors;   // 0-based color indices

    int dim() const {
        std::vector<QVec> g;
        for (const auto& r : rays) g.push_back(to_q(r));
        return static_cast<int>(rank_of(g, rays.empty() ? 0 : rays[0].size()));
    }
    auto operator<=>(const ColoredCone&) const = default;
};

struct ColoredFan {
    std::vector<ColoredCone> cones;  // sorted, unique
    bool contains(const ColoredCone& c) const { return std::binary_search(cones.begin(), cones.end(), c); }
};

/// v in cone(gens)?
inline bool cone_contains(const std::vector<QVec>& gens, const QVec& v) {
    if (gens.empty()) return is_zero(v);
    std::vector<LinearConstraint> cons;
    for (std::size_t r = 0; r < v.size(); ++r) {
        LinearConstraint c{QVec(gens.size()), Rel::EQ, v[r]};
        for (std::size_t k = 0; k < gens.size(); ++k) c.a[k] = gens[k][r];
        cons.push_back(std::move(c));
    }
    return lp_find(gens.size(), cons).has_value();
}

inline bool is_pointed(const std::vector<QVec>& gens) {
    if (gens.empty()) return true;
    std::size_t d = gens[0].size();
    std::vector<LinearConstraint> cons;
    for (std::size_t r = 0; r < d; ++r) {
        LinearConstraint c{QVec(gens.size()), Rel::EQ, 0};
        for (std::size_t k = 0; k < gens.size(); ++k) c.a[k] = gens[k][r];
        cons.push_back(std::move(c));
    }
    cons.push_back({QVec(gens.size(), 1), Rel::EQ, 1});
    return !lp_find(gens.size(), cons).has_value();
}

/// Primitive extremal rays of a pointed cone, sorted.
inline std::vector<Ray> extremal_rays(const std::vector<QVec>& gens) {
    std::vector<Ray> prim;
    for (const auto& g : gens)
        if (!is_zero(g)) prim.push_back(primitive(g));
    std::sort(prim.begin(), prim.end());
    prim.erase(std::unique(prim.begin(), prim.end()), prim.end());
    std::vector<QVec> q;
    for (const auto& r : prim) q.push_back(to_q(r));
    if (!is_pointed(q)) throw StructureError("cone is not strictly convex");
    std::vector<bool> keep(prim.size(), true);
    for (std::size_t i = 0; i < prim.size(); ++i) {
        std::vector<QVec> others;
        for (std::size_t j = 0; j < prim.size(); ++j)
            if (j != i && keep[j]) others.push_back(q[j]);
        if (cone_contains(others, q[i])) keep[i] = false;
    }
    std::vector<Ray> out;
    for (std::size_t i = 0; i < prim.size(); ++i)
        if (keep[i]) out.push_back(prim[i]);
    return out;
}

/// Faces of the pointed cone spanned by the given extremal rays, as sorted index sets.
/// The zero face is the empty set.
inline std::vector<IVec> cone_faces(const std::vector<Ray>& rays) {
    std::size_t k = rays.size();
    std::vector<QVec> q;
    for (const auto& r : rays) q.push_back(to_q(r));
    std::size_t amb = k ? rays[0].size() : 0;
    std::size_t d = rank_of(q, amb);
    std::set<IVec> faces;
    IVec all(k);
    std::iota(all.begin(), all.end(), 0);
    faces.insert(all);
    if (d == 0) return {IVec{}};
    // coordinates in a basis of the span chosen among the rays
    std::vector<QVec> basis;
    for (const auto& v : q) {
        auto trial = basis;
        trial.push_back(v);
        if (rank_of(trial, amb) > basis.size()) basis = trial;
    }
    std::vector<QVec> coords;
    for (const auto& v : q) coords.push_back(*solve_in_span(basis, v));
    std::set<IVec> facets;
    IVec pick;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (pick.size() == d - 1) {
            QMatrix m;
            for (int i : pick) m.push_back(coords[i]);
            auto ns = nullspace(m, d);
            if (ns.size() != 1) return;
            const QVec& n = ns[0];
            int sign = 0;
            IVec on;
            for (std::size_t i = 0; i < k; ++i) {
                Q v = dot(n, coords[i]);
                if (v == 0) {
                    on.push_back(static_cast<int>(i));
                    continue;
                }
                int s = v > 0 ? 1 : -1;
                if (sign == 0) sign = s;
                if (s != sign) return;
            }
            facets.insert(on);
            return;
        }
        for (std::size_t i = start; i < k; ++i) {
            pick.push_back(static_cast<int>(i));
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
    // close under intersection
    std::vector<IVec> frontier(facets.begin(), facets.end());
    for (const auto& f : frontier) faces.insert(f);
    while (!frontier.empty()) {
        std::vector<IVec> next;
        for (const auto& a : frontier)
            for (const auto& f : facets) {
                IVec c;
                std::set_intersection(a.begin(), a.end(), f.begin(), f.end(), std::back_inserter(c));
                if (faces.insert(c).second) next.push_back(c);
            }
        frontier = std::move(next);
    }
    return std::vector<IVec>(faces.begin(), faces.end());
}

/// The valuation cone V = { x : <lambda_i, x> <= 0 } and the color map eps(D_i) = lambda_i^vee / 2.
struct LunaVustSpace {
    RootDatum restricted;

    std::size_t dim() const { return static_cast<std::size_t>(restricted.rank); }
    QVec color_vector(int i) const {
        QVec v(dim(), 0);
        v[i] = Q(1, 2);
        return v;
    }
    /// Row i gives <lambda_i, x>.
    QVec pairing_row(int i) const {
        QVec r(dim());
        for (std::size_t k = 0; k < dim(); ++k) r[k] = restricted.cartan[i][k];
        return r;
    }
    bool in_valuation_cone(const QVec& x) const {
        for (int i = 0; i < restricted.rank; ++i)
            if (dot(pairing_row(i), x) > 0) return false;
        return true;
    }
    /// -gamma_j, the extremal rays of V.
    std::vector<QVec> valuation_rays() const {
        auto g = fundamental_coweights(restricted);
        for (auto& v : g)
            for (auto& x : v) x = -x;
        return g;
    }
};

inline LunaVustSpace luna_vust_space(const RestrictedRootDatum& rr) { return {rr.restricted}; }

/// Does relint(cone(rays)) meet V?
inline bool relint_meets_valuation_cone(const LunaVustSpace& sp, const std::vector<Ray>& rays) {
    if (rays.empty()) return true;
    std::size_t k = rays.size();
    std::vector<LinearConstraint> cons;
    for (int i = 0; i < sp.restricted.rank; ++i) {
        QVec row = sp.pairing_row(i);
        LinearConstraint c{QVec(k), Rel::LE, 0};
        for (std::size_t s = 0; s < k; ++s) {
            c.a[s] = dot(row, to_q(rays[s]));
            c.b -= c.a[s];
        }
        cons.push_back(std::move(c));
    }
    return lp_find(k, cons).has_value();
}

/// Do relint(a), relint(b) and V share a point?
inline bool relints_meet_in_valuation_cone(const LunaVustSpace& sp, const std::vector<Ray>& a,
                                           const std::vector<Ray>& b) {
    std::size_t ka = a.size(), kb = b.size(), d = sp.dim();
    std::vector<LinearConstraint> cons;
    // x = sum (1 + mu) a = sum (1 + nu) b
    for (std::size_t r = 0; r < d; ++r) {
        LinearConstraint c{QVec(ka + kb), Rel::EQ, 0};
        for (std::size_t s = 0; s < ka; ++s) {
            c.a[s] = a[s][r];
            c.b -= a[s][r];
        }
        for (std::size_t s = 0; s < kb; ++s) {
            c.a[ka + s] = -b[s][r];
            c.b += b[s][r];
        }
        cons.push_back(std::move(c));
    }
    for (int i = 0; i < sp.restricted.rank; ++i) {
        QVec row = sp.pairing_row(i);
        LinearConstraint c{QVec(ka + kb), Rel::LE, 0};
        for (std::size_t s = 0; s < ka; ++s) {
            c.a[s] = dot(row, to_q(a[s]));
            c.b -= c.a[s];
        }
        cons.push_back(std::move(c));
    }
    return lp_find(ka + kb, cons).has_value();
}

/// Canonical colored cone from arbitrary generators.
inline ColoredCone make_colored_cone(const std::vector<QVec>& gens, std::set<int> colors) {
    return ColoredCone{extremal_rays(gens), std::move(colors)};
}

inline std::vector<QVec> ray_vectors(const ColoredCone& c) {
    std::vector<QVec> g;
    for (const auto& r : c.rays) g.push_back(to_q(r));
    return g;
}

/// Conditions (1a), (1b) and relint(C) meeting V.
inline bool is_colored_cone(const LunaVustSpace& sp, const ColoredCone& cc, std::string* why = nullptr) {
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    auto gens = ray_vectors(cc);
    if (!is_pointed(gens)) return fail("not strictly convex");
    for (int i : cc.colors) {
        if (i < 0 || i >= sp.restricted.rank) return fail("color index out of range");
        if (!cone_contains(gens, sp.color_vector(i))) return fail("color vector outside the cone");
    }
    for (const auto& r : cc.rays) {
        bool is_color = false;
        for (int i : cc.colors)
            if (primitive(sp.color_vector(i)) == r) is_color = true;
        if (!is_color && !sp.in_valuation_cone(to_q(r))) return fail("ray outside V and not a color");
    }
    if (!relint_meets_valuation_cone(sp, cc.rays)) return fail("relative interior misses V");
    return true;
}

/// Colored faces: faces whose relative interior meets V, with the induced colors.
inline std::vector<ColoredCone> colored_faces(const LunaVustSpace& sp, const ColoredCone& cc) {
    std::vector<ColoredCone> out;
    for (const auto& f : cone_faces(cc.rays)) {
        ColoredCone face;
        for (int i : f) face.rays.push_back(cc.rays[i]);
        if (!relint_meets_valuation_cone(sp, face.rays)) continue;
        auto gens = ray_vectors(face);
        for (int i : cc.colors)
            if (cone_contains(gens, sp.color_vector(i))) face.colors.insert(i);
        out.push_back(face);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline ColoredFan fan_from_maximal(const LunaVustSpace& sp, const std::vector<ColoredCone>& maximal) {
    std::set<ColoredCone> all;
    for (const auto& c : maximal)
        for (auto& f : colored_faces(sp, c)) all.insert(f);
    return ColoredFan{std::vector<ColoredCone>(all.begin(), all.end())};
}

/// Conditions (4a) and (4b).
inline bool is_colored_fan(const LunaVustSpace& sp, const ColoredFan& fan, std::string* why = nullptr) {
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    std::set<ColoredCone> members(fan.cones.begin(), fan.cones.end());
    for (const auto& c : members) {
        std::string w;
        if (!is_colored_cone(sp, c, &w)) return fail("member is not a colored cone: " + w);
        for (const auto& f : colored_faces(sp, c))
            if (!members.count(f)) return fail("colored face missing from the fan");
    }
    std::vector<ColoredCone> list(members.begin(), members.end());
    for (std::size_t i = 0; i < list.size(); ++i)
        for (std::size_t j = i + 1; j < list.size(); ++j)
            if (relints_meet_in_valuation_cone(sp, list[i].rays, list[j].rays))
                return fail("relative interiors overlap inside V");
    return true;
}

namespace detail {

/// Facet normals (inward) of a full-dimensional cone.
inline std::vector<QVec> facet_normals(const std::vector<Ray>& rays, std::size_t d) {
    std::vector<QVec> q;
    for (const auto& r : rays) q.push_back(to_q(r));
    std::set<Ray> seen;
    std::vector<QVec> out;
    IVec pick;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (pick.size() == d - 1) {
            QMatrix m;
            for (int i : pick) m.push_back(q[i]);
            auto ns = nullspace(m, d);
            if (ns.size() != 1) return;
            QVec n = ns[0];
            int sign = 0;
            for (const auto& v : q) {
                Q x = dot(n, v);
                if (x == 0) continue;
                int s = x > 0 ? 1 : -1;
                if (sign == 0) sign = s;
                if (s != sign) return;
            }
            if (sign < 0)
                for (auto& x : n) x = -x;
            if (seen.insert(primitive(n)).second) out.push_back(to_q(primitive(n)));
            return;
        }
        for (std::size_t i = start; i < q.size(); ++i) {
            pick.push_back(static_cast<int>(i));
            rec(i + 1);
            pick.pop_back();
        }
    };
    if (d == 1) return {QVec{Q(rays[0][0] > 0 ? 1 : -1)}};
    rec(0);
    return out;
}

}  // namespace detail

/// V contained in the union of the cones? Decided chamber by chamber over the facet arrangement.
inline bool is_complete(const LunaVustSpace& sp, const ColoredFan& fan) {
    std::size_t d = sp.dim();
    std::vector<std::vector<QVec>> full;  // facet normals of full-dimensional cones
    std::vector<std::vector<QVec>> full_gens;
    std::set<Ray> hyper;
    for (const auto& c : fan.cones) {
        if (c.dim() != static_cast<int>(d)) continue;
        auto normals = detail::facet_normals(c.rays, d);
        full.push_back(normals);
        full_gens.push_back(ray_vectors(c));
        for (const auto& n : normals) {
            Ray p = primitive(n);
            Ray m = p;
            for (auto& x : m) x = -x;
            hyper.insert(std::max(p, m));
        }
    }
    if (full.empty()) return false;
    using Cell = std::vector<LinearConstraint>;
    Cell interior;
    for (int i = 0; i < sp.restricted.rank; ++i) interior.push_back({sp.pairing_row(i), Rel::LE, -1});
    std::vector<Cell> cells{interior};
    for (const auto& h : hyper) {
        QVec hv = to_q(h);
        std::vector<Cell> next;
        for (const auto& cell : cells) {
            for (int s : {1, -1}) {
                Cell c = cell;
                c.push_back({hv, s > 0 ? Rel::GE : Rel::LE, Q(s)});
                if (lp_find_free(d, c)) next.push_back(std::move(c));
            }
        }
        cells = std::move(next);
    }
    for (const auto& cell : cells) {
        QVec x = *lp_find_free(d, cell);
        bool covered = false;
        for (const auto& normals : full) {
            bool in = true;
            for (const auto& n : normals)
                if (dot(n, x) < 0) in = false;
            if (in) covered = true;
        }
        if (!covered) return false;
    }
    return true;
}

/// Cover relations (larger orbit = smaller cone first) of the G-orbit poset.
struct OrbitPoset {
    std::vector<ColoredCone> nodes;
    std::vector<std::pair<int, int>> edges;  // (face, cone): orbit of cone lies in the closure of orbit of face
};

inline OrbitPoset orbit_poset(const LunaVustSpace& sp, const ColoredFan& fan) {
    OrbitPoset p{fan.cones, {}};
    std::map<ColoredCone, int> idx;
    for (std::size_t i = 0; i < p.nodes.size(); ++i) idx[p.nodes[i]] = static_cast<int>(i);
    for (std::size_t j = 0; j < p.nodes.size(); ++j) {
        int dj = p.nodes[j].dim();
        for (const auto& f : colored_faces(sp, p.nodes[j]))
            if (f.dim() == dj - 1) p.edges.emplace_back(idx.at(f), static_cast<int>(j));
    }
    std::sort(p.edges.begin(), p.edges.end());
    return p;
}

/// Nodes per cone dimension.
inline IVec level_counts(const OrbitPoset& p) {
    IVec c;
    for (const auto& n : p.nodes) {
        std::size_t d = static_cast<std::size_t>(n.dim());
        if (c.size() <= d) c.resize(d + 1, 0);
        ++c[d];
    }
    return c;
}

// ---------------------------------------------------------------- symbolic generators

/// Parses "-g2" (minus gamma_2), "g2", "l4" (lambda_4^vee), optionally prefixed by a rational factor "1/2*".
inline QVec parse_generator(const LunaVustSpace& sp, std::string tok) {
    Q factor = 1;
    auto star = tok.find('*');
    if (star != std::string::npos) {
        factor = parse_rational(tok.substr(0, star));
        tok = tok.substr(star + 1);
    }
    if (!tok.empty() && tok[0] == '-') {
        factor = -factor;
        tok = tok.substr(1);
    }
    if (tok.size() < 2 || (tok[0] != 'g' && tok[0] != 'l')) throw std::invalid_argument("bad generator " + tok);
    int i = std::stoi(tok.substr(1)) - 1;
    if (i < 0 || i >= sp.restricted.rank) throw std::out_of_range("generator index " + tok);
    QVec v(sp.dim(), 0);
    if (tok[0] == 'l')
        v[i] = 1;
    else
        v = fundamental_coweights(sp.restricted)[i];
    return factor * v;
}

/// Inverse of parse_generator on rays; falls back to the integer vector.
inline std::string ray_symbol(const LunaVustSpace& sp, const Ray& r) {
    int m = sp.restricted.rank;
    auto gam = fundamental_coweights(sp.restricted);
    for (int i = 0; i < m; ++i) {
        QVec mg = gam[i];
        for (auto& x : mg) x = -x;
        if (primitive(mg) == r) return "-g" + std::to_string(i + 1);
        if (primitive(gam[i]) == r) return "g" + std::to_string(i + 1);
        QVec l(m, 0);
        l[i] = 1;
        if (primitive(l) == r) return "l" + std::to_string(i + 1);
    }
    std::string s = "[";
    for (std::size_t k = 0; k < r.size(); ++k) s += (k ? "," : "") + std::to_string(r[k]);
    return s + "]";
}

inline ColoredCone colored_cone_from_symbols(const LunaVustSpace& sp, const std::vector<std::string>& gens,
                                             const std::vector<int>& colors_one_based) {
    std::vector<QVec> g;
    for (const auto& t : gens) g.push_back(parse_generator(sp, t));
    std::set<int> c;
    for (int i : colors_one_based) c.insert(i - 1);
    return make_colored_cone(g, c);
}

inline std::vector<std::string> cone_symbols(const LunaVustSpace& sp, const ColoredCone& c) {
    std::vector<std::string> s;
    for (const auto& r : c.rays) s.push_back(ray_symbol(sp, r));
    return s;
}

// ---------------------------------------------------------------- smoothness

struct RuzziIndexing {
    std::vector<IVec> chains;  // simple roots of each factor of R_{L,sigma}, in chain order
    std::vector<IVec> blocks;  // positions in the dual basis: y^j_1 .. y^j_{l_j + 1}
};

struct RuzziReport {
    bool levi_ok = false;     // condition (1)
    bool basis_ok = false;    // condition (2)
    bool indexing_ok = false; // condition (3)
    std::vector<QVec> basis;  // B in lambda^vee coordinates
    std::vector<QVec> dual;   // dual basis in fundamental-weight coordinates pi_i
    std::optional<RuzziIndexing> indexing;
    std::string failure;
    bool smooth() const { return levi_ok && basis_ok && indexing_ok; }
};

/// Type-A chains of the subdiagram on the given simple roots; nullopt if some factor is not of type A.
inline std::optional<std::vector<IVec>> levi_chains(const RootDatum& r, const std::set<int>& nodes) {
    IVec nv(nodes.begin(), nodes.end());
    if (nv.empty()) return std::vector<IVec>{};
    auto sub = subdiagram(r, nv);
    std::vector<IVec> chains;
    for (std::size_t c = 0; c < sub.components.size(); ++c) {
        if (sub.components[c].series != Series::A) return std::nullopt;
        const IVec& comp = sub.component_nodes[c];
        int start = comp[0];
        for (int v : comp) {
            int deg = 0;
            for (int w : comp)
                if (w != v && sub.cartan[v][w] != 0) ++deg;
            if (deg <= 1) {
                start = v;
                break;
            }
        }
        IVec chain{start};
        int prev = -1, cur = start;
        while (true) {
            int next = -1;
            for (int w : comp)
                if (w != cur && w != prev && sub.cartan[cur][w] != 0) next = w;
            if (next < 0) break;
            chain.push_back(next);
            prev = cur;
            cur = next;
        }
        for (auto& x : chain) x = nv[x];
        chains.push_back(chain);
    }
    return chains;
}

/// Condition (3) for an explicit indexing.
inline bool ruzzi_indexing_holds(const RootDatum& r, const std::vector<QVec>& dual, const RuzziIndexing& ix) {
    std::size_t p = ix.chains.size();
    std::vector<bool> used(dual.size(), false);
    for (std::size_t j = 0; j < ix.blocks.size(); ++j)
        for (int pos : ix.blocks[j]) {
            if (pos < 0 || pos >= static_cast<int>(dual.size()) || used[pos]) return false;
            used[pos] = true;
        }
    for (bool u : used)
        if (!u) return false;
    if (ix.blocks.size() < p) return false;
    for (std::size_t j = 0; j < p; ++j)
        if (ix.blocks[j].size() != ix.chains[j].size() + 1) return false;
    // (3a): <y^j_i, (2 lambda^h_k)^vee> = y^j_i[node] / 2
    for (std::size_t j = 0; j < ix.blocks.size(); ++j)
        for (std::size_t i = 0; i < ix.blocks[j].size(); ++i)
            for (std::size_t h = 0; h < p; ++h)
                for (std::size_t k = 0; k < ix.chains[h].size(); ++k) {
                    Q val = dual[ix.blocks[j][i]][ix.chains[h][k]] / 2;
                    if (val != ((j == h && i == k) ? 1 : 0)) return false;
                }
    // (3b)
    for (std::size_t j = 0; j < p; ++j) {
        const IVec& ch = ix.chains[j];
        std::size_t l = ch.size();
        auto sub = subdiagram(r, ch);
        auto cinv = *inverse(to_q(sub.cartan));
        const QVec& last = dual[ix.blocks[j][l]];
        for (std::size_t i = 0; i < l; ++i) {
            QVec lhs = dual[ix.blocks[j][i]] - Q(static_cast<long>(i + 1), static_cast<long>(l + 1)) * last;
            // 2 * fundamental weight: sum_k 2 cinv[i][k] lambda_{ch[k]}, with lambda_a = sum_n cartan[a][n] pi_n
            QVec rhs(r.rank, 0);
            for (std::size_t k = 0; k < l; ++k)
                for (int n = 0; n < r.rank; ++n) rhs[n] += 2 * cinv[i][k] * r.cartan[ch[k]][n];
            if (lhs != rhs) return false;
        }
    }
    return true;
}

inline std::vector<QVec> dual_basis(const std::vector<QVec>& basis) {
    auto inv = inverse(transpose(basis));
    if (!inv) throw StructureError("dual_basis: singular");
    return *inv;
}

inline RuzziReport ruzzi_smooth(const LunaVustSpace& sp, const ColoredCone& cc) {
    const RootDatum& r = sp.restricted;
    RuzziReport rep;
    auto chains = levi_chains(r, cc.colors);
    std::size_t total = 0;
    if (chains)
        for (const auto& c : *chains) total += c.size() + 1;
    rep.levi_ok = chains && total <= sp.dim();
    if (!rep.levi_ok) {
        rep.failure = "condition (1): Levi factors";
        return rep;
    }
    if (cc.rays.size() != sp.dim()) {
        rep.failure = "condition (2): cone is not simplicial of full dimension";
        return rep;
    }
    QMatrix doubled;
    for (const auto& ray : cc.rays) {
        doubled.push_back(to_q(ray));
        rep.basis.push_back(Q(1, 2) * to_q(ray));
    }
    Q det = determinant(doubled);
    rep.basis_ok = det == 1 || det == -1;
    if (!rep.basis_ok) {
        rep.failure = "condition (2): generators do not form a lattice basis";
        return rep;
    }
    rep.dual = dual_basis(rep.basis);
    // search: orientation of each chain and an ordered block of l+1 dual elements per factor
    std::size_t p = chains->size();
    RuzziIndexing ix;
    ix.chains = *chains;
    ix.blocks.assign(p, IVec{});
    std::vector<bool> used(sp.dim(), false);
    std::function<bool(std::size_t)> rec = [&](std::size_t j) -> bool {
        if (j == p) {
            RuzziIndexing full = ix;
            for (std::size_t k = 0; k < sp.dim(); ++k)
                if (!used[k]) full.blocks.push_back(IVec{static_cast<int>(k)});
            if (ruzzi_indexing_holds(r, rep.dual, full)) {
                rep.indexing = full;
                return true;
            }
            return false;
        }
        for (int orient = 0; orient < (ix.chains[j].size() > 1 ? 2 : 1); ++orient) {
            if (orient) std::reverse(ix.chains[j].begin(), ix.chains[j].end());
            std::size_t need = ix.chains[j].size() + 1;
            std::function<bool()> fill = [&]() -> bool {
                if (ix.blocks[j].size() == need) return rec(j + 1);
                for (std::size_t k = 0; k < sp.dim(); ++k) {
                    if (used[k]) continue;
                    used[k] = true;
                    ix.blocks[j].push_back(static_cast<int>(k));
                    if (fill()) return true;
                    ix.blocks[j].pop_back();
                    used[k] = false;
                }
                return false;
            };
            if (fill()) return true;
            if (orient) std::reverse(ix.chains[j].begin(), ix.chains[j].end());
        }
        return false;
    };
    rep.indexing_ok = rec(0);
    if (!rep.indexing_ok) rep.failure = "condition (3): no admissible indexing of the dual basis";
    return rep;
}

// ---------------------------------------------------------------- anticanonical divisor

struct AnticanonicalTerm {
    std::string divisor;  // "-g2" style ray symbol or "D3"
    int coefficient;
};

/// -K_X = sum of G-stable divisors + sum a_{D_i} D_i.
inline std::vector<AnticanonicalTerm> anticanonical_data(const LunaVustSpace& sp, const RestrictedRootDatum& rr,
                                                         const ColoredFan& fan) {
    std::vector<AnticanonicalTerm> out;
    for (const auto& c : fan.cones)
        if (c.rays.size() == 1 && c.colors.empty()) out.push_back({ray_symbol(sp, c.rays[0]), 1});
    for (const auto& col : color_table(rr)) out.push_back({"D" + std::to_string(col.index + 1), col.a_coefficient});
    return out;
}

}  // namespace conicfans
