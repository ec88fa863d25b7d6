#pragma once

// Root systems in Onishchik-Vinberg numbering, Weyl group actions, parabolics.

#include "conicfans/rational.hpp"

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace conicfans {

enum class Series : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

class UnsupportedType : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SimpleType {
    Series series;
    int rank;

    std::string name() const { return std::string(1, static_cast<char>(series)) + std::to_string(rank); }
    auto operator<=>(const SimpleType&) const = default;
};

inline bool valid_type(Series s, int r) {
    switch (s) {
        case Series::A: return r >= 1;
        case Series::B: return r >= 2;
        case Series::C: return r >= 2;
        case Series::D: return r >= 4;
        case Series::E: return r >= 6 && r <= 8;
        case Series::F: return r == 4;
        case Series::G: return r == 2;
    }
    return false;
}

/// Parses names such as "E7" or "B12".
inline SimpleType parse_type(const std::string& s) {
    if (s.size() < 2) throw UnsupportedType("bad type: " + s);
    char c = s[0];
    if (std::string("ABCDEFG").find(c) == std::string::npos) throw UnsupportedType("bad type: " + s);
    int r = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw UnsupportedType("bad type: " + s);
        r = r * 10 + (s[i] - '0');
        if (r > 1000) throw UnsupportedType("bad type: " + s);
    }
    if (!valid_type(static_cast<Series>(c), r)) throw UnsupportedType("bad type: " + s);
    return {static_cast<Series>(c), r};
}

using Root = IVec;
using Weight = IVec;
using WeylWord = IVec;

struct VecHash {
    std::size_t operator()(const IVec& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) h = (h ^ static_cast<std::size_t>(x + 1000)) * 1099511628211ull;
        return h;
    }
};

/// Cartan matrix of a simple type; cartan[i][j] = <alpha_i | alpha_j> = 2(alpha_i, alpha_j)/(alpha_j, alpha_j).
inline IMatrix cartan_matrix(Series s, int r) {
    if (!valid_type(s, r)) throw UnsupportedType("unsupported type " + std::string(1, char(s)) + std::to_string(r));
    IMatrix c(r, IVec(r, 0));
    for (int i = 0; i < r; ++i) c[i][i] = 2;
    auto link = [&](int i, int j) { c[i][j] = c[j][i] = -1; };
    switch (s) {
        case Series::A:
            for (int i = 0; i + 1 < r; ++i) link(i, i + 1);
            break;
        case Series::B:
            for (int i = 0; i + 1 < r; ++i) link(i, i + 1);
            c[r - 2][r - 1] = -2;
            break;
        case Series::C:
            for (int i = 0; i + 1 < r; ++i) link(i, i + 1);
            c[r - 1][r - 2] = -2;
            break;
        case Series::D:
            for (int i = 0; i + 2 < r; ++i) link(i, i + 1);
            link(r - 3, r - 1);
            break;
        case Series::E:
            for (int i = 0; i + 2 < r; ++i) link(i, i + 1);
            link(r - 4, r - 1);
            break;
        case Series::F:
            link(0, 1);
            link(2, 3);
            c[1][2] = -1;
            c[2][1] = -2;
            break;
        case Series::G:
            c[0][1] = -1;
            c[1][0] = -3;
            break;
    }
    return c;
}

/// Parabolic subgroup P_I, recorded by the set I of simple roots whose negatives are missing.
struct ParabolicSubset {
    std::set<int> missing;
    auto operator<=>(const ParabolicSubset&) const = default;
};

inline ParabolicSubset parabolic_intersection(const ParabolicSubset& a, const ParabolicSubset& b) {
    ParabolicSubset r = a;
    r.missing.insert(b.missing.begin(), b.missing.end());
    return r;
}

struct RootDatum {
    int rank = 0;
    IMatrix cartan;
    std::vector<SimpleType> components;
    std::vector<IVec> component_nodes;
    QVec norms;                 // (alpha_i, alpha_i) under the Killing form
    QMatrix killing;            // Killing form on simple roots
    std::vector<Root> positive_roots;  // by height, then lexicographic
    std::vector<Root> roots;           // positives followed by their negatives
    std::unordered_map<Root, int, VecHash> index;

    std::string name() const {
        std::string s;
        for (std::size_t i = 0; i < components.size(); ++i) s += (i ? "+" : "") + components[i].name();
        return s;
    }

    int root_index(const Root& r) const {
        auto it = index.find(r);
        return it == index.end() ? -1 : it->second;
    }
    bool is_root(const Root& r) const { return index.count(r) > 0; }

    Q form(const Root& a, const Root& b) const {
        Q s = 0;
        for (int i = 0; i < rank; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < rank; ++j)
                if (b[j] != 0) s += killing[i][j] * a[i] * b[j];
        }
        return s;
    }
    Q form(const QVec& a, const QVec& b) const {
        Q s = 0;
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) s += killing[i][j] * a[i] * b[j];
        return s;
    }

    /// <a, b^vee> for a, b in simple-root coordinates.
    int pair(const Root& a, const Root& b) const {
        Q v = 2 * form(a, b) / form(b, b);
        return static_cast<int>(to_ll(v));
    }
    /// <v, alpha_i^vee> for an integral vector v.
    int pair_simple(const Root& v, int i) const {
        int s = 0;
        for (int k = 0; k < rank; ++k) s += v[k] * cartan[k][i];
        return s;
    }
    bool is_long(const Root& r) const {
        Q n = form(r, r);
        for (const auto& x : norms)
            if (x > n) return false;
        return true;
    }
    int height(const Root& r) const {
        int h = 0;
        for (int x : r) h += x;
        return h;
    }
    int num_positive() const { return static_cast<int>(positive_roots.size()); }
    Root simple(int i) const {
        Root r(rank, 0);
        r[i] = 1;
        return r;
    }
    /// Highest root of a simple datum.
    Root highest_root() const { return positive_roots.back(); }
};

namespace detail {

inline std::vector<IVec> connected_components(const IMatrix& c) {
    int n = static_cast<int>(c.size());
    std::vector<int> seen(n, 0);
    std::vector<IVec> comps;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        IVec comp, stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w = 0; w < n; ++w)
                if (!seen[w] && c[v][w] != 0) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(comp);
    }
    return comps;
}

/// Root lengths squared normalised so long roots have norm 2, per component.
inline QVec symmetrizer(const IMatrix& c, const std::vector<IVec>& comps) {
    int n = static_cast<int>(c.size());
    QVec d(n, 0);
    for (const auto& comp : comps) {
        d[comp[0]] = 1;
        IVec stack{comp[0]};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : comp)
                if (d[w] == 0 && c[v][w] != 0) {
                    // c[w][v] d[v] = c[v][w] d[w]
                    d[w] = Q(c[w][v]) * d[v] / Q(c[v][w]);
                    stack.push_back(w);
                }
        }
        Q mx = 0;
        for (int w : comp) mx = std::max(mx, d[w]);
        for (int w : comp) d[w] = 2 * d[w] / mx;
    }
    return d;
}

}  // namespace detail

/// Identifies a connected finite-type Cartan matrix; returns the canonical type name.
inline SimpleType classify_connected(const IMatrix& c) {
    int n = static_cast<int>(c.size());
    if (n == 1) return {Series::A, 1};
    auto comps = detail::connected_components(c);
    if (comps.size() != 1) throw StructureError("classify_connected: diagram not connected");
    auto d = detail::symmetrizer(c, comps);
    int maxbond = 1, branch = 0;
    std::vector<int> deg(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && c[i][j] != 0) {
                ++deg[i];
                maxbond = std::max(maxbond, c[i][j] * c[j][i]);
            }
    for (int i = 0; i < n; ++i)
        if (deg[i] >= 3) branch = 1;
    int nlong = 0;
    for (int i = 0; i < n; ++i)
        if (d[i] == 2) ++nlong;
    if (maxbond == 3) return {Series::G, 2};
    if (maxbond == 2) {
        if (n == 2) return {Series::B, 2};
        if (n == 4 && nlong == 2) {
            // F4 has the double bond in the middle of the chain
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (c[i][j] == -2 && deg[i] == 2 && deg[j] == 2) return {Series::F, 4};
        }
        if (nlong == n - 1) return {Series::B, n};
        if (nlong == 1) return {Series::C, n};
        throw StructureError("classify_connected: unrecognised doubly laced diagram");
    }
    if (!branch) return {Series::A, n};
    int b = 0;
    for (int i = 0; i < n; ++i)
        if (deg[i] == 3) b = i;
    // arm lengths from the branch node
    IVec arms;
    for (int w = 0; w < n; ++w) {
        if (w == b || c[b][w] == 0) continue;
        int len = 1, prev = b, cur = w;
        while (true) {
            int next = -1;
            for (int x = 0; x < n; ++x)
                if (x != prev && x != cur && c[cur][x] != 0) next = x;
            if (next < 0) break;
            prev = cur;
            cur = next;
            ++len;
        }
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return {Series::D, n};
    if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4) return {Series::E, n};
    throw StructureError("classify_connected: not of finite type");
}

/// Canonical name for comparing isomorphism types (D3 = A3, B2 = C2, ...).
inline std::string canonical_type_name(const SimpleType& t) {
    if (t.rank == 1) return "A1";
    if (t.series == Series::D && t.rank == 3) return "A3";
    if (t.series == Series::C && t.rank == 2) return "B2";
    return t.name();
}

/// Builds a root datum from an arbitrary finite-type Cartan matrix (possibly reducible).
inline RootDatum from_cartan(const IMatrix& cartan) {
    RootDatum rd;
    rd.rank = static_cast<int>(cartan.size());
    rd.cartan = cartan;
    rd.component_nodes = detail::connected_components(cartan);
    for (const auto& comp : rd.component_nodes) {
        IMatrix sub(comp.size(), IVec(comp.size()));
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (std::size_t j = 0; j < comp.size(); ++j) sub[i][j] = cartan[comp[i]][comp[j]];
        rd.components.push_back(classify_connected(sub));
    }
    int n = rd.rank;
    QVec d = detail::symmetrizer(cartan, rd.component_nodes);
    // base form (alpha_i, alpha_j) = cartan[i][j] d_j / 2
    QMatrix base(n, QVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) base[i][j] = Q(cartan[i][j]) * d[j] / 2;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (base[i][j] != base[j][i]) throw StructureError("Cartan matrix not symmetrisable");

    // positive roots by the string algorithm
    std::vector<Root> pos;
    std::unordered_set<Root, VecHash> seen;
    for (int i = 0; i < n; ++i) {
        pos.push_back(rd.simple(i));
        seen.insert(pos.back());
    }
    std::size_t layer_start = 0;
    while (layer_start < pos.size()) {
        std::size_t layer_end = pos.size();
        std::vector<Root> next;
        for (std::size_t k = layer_start; k < layer_end; ++k) {
            const Root& beta = pos[k];
            for (int i = 0; i < n; ++i) {
                int pr = 0;
                for (int j = 0; j < n; ++j) pr += beta[j] * cartan[j][i];
                int p = 0;
                Root down = beta;
                while (true) {
                    down[i] -= 1;
                    if (!seen.count(down)) break;
                    ++p;
                }
                int q = p - pr;
                if (q > 0) {
                    Root up = beta;
                    up[i] += 1;
                    if (!seen.count(up)) {
                        seen.insert(up);
                        next.push_back(up);
                    }
                }
            }
        }
        layer_start = layer_end;
        for (auto& r : next) pos.push_back(std::move(r));
        if (pos.size() > 100000) throw StructureError("root closure does not terminate");
    }
    std::stable_sort(pos.begin(), pos.end(), [&](const Root& a, const Root& b) {
        int ha = rd.height(a), hb = rd.height(b);
        if (ha != hb) return ha < hb;
        return a < b;
    });
    rd.positive_roots = pos;
    rd.roots = pos;
    for (const auto& r : pos) {
        Root m = r;
        for (auto& x : m) x = -x;
        rd.roots.push_back(m);
    }
    for (std::size_t k = 0; k < rd.roots.size(); ++k) rd.index[rd.roots[k]] = static_cast<int>(k);

    // Killing form: kappa(h, h') = sum over roots gamma(h) gamma(h'), dualised; per component scale.
    rd.killing = QMatrix(n, QVec(n, 0));
    for (const auto& comp : rd.component_nodes) {
        int a = comp[0];
        Q c = 0;
        for (const auto& g : rd.roots) {
            bool inside = true;
            for (int i = 0; i < n; ++i)
                if (g[i] != 0 && std::find(comp.begin(), comp.end(), i) == comp.end()) inside = false;
            if (!inside) continue;
            Q s = 0;
            for (int i = 0; i < n; ++i) s += base[i][a] * g[i];
            c += s * s;
        }
        c /= base[a][a];
        for (int i : comp)
            for (int j : comp) rd.killing[i][j] = base[i][j] / c;
    }
    rd.norms.resize(n);
    for (int i = 0; i < n; ++i) rd.norms[i] = rd.killing[i][i];
    return rd;
}

inline RootDatum build_root_datum(Series s, int r) {
    RootDatum rd = from_cartan(cartan_matrix(s, r));
    rd.components = {SimpleType{s, r}};
    return rd;
}

inline RootDatum build_root_datum(const SimpleType& t) { return build_root_datum(t.series, t.rank); }

/// Block-diagonal datum for a product of simple types, in the given order.
inline RootDatum build_product(const std::vector<SimpleType>& types) {
    int n = 0;
    for (const auto& t : types) n += t.rank;
    IMatrix c(n, IVec(n, 0));
    int off = 0;
    for (const auto& t : types) {
        auto b = cartan_matrix(t.series, t.rank);
        for (int i = 0; i < t.rank; ++i)
            for (int j = 0; j < t.rank; ++j) c[off + i][off + j] = b[i][j];
        off += t.rank;
    }
    RootDatum rd = from_cartan(c);
    rd.components = types;
    return rd;
}

/// Sub-datum on a subset of simple roots; nodes[i] is the original index of new node i.
inline RootDatum subdiagram(const RootDatum& rd, const IVec& nodes) {
    IMatrix c(nodes.size(), IVec(nodes.size()));
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < nodes.size(); ++j) c[i][j] = rd.cartan[nodes[i]][nodes[j]];
    return from_cartan(c);
}

/// Order of the Weyl group from the classical product formulas.
inline unsigned long long weyl_order_formula(const SimpleType& t) {
    auto fact = [](int k) {
        unsigned long long f = 1;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };
    switch (t.series) {
        case Series::A: return fact(t.rank + 1);
        case Series::B:
        case Series::C: return (1ull << t.rank) * fact(t.rank);
        case Series::D: return (1ull << (t.rank - 1)) * fact(t.rank);
        case Series::E: return t.rank == 6 ? 51840ull : t.rank == 7 ? 2903040ull : 696729600ull;
        case Series::F: return 1152;
        case Series::G: return 12;
    }
    return 0;
}

inline unsigned long long weyl_order(const RootDatum& rd) {
    unsigned long long o = 1;
    for (const auto& t : rd.components) o *= weyl_order_formula(t);
    return o;
}

/// s_i applied to a vector in simple-root coordinates.
template <class T>
std::vector<T> reflect(const RootDatum& rd, std::vector<T> v, int i) {
    if (i < 0 || i >= rd.rank) throw std::out_of_range("reflect: index out of range");
    T p = 0;
    for (int k = 0; k < rd.rank; ++k) p += v[k] * T(rd.cartan[k][i]);
    v[i] -= p;
    return v;
}

/// Applies s_{w[0]} s_{w[1]} ... s_{w[k-1]} (rightmost first).
template <class T>
std::vector<T> weyl_apply(const RootDatum& rd, const WeylWord& w, std::vector<T> v) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) v = reflect(rd, std::move(v), *it);
    return v;
}

/// s_i on a weight in fundamental-weight coordinates.
inline Weight reflect_weight(const RootDatum& rd, Weight w, int i) {
    int a = w[i];
    if (a == 0) return w;
    for (int k = 0; k < rd.rank; ++k) w[k] -= a * rd.cartan[i][k];
    return w;
}

/// Reduced word for w0 by descending from rho.
inline WeylWord longest_element(const RootDatum& rd) {
    Weight v(rd.rank, 1);
    WeylWord steps;
    while (true) {
        int i = -1;
        for (int k = 0; k < rd.rank; ++k)
            if (v[k] > 0) {
                i = k;
                break;
            }
        if (i < 0) break;
        v = reflect_weight(rd, v, i);
        steps.push_back(i);
    }
    // v = s_{k_m} ... s_{k_1} rho, so w0 = s_{k_m} ... s_{k_1}
    return WeylWord(steps.rbegin(), steps.rend());
}

/// theta(i) = j with -w0(alpha_i) = alpha_j.
inline IVec duality_involution(const RootDatum& rd) {
    auto w0 = longest_element(rd);
    IVec th(rd.rank);
    for (int i = 0; i < rd.rank; ++i) {
        Root v = weyl_apply(rd, w0, rd.simple(i));
        for (auto& x : v) x = -x;
        int j = -1;
        for (int k = 0; k < rd.rank; ++k)
            if (v == rd.simple(k)) j = k;
        if (j < 0) throw StructureError("duality_involution: -w0(alpha_i) not simple");
        th[i] = j;
    }
    return th;
}

/// (w0 P_I w0^{-1})^- = P_{theta(I)}.
inline ParabolicSubset opposite_conjugate(const RootDatum& rd, const ParabolicSubset& p) {
    auto th = duality_involution(rd);
    ParabolicSubset r;
    for (int i : p.missing) r.missing.insert(th[i]);
    return r;
}

inline constexpr std::size_t kDefaultOrbitCap = 10'000'000;

/// W-orbit of omega_I = sum_{i in I} omega_i; its size is |W / W_{P_I}|.
inline std::vector<Weight> coset_orbit(const RootDatum& rd, const ParabolicSubset& p,
                                       std::size_t cap = kDefaultOrbitCap) {
    Weight start(rd.rank, 0);
    for (int i : p.missing) {
        if (i < 0 || i >= rd.rank) throw std::out_of_range("coset_orbit: index out of range");
        start[i] = 1;
    }
    std::unordered_set<Weight, VecHash> seen{start};
    std::vector<Weight> orbit{start};
    for (std::size_t k = 0; k < orbit.size(); ++k) {
        for (int i = 0; i < rd.rank; ++i) {
            if (orbit[k][i] == 0) continue;
            Weight w = reflect_weight(rd, orbit[k], i);
            if (seen.insert(w).second) {
                orbit.push_back(w);
                if (orbit.size() > cap) throw ResourceLimit("Weyl orbit exceeds cap");
            }
        }
    }
    std::sort(orbit.begin(), orbit.end());
    return orbit;
}

/// |W_Q \ W / W_Q| as the number of W_Q-orbits on W/W_Q.
inline std::size_t double_coset_count(const RootDatum& rd, const ParabolicSubset& q,
                                      std::size_t cap = kDefaultOrbitCap) {
    auto orbit = coset_orbit(rd, q, cap);
    std::unordered_map<Weight, int, VecHash> idx;
    for (std::size_t k = 0; k < orbit.size(); ++k) idx[orbit[k]] = static_cast<int>(k);
    std::vector<int> parent(orbit.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t classes = orbit.size();
    for (std::size_t k = 0; k < orbit.size(); ++k)
        for (int i = 0; i < rd.rank; ++i) {
            if (q.missing.count(i)) continue;
            int a = find(static_cast<int>(k)), b = find(idx.at(reflect_weight(rd, orbit[k], i)));
            if (a != b) {
                parent[a] = b;
                --classes;
            }
        }
    return classes;
}

/// Simple roots adjacent to alpha_i in the Dynkin diagram.
inline std::set<int> neighbors(const RootDatum& rd, int i) {
    std::set<int> s;
    for (int k = 0; k < rd.rank; ++k)
        if (k != i && rd.cartan[i][k] != 0) s.insert(k);
    return s;
}

/// True when the Weyl group permutes the roots (closure check used in tests and verify).
inline bool roots_closed_under_reflections(const RootDatum& rd) {
    for (const auto& r : rd.roots)
        for (int i = 0; i < rd.rank; ++i)
            if (!rd.is_root(reflect(rd, r, i))) return false;
    return true;
}

/// 1-based label for a set of simple roots, e.g. "{1,3}".
inline std::string set_label(const std::set<int>& s) {
    std::string r = "{";
    bool first = true;
    for (int i : s) {
        r += (first ? "" : ",") + std::to_string(i + 1);
        first = false;
    }
    return r + "}";
}

}  // namespace conicfans
