#pragma once

// Colored fans of the normalised Chow and Hilbert schemes of conics on adjoint varieties.

#include "conicfans/lunavust.hpp"

namespace conicfans {

enum class Family { BD, B3, D4, EF, G2 };

inline Family family_of(const SimpleType& g) {
    switch (g.series) {
        case Series::B: return g.rank == 3 ? Family::B3 : Family::BD;
        case Series::D: return g.rank == 4 ? Family::D4 : Family::BD;
        case Series::E:
        case Series::F: return Family::EF;
        case Series::G: return Family::G2;
        default: break;
    }
    throw UnsupportedType("no conic atlas for " + g.name());
}

inline std::string family_name(Family f) {
    switch (f) {
        case Family::BD: return "BD";
        case Family::B3: return "B3";
        case Family::D4: return "D4";
        case Family::EF: return "EF";
        case Family::G2: return "G2";
    }
    return "";
}

/// Row label shared by the per-type tables (ten rows).
inline std::string table_row(const SimpleType& g) {
    switch (g.series) {
        case Series::B: return g.rank == 3 ? "B3" : "B_r (r>=4)";
        case Series::D: return g.rank == 4 ? "D4" : g.rank == 5 ? "D5" : "D_r (r>=6)";
        default: return g.name();
    }
}

/// Supported algebras with rank at most max_rank, in table order.
inline std::vector<SimpleType> supported_algebras(int max_rank) {
    std::vector<SimpleType> out;
    for (int r = 3; r <= max_rank; ++r) out.push_back({Series::B, r});
    for (int r = 4; r <= max_rank; ++r) out.push_back({Series::D, r});
    for (int r = 6; r <= std::min(8, max_rank); ++r) out.push_back({Series::E, r});
    if (max_rank >= 4) out.push_back({Series::F, 4});
    if (max_rank >= 2) out.push_back({Series::G, 2});
    return out;
}

struct BStablePlane {
    int beta;                     // neighbour of alpha_{j0}
    std::vector<Root> roots;      // rho, rho - alpha_{j0}, rho - alpha_{j0} - beta
    ParabolicSubset stabilizer;
    bool in_z;                    // contained in Z_g (beta long)
};

struct AdjointData {
    SimpleType type;
    RootDatum g;
    Root rho;                     // highest root
    int j0;
    int n;                        // dim Z = 2n + 1
    std::set<int> neighbors;
    IVec pss_nodes;               // simple roots of P^ss, as indices of g
    RootDatum pss;
    ParabolicSubset q;            // in P^ss indices
};

inline AdjointData adjoint_data(Series s, int r) {
    if (!supported_algebra(s, r)) throw UnsupportedType("unsupported algebra " + SimpleType{s, r}.name());
    AdjointData a{{s, r}, build_root_datum(s, r), {}, 0, 0, {}, {}, {}, {}};
    a.rho = a.g.highest_root();
    a.j0 = contact_node(a.g);
    int minus_one = 0;
    for (const auto& al : a.g.roots)
        if (al[a.j0] == -1) ++minus_one;
    a.n = minus_one / 2;
    a.neighbors = neighbors(a.g, a.j0);
    for (int i = 0; i < r; ++i)
        if (i != a.j0) a.pss_nodes.push_back(i);
    a.pss = subdiagram(a.g, a.pss_nodes);
    for (std::size_t k = 0; k < a.pss_nodes.size(); ++k)
        if (a.neighbors.count(a.pss_nodes[k])) a.q.missing.insert(static_cast<int>(k));
    return a;
}

/// Parabolic stabilising the span of the given root spaces (which must be B-stable).
inline ParabolicSubset stabilizer_of_root_span(const RootDatum& rd, const std::vector<Root>& span) {
    std::set<Root> in(span.begin(), span.end());
    ParabolicSubset p;
    for (int g = 0; g < rd.rank; ++g)
        for (const auto& mu : span) {
            Root d = mu;
            d[g] -= 1;
            bool zero = std::all_of(d.begin(), d.end(), [](int x) { return x == 0; });
            if ((zero || rd.is_root(d)) && !in.count(d)) p.missing.insert(g);
        }
    return p;
}

inline ParabolicSubset line_stabilizer(const AdjointData& a) { return ParabolicSubset{a.neighbors}; }

inline std::vector<BStablePlane> b_stable_planes(const AdjointData& a) {
    std::vector<BStablePlane> out;
    Root r1 = a.rho;
    r1[a.j0] -= 1;
    for (int beta : a.neighbors) {
        Root r2 = r1;
        r2[beta] -= 1;
        if (!a.g.is_root(r2)) throw StructureError("rho - alpha_j0 - beta is not a root");
        BStablePlane p{beta, {a.rho, r1, r2}, {}, a.g.is_long(a.g.simple(beta))};
        std::set<int> s = a.neighbors;
        for (int x : neighbors(a.g, beta)) s.insert(x);
        s.erase(a.j0);
        if (p.in_z) s.erase(beta);
        p.stabilizer.missing = s;
        out.push_back(p);
    }
    return out;
}

/// Maximal elements of R \ {rho, rho - alpha_j0} in the dominance order.
inline std::vector<Root> maximal_roots_below_line(const AdjointData& a) {
    Root r1 = a.rho;
    r1[a.j0] -= 1;
    std::vector<Root> rest;
    for (const auto& x : a.g.roots)
        if (x != a.rho && x != r1) rest.push_back(x);
    std::vector<Root> out;
    for (const auto& x : rest) {
        bool maximal = true;
        for (const auto& y : rest) {
            if (y == x) continue;
            bool ge = true;
            for (int k = 0; k < a.g.rank; ++k)
                if (y[k] < x[k]) ge = false;
            if (ge) maximal = false;
        }
        if (maximal) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Colors F with union of theta(I_i) over i not in F equal to the target parabolic.
inline std::optional<std::set<int>> solve_colors(const std::vector<ParabolicSubset>& twisted,
                                                 const ParabolicSubset& target) {
    std::set<int> f, covered;
    for (std::size_t i = 0; i < twisted.size(); ++i) {
        bool inside = std::includes(target.missing.begin(), target.missing.end(), twisted[i].missing.begin(),
                                    twisted[i].missing.end());
        if (inside)
            covered.insert(twisted[i].missing.begin(), twisted[i].missing.end());
        else
            f.insert(static_cast<int>(i));
    }
    if (covered != target.missing) return std::nullopt;
    return f;
}

namespace detail {

struct HilbertCone {
    std::vector<std::string> gens;
    IVec colors;
};

/// Maximal Hilbert cones, listed in the order of the B-stable planes.
inline std::vector<HilbertCone> hilbert_cone_data(Family f) {
    switch (f) {
        case Family::BD: return {{{"-g2", "-g4", "l2", "l4"}, {2, 4}}, {{"-g1", "-g2", "-g4", "l2"}, {2}}};
        case Family::B3: return {{{"-g2", "-g3", "l2"}, {2}}, {{"-g1", "-g2", "l2"}, {2}}};
        case Family::D4:
            return {{{"-g2", "-g3", "-g4", "l2"}, {2}}, {{"-g1", "-g2", "-g4", "l2"}, {2}}, {{"-g1", "-g2", "-g3", "l2"}, {2}}};
        case Family::EF: return {{{"-g1", "-g4", "l1", "l4"}, {1, 4}}};
        case Family::G2: return {{{"-g2", "l2"}, {2}}};
    }
    return {};
}

/// Conic types of the Hilbert orbits, keyed by the generators of the colored cone.
inline std::vector<std::pair<std::vector<std::string>, std::string>> hilbert_label_data(Family f) {
    switch (f) {
        case Family::BD:
            return {{{}, "Twistor"},
                    {{"-g1"}, "NPC"},
                    {{"-g2"}, "NPR"},
                    {{"-g4"}, "NPC"},
                    {{"-g4", "l4"}, "PC"},
                    {{"-g2", "-g4"}, "NPR"},
                    {{"-g2", "l2"}, "NPD"},
                    {{"-g1", "-g2"}, "NPR"},
                    {{"-g1", "-g4"}, "PC"},
                    {{"-g2", "-g4", "l4"}, "PR"},
                    {{"-g2", "-g4", "l2"}, "NPD"},
                    {{"-g1", "-g2", "l2"}, "NPD"},
                    {{"-g1", "-g2", "-g4"}, "PR"},
                    {{"-g2", "-g4", "l2", "l4"}, "PD"},
                    {{"-g1", "-g2", "-g4", "l2"}, "PD"}};
        case Family::B3:
            return {{{}, "Twistor"},
                    {{"-g1"}, "NPC"},
                    {{"-g2"}, "NPR"},
                    {{"-g3"}, "PC"},
                    {{"-g1", "-g2"}, "NPR"},
                    {{"-g2", "l2"}, "NPD"},
                    {{"-g2", "-g3"}, "PR"},
                    {{"-g1", "-g2", "l2"}, "NPD"},
                    {{"-g2", "-g3", "l2"}, "PD"}};
        case Family::D4: {
            std::vector<std::pair<std::vector<std::string>, std::string>> v{{{}, "Twistor"}, {{"-g2"}, "NPR"},
                                                                            {{"-g2", "l2"}, "NPD"}};
            IVec o{1, 3, 4};
            auto g = [](int i) { return "-g" + std::to_string(i); };
            for (int i : o) {
                v.push_back({{g(i)}, "NPC"});
                v.push_back({{"-g2", g(i)}, "NPR"});
                v.push_back({{"-g2", g(i), "l2"}, "NPD"});
                IVec jk;
                for (int x : o)
                    if (x != i) jk.push_back(x);
                v.push_back({{g(jk[0]), g(jk[1])}, "PC"});
                v.push_back({{"-g2", g(jk[0]), g(jk[1])}, "PR"});
                v.push_back({{"-g2", g(jk[0]), g(jk[1]), "l2"}, "PD"});
            }
            return v;
        }
        case Family::EF:
            return {{{}, "Twistor"},
                    {{"-g1"}, "NPC"},
                    {{"-g4"}, "NPR"},
                    {{"-g1", "l1"}, "PC"},
                    {{"-g1", "-g4"}, "NPR"},
                    {{"-g4", "l4"}, "NPD"},
                    {{"-g1", "-g4", "l1"}, "PR"},
                    {{"-g1", "-g4", "l4"}, "NPD"},
                    {{"-g1", "-g4", "l1", "l4"}, "PD"}};
        case Family::G2: return {{{}, "Twistor"}, {{"-g2"}, "NPR"}, {{"-g2", "l2"}, "NPD"}};
    }
    return {};
}

}  // namespace detail

/// Ray of the divisor of reducible conics.
inline std::string reducible_divisor_symbol(const SimpleType& g) {
    return family_of(g) == Family::EF ? "-g4" : "-g2";
}

enum class SchemeKind { Chow, Hilbert };

struct ConicAtlas {
    AdjointData adj;
    RestrictedRootDatum rr;
    LunaVustSpace sp;
    std::vector<ParabolicSubset> twisted;     // theta(I'_i) per color
    ParabolicSubset chow_target;              // Stab(L_B)
    std::vector<BStablePlane> planes;
    std::vector<ParabolicSubset> hilb_targets;
    ColoredCone chow_cone;
    std::vector<ColoredCone> hilb_max;
    ColoredFan chow, hilb;

    const ColoredFan& fan(SchemeKind k) const { return k == SchemeKind::Chow ? chow : hilb; }
    Family family() const { return family_of(adj.type); }
};

inline ColoredCone build_chow_cone(const LunaVustSpace& sp, const std::set<int>& colors) {
    std::vector<QVec> gens = sp.valuation_rays();
    for (int i : colors) gens.push_back(sp.color_vector(i));
    return make_colored_cone(gens, colors);
}

inline ConicAtlas build_atlas(Series s, int r) {
    ConicAtlas at{adjoint_data(s, r), restricted_datum(s, r), {}, {}, {}, {}, {}, {}, {}, {}, {}};
    at.sp = luna_vust_space(at.rr);
    at.twisted = twisted_color_parabolics(at.rr);
    at.chow_target = line_stabilizer(at.adj);
    auto fc = solve_colors(at.twisted, at.chow_target);
    if (!fc) throw StructureError("no color set realises the line stabilizer");
    at.chow_cone = build_chow_cone(at.sp, *fc);
    at.chow = fan_from_maximal(at.sp, {at.chow_cone});
    at.planes = b_stable_planes(at.adj);
    auto data = detail::hilbert_cone_data(at.family());
    if (data.size() != at.planes.size()) throw StructureError("Hilbert cones and B-stable planes differ in number");
    for (std::size_t k = 0; k < data.size(); ++k) {
        auto target = parabolic_intersection(at.chow_target, at.planes[k].stabilizer);
        at.hilb_targets.push_back(target);
        auto fh = solve_colors(at.twisted, target);
        auto cone = colored_cone_from_symbols(at.sp, data[k].gens, data[k].colors);
        if (!fh || *fh != cone.colors) throw StructureError("Hilbert cone colors do not match the closed-orbit isotropy");
        at.hilb_max.push_back(cone);
    }
    at.hilb = fan_from_maximal(at.sp, at.hilb_max);
    return at;
}

inline ColoredFan build_chow_fan(Series s, int r) { return build_atlas(s, r).chow; }
inline ColoredFan build_hilbert_fan(Series s, int r) { return build_atlas(s, r).hilb; }

/// Rows of the double coset table: |W_Q \ W_{P^ss} / W_Q|.
inline std::size_t double_coset_value(const AdjointData& a) { return double_coset_count(a.pss, a.q); }

struct OrbitNode {
    ColoredCone cone;
    std::string label;
    int dim;
};

struct OrbitReport {
    std::vector<OrbitNode> nodes;
    std::vector<std::pair<int, int>> edges;  // (face, cone): the cone's orbit lies in the closure of the face's
    std::map<std::string, int> type_counts;
    std::vector<std::string> issues;         // violated derived cross-checks
};

inline std::string hilbert_label(const ConicAtlas& at, const ColoredCone& c) {
    for (const auto& [gens, label] : detail::hilbert_label_data(at.family())) {
        std::vector<QVec> g;
        for (const auto& t : gens) g.push_back(parse_generator(at.sp, t));
        if (extremal_rays(g) == c.rays) return label;
    }
    return "";
}

/// Labeled orbit poset with the derived cross-checks recorded in issues.
inline OrbitReport orbit_report(const ConicAtlas& at, SchemeKind kind) {
    const ColoredFan& fan = at.fan(kind);
    auto poset = orbit_poset(at.sp, fan);
    OrbitReport rep;
    rep.edges = poset.edges;
    int maxdim = 0;
    for (const auto& c : poset.nodes) maxdim = std::max(maxdim, c.dim());
    for (const auto& c : poset.nodes) {
        std::string label;
        if (kind == SchemeKind::Hilbert || at.hilb.contains(c)) label = hilbert_label(at, c);
        if (kind == SchemeKind::Chow && !at.hilb.contains(c)) label = "D";
        if (label.empty()) rep.issues.push_back("unlabeled cone " + vec_string(to_q(c.rays.empty() ? Ray{} : c.rays[0])));
        rep.nodes.push_back({c, label, c.dim()});
        ++rep.type_counts[label];
    }
    Ray red = primitive(parse_generator(at.sp, reducible_divisor_symbol(at.adj.type)));
    std::vector<ColoredCone> maximal = kind == SchemeKind::Chow ? std::vector<ColoredCone>{at.chow_cone} : at.hilb_max;
    for (const auto& n : rep.nodes) {
        bool is_max = std::find(maximal.begin(), maximal.end(), n.cone) != maximal.end();
        bool closed_label = n.label == "PD" || n.label == "NPD" || n.label == "D";
        if (n.cone.rays.empty() && n.label != "Twistor") rep.issues.push_back("open orbit is not the twistor orbit");
        if (is_max && !closed_label) rep.issues.push_back("closed orbit " + n.label + " is not of double lines");
        if (n.label == "NPR" || n.label == "PR") {
            if (std::find(n.cone.rays.begin(), n.cone.rays.end(), red) == n.cone.rays.end())
                rep.issues.push_back(n.label + " cone misses the reducible divisor ray");
        }
        if (n.label == "PR") {
            bool codim1 = false;
            for (const auto& m : maximal)
                for (const auto& f : colored_faces(at.sp, m))
                    if (f == n.cone && f.dim() + 1 == m.dim()) codim1 = true;
            if (!codim1) rep.issues.push_back("PR cone is not a facet of a maximal cone");
        }
    }
    if (kind == SchemeKind::Chow) {
        // away from double lines the two fans agree
        std::set<ColoredCone> a, b;
        for (const auto& c : at.chow.cones)
            if (c != at.chow_cone || at.hilb.contains(c)) a.insert(c);
        for (const auto& c : at.hilb.cones) {
            std::string l = hilbert_label(at, c);
            if (l != "PD" && l != "NPD") b.insert(c);
        }
        if (at.family() == Family::G2) b = std::set<ColoredCone>(at.hilb.cones.begin(), at.hilb.cones.end());
        if (a != b) rep.issues.push_back("Chow and Hilbert fans differ away from double lines");
    }
    return rep;
}

/// Colored faces of the Chow cone containing the reducible divisor ray.
inline std::size_t faces_containing_reducible_ray(const ConicAtlas& at) {
    Ray red = primitive(parse_generator(at.sp, reducible_divisor_symbol(at.adj.type)));
    std::size_t n = 0;
    for (const auto& c : at.chow.cones)
        if (std::find(c.rays.begin(), c.rays.end(), red) != c.rays.end()) ++n;
    return n;
}

}  // namespace conicfans
