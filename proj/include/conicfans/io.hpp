#pragma once

// Serialization: fan JSON, Hasse DOT, structure-constant CSV, per-algebra entry JSON.

#include "conicfans/chevalley.hpp"
#include "conicfans/golden.hpp"

namespace conicfans {

/// Cones of a fan that are not proper faces of another cone.
inline std::vector<ColoredCone> maximal_cones(const ColoredFan& fan) {
    std::vector<ColoredCone> out;
    for (const auto& c : fan.cones) {
        bool maximal = true;
        for (const auto& d : fan.cones)
            if (d.rays.size() > c.rays.size() && std::includes(d.rays.begin(), d.rays.end(), c.rays.begin(), c.rays.end()))
                maximal = false;
        if (maximal) out.push_back(c);
    }
    return out;
}

/// Fan JSON lists the maximal cones; faces are implied.
inline json fan_to_json(const ColoredFan& fan) {
    json cones = json::array();
    for (const auto& c : maximal_cones(fan)) {
        json rays = json::array();
        for (const auto& r : c.rays) rays.push_back(r);
        json colors = json::array();
        for (int i : c.colors) colors.push_back(i + 1);
        cones.push_back({{"rays", rays}, {"colors", colors}});
    }
    return {{"space", "coroot(R'_O)"}, {"cones", cones}};
}

inline ColoredFan fan_from_json(const LunaVustSpace& sp, const json& j) {
    if (j.at("space").get<std::string>() != "coroot(R'_O)") throw std::invalid_argument("unknown fan space");
    std::vector<ColoredCone> maximal;
    for (const auto& c : j.at("cones")) {
        std::vector<QVec> gens;
        for (const auto& r : c.at("rays")) gens.push_back(json_qvec(r));
        for (const auto& g : gens)
            if (g.size() != sp.dim()) throw std::invalid_argument("ray of wrong dimension");
        std::set<int> colors;
        for (const auto& i : c.at("colors")) {
            int k = i.get<int>() - 1;
            if (k < 0 || k >= sp.restricted.rank) throw std::out_of_range("color out of range");
            colors.insert(k);
        }
        maximal.push_back(make_colored_cone(gens, colors));
    }
    return fan_from_maximal(sp, maximal);
}

inline std::string cone_text(const LunaVustSpace& sp, const ColoredCone& c) {
    std::string s = "<";
    auto sym = cone_symbols(sp, c);
    for (std::size_t i = 0; i < sym.size(); ++i) s += (i ? "," : "") + sym[i];
    s += "> {";
    bool first = true;
    for (int i : c.colors) {
        s += (first ? "D" : ",D") + std::to_string(i + 1);
        first = false;
    }
    return s + "}";
}

inline json poset_to_json(const LunaVustSpace& sp, const OrbitReport& rep) {
    json nodes = json::array();
    for (std::size_t i = 0; i < rep.nodes.size(); ++i) {
        const auto& n = rep.nodes[i];
        nodes.push_back({{"id", i}, {"dim", n.dim}, {"type", n.label}, {"cone", cone_text(sp, n.cone)}});
    }
    json edges = json::array();
    for (auto [a, b] : rep.edges) edges.push_back({a, b});
    return {{"nodes", nodes}, {"edges", edges}};
}

/// Hasse diagram in DOT; edges point from the larger orbit to the orbit in its closure.
inline std::string hasse_dot(const LunaVustSpace& sp, const OrbitReport& rep, const std::string& title) {
    std::ostringstream o;
    o << "digraph \"" << title << "\" {\n  rankdir=TB;\n";
    for (std::size_t i = 0; i < rep.nodes.size(); ++i) {
        const auto& n = rep.nodes[i];
        o << "  n" << i << " [label=\"" << n.label << "\\n(" << n.dim << ", " << cone_text(sp, n.cone) << ")\"];\n";
    }
    for (auto [a, b] : rep.edges) o << "  n" << a << " -> n" << b << ";\n";
    o << "}\n";
    return o.str();
}

/// Structure constants N_{alpha,beta} for all pairs with alpha + beta a root.
inline std::string constants_csv(const ChevalleyBasis& cb) {
    const auto& rs = cb.roots().roots;
    auto fmt = [](const Root& r) {
        std::string s;
        for (std::size_t i = 0; i < r.size(); ++i) s += (i ? " " : "") + std::to_string(r[i]);
        return s;
    };
    std::ostringstream o;
    o << "alpha,beta,N\n";
    for (std::size_t a = 0; a < rs.size(); ++a)
        for (std::size_t b = 0; b < rs.size(); ++b) {
            int n = cb.N(static_cast<int>(a), static_cast<int>(b));
            if (n != 0) o << fmt(rs[a]) << "," << fmt(rs[b]) << "," << n << "\n";
        }
    return o.str();
}

inline json entry_json(const ConicAtlas& at) {
    return {{"g", at.adj.type.name()},
            {"j0", at.adj.j0 + 1},
            {"n", at.adj.n},
            {"chow", fan_to_json(at.chow)},
            {"hilb", fan_to_json(at.hilb)},
            {"orbits", poset_to_json(at.sp, orbit_report(at, SchemeKind::Hilbert))},
            {"double_cosets", double_coset_value(at.adj)}};
}

}  // namespace conicfans
