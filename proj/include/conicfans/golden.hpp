#pragma once

// Golden fixture bundle: loading, row selection, and the small expression language used by
// parametric rows ("2r-7", "4..r-2", "B{r-2}").

#include "conicfans/conicatlas.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef CONICFANS_FIXTURE_DIR
#define CONICFANS_FIXTURE_DIR "fixtures"
#endif

namespace conicfans {

using json = nlohmann::json;

inline const std::vector<std::string>& golden_files() {
    static const std::vector<std::string> files{"table1.json", "table2.json", "table3.json", "table4.json",
                                                "table5.json", "table6.json", "gamma31.json", "faces31.json",
                                                "hasse51.json", "orbitcounts.json", "ruzzi.json"};
    return files;
}

/// CONICFANS_FIXTURES overrides the compiled-in directory.
inline std::filesystem::path fixture_dir() {
    if (const char* e = std::getenv("CONICFANS_FIXTURES"); e && *e) return e;
    return CONICFANS_FIXTURE_DIR;
}

/// Canonical serialization; fixtures must be byte-identical to it.
inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct GoldenBundle {
    std::map<std::string, json> files;
    std::map<std::string, std::string> raw;  // bytes as stored, for the canonical-form check

    const json& operator[](const std::string& name) const { return files.at(name); }
};

inline GoldenBundle load_golden(const std::filesystem::path& dir = fixture_dir()) {
    GoldenBundle g;
    for (const auto& f : golden_files()) {
        g.raw[f] = read_file(dir / f);
        g.files[f] = json::parse(g.raw[f]);
    }
    return g;
}

// ---------------------------------------------------------------- expressions in r

namespace detail {

struct ExprParser {
    const std::string& s;
    std::size_t i = 0;
    long long r;

    void skip() {
        while (i < s.size() && s[i] == ' ') ++i;
    }
    long long expr() {
        long long v = term();
        for (skip(); i < s.size() && (s[i] == '+' || s[i] == '-'); skip()) {
            char op = s[i++];
            long long t = term();
            v = op == '+' ? v + t : v - t;
        }
        return v;
    }
    long long term() {
        long long v = factor();
        // implicit product: "2r", "2(r-4)"
        for (skip(); i < s.size() && (s[i] == 'r' || s[i] == '(' || s[i] == '*'); skip()) {
            if (s[i] == '*') ++i;
            v *= factor();
        }
        return v;
    }
    long long factor() {
        skip();
        if (i >= s.size()) throw std::invalid_argument("truncated expression: " + s);
        if (s[i] == '(') {
            ++i;
            long long v = expr();
            skip();
            if (i >= s.size() || s[i] != ')') throw std::invalid_argument("unbalanced expression: " + s);
            ++i;
            return v;
        }
        if (s[i] == 'r') {
            ++i;
            return r;
        }
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw std::invalid_argument("bad expression: " + s);
        long long v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
        return v;
    }
};

}  // namespace detail

/// Integer value of an expression in r, e.g. "2(r-4)".
inline long long eval_expr(const std::string& s, long long r) {
    detail::ExprParser p{s, 0, r};
    long long v = p.expr();
    p.skip();
    if (p.i != s.size()) throw std::invalid_argument("trailing characters in expression: " + s);
    return v;
}

inline long long eval_value(const json& j, long long r) {
    if (j.is_number_integer()) return j.get<long long>();
    if (j.is_string()) return eval_expr(j.get<std::string>(), r);
    throw std::invalid_argument("expected an integer or expression, got " + j.dump());
}

/// An index spec: integer, expression, or range "a..b"; returns the 1-based indices.
inline std::vector<long long> expand_indices(const json& j, long long r) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        auto dots = s.find("..");
        if (dots != std::string::npos) {
            long long a = eval_expr(s.substr(0, dots), r), b = eval_expr(s.substr(dots + 2), r);
            std::vector<long long> v;
            for (long long k = a; k <= b; ++k) v.push_back(k);
            return v;
        }
    }
    return {eval_value(j, r)};
}

/// Flattened index list of an array of index specs.
inline std::set<int> expand_index_set(const json& arr, long long r) {
    std::set<int> out;
    for (const auto& x : arr)
        for (long long k : expand_indices(x, r)) out.insert(static_cast<int>(k));
    return out;
}

/// Zero-based version of a 1-based index list.
inline std::set<int> zero_based(const std::set<int>& s) {
    std::set<int> out;
    for (int i : s) out.insert(i - 1);
    return out;
}

/// Type names such as "B{r-2}" or "D3"; returned in canonical form (D3 = A3, C2 = B2, B1 = A1).
inline std::string canonical_type_string(const std::string& s, long long r) {
    if (s.empty() || std::string("ABCDEFG").find(s[0]) == std::string::npos)
        throw std::invalid_argument("bad type name: " + s);
    std::string rest = s.substr(1);
    long long rank;
    if (!rest.empty() && rest.front() == '{') {
        if (rest.back() != '}') throw std::invalid_argument("bad type name: " + s);
        rank = eval_expr(rest.substr(1, rest.size() - 2), r);
    } else {
        rank = eval_expr(rest, r);
    }
    if (rank < 1) throw std::invalid_argument("bad rank in " + s);
    Series se = static_cast<Series>(s[0]);
    if ((se == Series::B || se == Series::C) && rank == 1) return "A1";
    return canonical_type_name({se, static_cast<int>(rank)});
}

/// Does a fixture row (series, min, max) select g?
inline bool row_applies(const json& row, const SimpleType& g) {
    std::string se = row.at("series").get<std::string>();
    if (se.size() != 1 || se[0] != static_cast<char>(g.series)) return false;
    if (g.rank < row.at("min").get<int>()) return false;
    const json& mx = row.at("max");
    if (!mx.is_null() && g.rank > mx.get<int>()) return false;
    return true;
}

/// The unique row of an array that selects g; throws when there is none or more than one.
inline const json& select_row(const json& rows, const SimpleType& g) {
    const json* hit = nullptr;
    for (const auto& row : rows)
        if (row_applies(row, g)) {
            if (hit) throw StructureError("two fixture rows select " + g.name());
            hit = &row;
        }
    if (!hit) throw StructureError("no fixture row selects " + g.name());
    return *hit;
}

/// Entry of a family-keyed array ({"family": ...}).
inline const json& select_family(const json& rows, Family f) {
    const json* hit = nullptr;
    for (const auto& row : rows)
        if (row.at("family").get<std::string>() == family_name(f)) {
            if (hit) throw StructureError("two fixture entries for family " + family_name(f));
            hit = &row;
        }
    if (!hit) throw StructureError("no fixture entry for family " + family_name(f));
    return *hit;
}

/// Colored cone from fixture symbols and 1-based colors.
inline ColoredCone fixture_cone(const LunaVustSpace& sp, const json& rays, const json& colors) {
    std::vector<std::string> g = rays.get<std::vector<std::string>>();
    std::vector<int> c = colors.get<std::vector<int>>();
    for (int x : c)
        if (x < 1 || x > sp.restricted.rank) throw std::out_of_range("fixture color out of range");
    std::set<int> uniq(c.begin(), c.end());
    if (uniq.size() != c.size()) throw StructureError("repeated fixture color");
    return colored_cone_from_symbols(sp, g, c);
}

/// Underlying cone of a list of symbols, without colors.
inline std::vector<Ray> fixture_rays(const LunaVustSpace& sp, const json& rays) {
    std::vector<QVec> g;
    for (const auto& t : rays) g.push_back(parse_generator(sp, t.get<std::string>()));
    return extremal_rays(g);
}

inline QVec json_qvec(const json& arr) {
    QVec v;
    for (const auto& x : arr) v.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : Q(x.get<long long>()));
    return v;
}

}  // namespace conicfans
