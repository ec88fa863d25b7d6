// conicfans: tables, verification against the golden fixtures, exports.
//
// exit codes: 0 ok, 1 verification failure, 2 usage error

#include "conicfans/verify.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>

using namespace conicfans;

namespace {

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Table {
    std::vector<std::string> head;
    std::vector<std::vector<std::string>> rows;
};

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
    return o + "\"";
}

void render(const Table& t, const std::string& format, std::ostream& out) {
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : t.rows) {
            json o = json::object();
            for (std::size_t i = 0; i < t.head.size(); ++i) o[t.head[i]] = r[i];
            arr.push_back(o);
        }
        out << arr.dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        for (std::size_t i = 0; i < t.head.size(); ++i) out << (i ? "," : "") << csv_cell(t.head[i]);
        out << "\n";
        for (const auto& r : t.rows) {
            for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_cell(r[i]);
            out << "\n";
        }
        return;
    }
    std::vector<std::size_t> w(t.head.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = t.head[i].size();
    for (const auto& r : t.rows)
        for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
    auto line = [&](const std::vector<std::string>& r) {
        std::string s;
        for (std::size_t i = 0; i < r.size(); ++i) {
            s += r[i];
            if (i + 1 < r.size()) s += std::string(w[i] - r[i].size() + 2, ' ');
        }
        out << s << "\n";
    };
    line(t.head);
    for (const auto& r : t.rows) line(r);
}

SimpleType algebra_arg(const std::string& s) {
    SimpleType g;
    try {
        g = parse_type(s);
        family_of(g);
    } catch (const UnsupportedType&) {
        throw Usage("unsupported algebra: " + s);
    }
    return g;
}

/// Algebras for a table: the given one, or one representative per table row.
std::vector<std::pair<std::string, SimpleType>> table_targets(const std::string& g, int max_rank) {
    std::vector<std::pair<std::string, SimpleType>> out;
    if (!g.empty()) {
        auto t = algebra_arg(g);
        out.push_back({t.name(), t});
        return out;
    }
    std::set<std::string> seen;
    for (const auto& t : supported_algebras(max_rank))
        if (seen.insert(table_row(t)).second) out.push_back({table_row(t), t});
    return out;
}

std::string groups_text(const std::vector<IVec>& groups) {
    std::string s;
    for (std::size_t i = 0; i < groups.size(); ++i)
        s += (i ? " " : "") + set_label(std::set<int>(groups[i].begin(), groups[i].end()));
    return s;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

Table make_table(const std::string& name, const std::string& g, int max_rank) {
    Table t;
    auto targets = table_targets(g, max_rank);
    if (name == "satake") {
        t.head = {"row", "g", "k", "black", "arrows", "restricted", "lambda"};
        for (const auto& [row, a] : targets) {
            auto rr = restricted_datum(a.series, a.rank);
            std::string arrows;
            for (auto [x, y] : rr.satake.arrows) arrows += (arrows.empty() ? "" : " ") + std::to_string(x + 1) + "<->" + std::to_string(y + 1);
            t.rows.push_back({row, a.name(), join(fixed_subalgebra_type(rr.g()), "+"), set_label(rr.satake.black), arrows,
                              canonical_type_name(rr.restricted_type), groups_text(rr.groups)});
        }
    } else if (name == "chow" || name == "hilb") {
        t.head = {"row", "g", "cone", "colors"};
        for (const auto& [row, a] : targets) {
            auto at = build_atlas(a.series, a.rank);
            std::vector<ColoredCone> cones = name == "chow" ? std::vector<ColoredCone>{at.chow_cone} : at.hilb_max;
            for (const auto& c : cones) {
                std::string text = cone_text(at.sp, c);
                auto brace = text.find(" {");
                t.rows.push_back({row, a.name(), text.substr(0, brace), text.substr(brace + 1)});
            }
        }
    } else if (name == "planes") {
        t.head = {"row", "g", "j0", "n", "beta", "stabilizer", "in_z"};
        for (const auto& [row, a] : targets) {
            auto adj = adjoint_data(a.series, a.rank);
            for (const auto& p : b_stable_planes(adj))
                t.rows.push_back({row, a.name(), std::to_string(adj.j0 + 1), std::to_string(adj.n), std::to_string(p.beta + 1),
                                  set_label(p.stabilizer.missing), p.in_z ? "yes" : "no"});
        }
    } else if (name == "cosets") {
        t.head = {"row", "g", "double_cosets"};
        for (const auto& [row, a] : targets)
            t.rows.push_back({row, a.name(), std::to_string(double_coset_value(adjoint_data(a.series, a.rank)))});
    } else if (name == "colors") {
        t.head = {"row", "g", "color", "simple_roots", "spherical_root", "type", "a"};
        for (const auto& [row, a] : targets) {
            auto rr = restricted_datum(a.series, a.rank);
            for (const auto& c : color_table(rr)) {
                std::string sr;
                for (int x : c.spherical_root) sr += std::to_string(x);
                t.rows.push_back({row, a.name(), "D" + std::to_string(c.index + 1), set_label(c.simple_roots), sr, c.type,
                                  std::to_string(c.a_coefficient)});
            }
        }
    } else {
        throw Usage("unknown table: " + name);
    }
    return t;
}

/// Line diff (longest common subsequence), printed as -/+ lines.
void print_diff(const std::string& name, const std::string& a, const std::string& b, std::ostream& out) {
    auto lines = [](const std::string& s) {
        std::vector<std::string> v;
        std::istringstream in(s);
        for (std::string l; std::getline(in, l);) v.push_back(l);
        return v;
    };
    auto x = lines(a), y = lines(b);
    std::size_t n = x.size(), m = y.size();
    std::vector<std::vector<int>> L(n + 1, std::vector<int>(m + 1, 0));
    for (std::size_t i = n; i-- > 0;)
        for (std::size_t j = m; j-- > 0;) L[i][j] = x[i] == y[j] ? L[i + 1][j + 1] + 1 : std::max(L[i + 1][j], L[i][j + 1]);
    out << "--- " << name << " (stored)\n+++ " << name << " (canonical)\n";
    std::size_t i = 0, j = 0;
    while (i < n || j < m) {
        if (i < n && j < m && x[i] == y[j]) {
            ++i;
            ++j;
        } else if (j < m && (i == n || L[i][j + 1] >= L[i + 1][j])) {
            out << "+" << y[j++] << "\n";
        } else {
            out << "-" << x[i++] << "\n";
        }
    }
}

/// Rewrites fixtures into canonical serialization; values are never regenerated.
void bless(const std::filesystem::path& dir, std::ostream& out) {
    for (const auto& f : golden_files()) {
        std::string raw = read_file(dir / f);
        std::string canon = canonical_dump(json::parse(raw));
        if (raw == canon) continue;
        print_diff(f, raw, canon, out);
        std::ofstream o(dir / f, std::ios::binary | std::ios::trunc);
        o << canon;
        if (!o) throw std::runtime_error("cannot write " + (dir / f).string());
        out << "blessed " << f << "\n";
    }
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream o(path, std::ios::binary | std::ios::trunc);
    o << text;
    if (!o) throw std::runtime_error("cannot write " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Colored fans of conic compactifications on adjoint varieties"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    int max_rank = 8;
    std::uint64_t seed = 1;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--max-rank", max_rank, "rank cap for the B and D series")->check(CLI::Range(4, 40));
    app.add_option("--seed", seed, "seed for sampled checks");

    auto* table = app.add_subcommand("table", "reproduce a table");
    std::string table_name, table_g;
    table->add_option("name", table_name, "satake, chow, hilb, planes, cosets or colors")->required();
    table->add_option("g", table_g, "algebra, e.g. E7");

    auto* verify = app.add_subcommand("verify", "check invariants and golden fixtures");
    std::string scope = "all";
    bool do_bless = false;
    unsigned threads = 0;
    std::string report_path;
    verify->add_option("scope", scope, "all, rootcore, symdata, lunavust, conicatlas or chevalley");
    verify->add_flag("--bless", do_bless, "rewrite fixtures into canonical form (prints a diff first)");
    verify->add_option("--threads", threads, "worker threads (0: all cores)");
    verify->add_option("--report", report_path, "write the JSON report here");

    auto* exportc = app.add_subcommand("export", "write fan JSON, Hasse DOT or structure constants");
    std::string kind, export_g, path, which = "hilb";
    exportc->add_option("kind", kind, "fan-json, hasse-dot or constants-csv")->required();
    exportc->add_option("g", export_g, "algebra")->required();
    exportc->add_option("path", path, "output file (default stdout)");
    exportc->add_option("--which", which, "chow or hilb")->check(CLI::IsMember({"chow", "hilb"}));

    auto* contact = app.add_subcommand("contact-eq", "contact cubic checks");
    std::string contact_g;
    int samples = -1;
    contact->add_option("g", contact_g, "algebra")->required();
    contact->add_option("--samples", samples, "random samples (default 10000 for G2, 50 otherwise)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*table) {
            render(make_table(table_name, table_g, max_rank), format, std::cout);
            return 0;
        }
        if (*verify) {
            auto& sc = verify_scopes();
            if (std::find(sc.begin(), sc.end(), scope) == sc.end()) throw Usage("unknown scope: " + scope);
            if (do_bless) bless(fixture_dir(), std::cerr);
            VerifyOptions o;
            o.max_rank = max_rank;
            o.seed = seed;
            o.threads = threads;
            if (scope != "all") o.modules = {scope};
            GoldenBundle gb;
            try {
                gb = load_golden();
            } catch (const std::exception& e) {
                std::cerr << "cannot load fixtures: " << e.what() << "\n";
                return 1;
            }
            auto rep = run_verify(o, gb);
            json j = report_json(rep);
            if (!report_path.empty()) write_out(report_path, j.dump(2) + "\n");
            if (format == "json") {
                std::cout << j.dump(2) << "\n";
            } else if (format == "csv") {
                std::cout << "name,status,detail\n";
                for (const auto& c : rep.checks)
                    std::cout << csv_cell(c.name) << "," << (c.pass ? "pass" : "fail") << "," << csv_cell(c.detail) << "\n";
            } else {
                for (const auto& c : rep.checks)
                    if (!c.pass) std::cout << "FAIL " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
                std::cout << rep.checks.size() << " checks, " << rep.failed() << " failed\n";
            }
            return rep.ok() ? 0 : 1;
        }
        if (*exportc) {
            auto g = algebra_arg(export_g);
            if (kind == "fan-json") {
                auto at = build_atlas(g.series, g.rank);
                write_out(path, fan_to_json(which == "chow" ? at.chow : at.hilb).dump(2) + "\n");
            } else if (kind == "hasse-dot") {
                auto at = build_atlas(g.series, g.rank);
                auto k = which == "chow" ? SchemeKind::Chow : SchemeKind::Hilbert;
                write_out(path, hasse_dot(at.sp, orbit_report(at, k), g.name() + " " + which));
            } else if (kind == "constants-csv") {
                write_out(path, constants_csv(ChevalleyBasis(build_root_datum(g))));
            } else {
                throw Usage("unknown export kind: " + kind);
            }
            return 0;
        }
        if (*contact) {
            auto g = algebra_arg(contact_g);
            if (samples < 0) samples = g.series == Series::G ? 10000 : 50;
            ChevalleyBasis cb(build_root_datum(g));
            auto r = contact_cubic_check(cb, samples, seed);
            json j = {{"algebra", r.algebra},
                      {"witnesses", r.witnesses},
                      {"nonzero_witness", r.nonzero_witness},
                      {"violations", {{"implication", r.implication_violations}, {"pairs", r.pair_violations}}},
                      {"counts", {{"samples", r.samples}, {"pairs_checked", r.pairs_checked}}},
                      {"counterexample", r.counterexample ? json(*r.counterexample) : json(nullptr)}};
            if (g.series == Series::B && g.rank == 3) {
                auto w = find_quadratic_witness(cb);
                j["quadratic_witness"] = w ? json(describe(cb, *w)) : json(nullptr);
            }
            std::cout << j.dump(2) << "\n";
            return 0;
        }
    } catch (const Usage& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedType& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
