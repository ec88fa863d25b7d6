// Acceptance run: one line per criterion, nonzero exit if any fails.

#include "conicfans/verify.hpp"

#include <chrono>
#include <iomanip>
#include <iostream>

using namespace conicfans;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Criterion {
    int id;
    std::string title;
    std::vector<std::string> prefixes;  // check names selected by prefix
    std::vector<std::string> extra;     // extra failure reasons
    std::size_t selected = 0;
};

bool starts_with(const std::string& s, const std::string& p) { return s.compare(0, p.size(), p) == 0; }

// Paths of all leaves of a JSON document, skipping provenance labels.
void leaves(const json& j, const json::json_pointer& at, std::vector<json::json_pointer>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (it.key() != "row") leaves(it.value(), at / it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) leaves(j[i], at / i, out);
    } else {
        out.push_back(at);
    }
}

json perturb(const json& v) {
    if (v.is_boolean()) return !v.get<bool>();
    if (v.is_null()) return 0;
    if (v.is_number_integer()) return v.get<long long>() + 1;
    std::string s = v.get<std::string>();
    auto k = s.find_last_of("0123456789");
    if (k == std::string::npos) return s + "x";
    s[k] = s[k] == '9' ? '0' : static_cast<char>(s[k] + 1);
    return s;
}

}  // namespace

int main() {
    VerifyOptions o;
    GoldenBundle gb = load_golden();

    // isolated timings for the criteria that carry a budget
    auto t1 = Clock::now();
    for (const auto& g : supported_algebras(o.max_rank)) {
        auto rr = restricted_datum(g.series, g.rank);
        (void)fixed_subalgebra_type(rr.g());
    }
    double table1_time = seconds_since(t1);

    auto t6 = Clock::now();
    for (const auto& g : supported_algebras(o.max_rank)) (void)double_coset_value(adjoint_data(g.series, g.rank));
    double table5_time = seconds_since(t6);

    VerifyOptions ce = o;
    ce.modules = {"chevalley"};
    auto t10 = Clock::now();
    auto e8 = compute_entry({Series::E, 8}, ce);
    double e8_time = seconds_since(t10);

    auto t0 = Clock::now();
    auto all = compute_all(o);
    VerifyReport rep;
    for (const auto& c : all) rep.checks.insert(rep.checks.end(), c.checks.begin(), c.checks.end());
    auto cmp = compare_all(all, gb, o);
    rep.checks.insert(rep.checks.end(), cmp.begin(), cmp.end());
    double total_time = seconds_since(t0);

    std::vector<Criterion> crit{
        {1, "Table 1 reproduction", {"symdata.table1", "symdata.restricted_roots"}, {}},
        {2, "gamma duality and closed forms", {"symdata.gamma_duality", "symdata.gamma_closed_form"}, {}},
        {3, "Table 2/3 fans, fan axioms, completeness, simplicity",
         {"conicatlas.table2", "conicatlas.table3", "conicatlas.hilb_simplicity", "lunavust.chow_fan_valid",
          "lunavust.hilb_fan_valid", "lunavust.chow_complete", "lunavust.hilb_complete", "lunavust.strict_convexity",
          "lunavust.chow_cone_from_colors"},
         {}},
        {4, "face lists by dimension", {"lunavust.faces_chow", "lunavust.faces_hilb"}, {}},
        {5, "orbit counts, Hasse diagrams, FC isomorphism iff G2",
         {"conicatlas.orbit_counts", "conicatlas.hasse", "conicatlas.orbit_labels", "lunavust.fc_isomorphism",
          "conicatlas.reducible_ray"},
         {}},
        {6, "Table 5 double cosets", {"conicatlas.table5", "conicatlas.reducible_classes", "rootcore.maximal_parabolic_orbit"}, {}},
        {7, "Table 6 spherical roots, color types, a_D", {"symdata.table6"}, {}},
        {8, "Ruzzi smoothness", {"lunavust.hilb_smooth", "lunavust.ruzzi_basis", "lunavust.chow_smoothness"}, {}},
        {9, "isotropy equations and twisted parabolics",
         {"conicatlas.isotropy_chow", "conicatlas.isotropy_hilb", "conicatlas.table4", "conicatlas.plane_stabilizers",
          "conicatlas.line_stabilizer", "conicatlas.planes_exhaust", "conicatlas.closed_orbits_match_planes"},
         {}},
        {10, "Chevalley suite", {"chevalley."}, {}},
        {11, "end-to-end verify all and fault injection", {""}, {}},
    };

    // the paper's orbit totals, restated independently of the fixtures
    const std::map<std::string, std::pair<int, int>> totals{{"BD", {11, 15}}, {"B3", {7, 9}}, {"D4", {15, 21}}, {"EF", {7, 9}}, {"G2", {3, 3}}};
    for (const auto& c : all) {
        if (!c.at) continue;
        auto want = totals.at(family_name(c.at->family()));
        if (static_cast<int>(c.chow_orbits.nodes.size()) != want.first || static_cast<int>(c.hilb_orbits.nodes.size()) != want.second)
            crit[4].extra.push_back("orbit totals for " + c.g.name());
    }
    const std::vector<std::size_t> table5{6, 4, 6, 6, 8, 4, 4, 4, 4, 2};
    {
        std::vector<std::size_t> got;
        for (const char* n : {"B4", "B3", "D6", "D5", "D4", "E6", "E7", "E8", "F4", "G2"}) {
            auto g = parse_type(n);
            auto it = std::find_if(all.begin(), all.end(), [&](const Computed& c) { return c.g == g; });
            got.push_back(it == all.end() ? 0 : it->double_cosets);
        }
        if (got != table5) crit[5].extra.push_back("double coset values differ from (6,4,6,6,8,4,4,4,4,2)");
    }
    if (table1_time >= 1.0) crit[0].extra.push_back("Table 1 took " + std::to_string(table1_time) + " s");
    if (table5_time >= 30.0) crit[5].extra.push_back("Table 5 took " + std::to_string(table5_time) + " s");
    if (e8_time >= 60.0) crit[9].extra.push_back("E8 Chevalley suite took " + std::to_string(e8_time) + " s");
    for (const auto& c : e8.checks)
        if (!c.pass) crit[9].extra.push_back(c.name);
    if (total_time >= 180.0) crit[10].extra.push_back("verify all took " + std::to_string(total_time) + " s");
    if (rep.checks.size() < 200) crit[10].extra.push_back("fewer than 200 checks");

    // fault injection: every single perturbed fixture value must be caught
    std::size_t injected = 0, missed = 0;
    auto tf = Clock::now();
    for (const auto& f : golden_files()) {
        std::vector<json::json_pointer> paths;
        leaves(gb[f], json::json_pointer(), paths);
        for (const auto& p : paths) {
            GoldenBundle bad = gb;
            bad.files[f][p] = perturb(gb[f][p]);
            bad.raw[f] = canonical_dump(bad.files[f]);  // keep the byte check out of it
            auto res = compare_all(all, bad, o);
            ++injected;
            if (std::all_of(res.begin(), res.end(), [](const Check& c) { return c.pass; })) {
                ++missed;
                crit[10].extra.push_back("undetected: " + f + p.to_string());
            }
        }
    }
    double fault_time = seconds_since(tf);
    // a byte-level change alone must also be caught
    {
        GoldenBundle bad = gb;
        bad.raw["table5.json"] += " ";
        auto res = compare_all(all, bad, o);
        if (std::all_of(res.begin(), res.end(), [](const Check& c) { return c.pass; }))
            crit[10].extra.push_back("non-canonical bytes undetected");
    }

    bool ok = true;
    for (auto& c : crit) {
        std::vector<std::string> failed = c.extra;
        for (const auto& ch : rep.checks)
            if (std::any_of(c.prefixes.begin(), c.prefixes.end(), [&](const std::string& p) { return starts_with(ch.name, p); })) {
                ++c.selected;
                if (!ch.pass) failed.push_back(ch.name + (ch.detail.empty() ? "" : " (" + ch.detail + ")"));
            }
        if (c.selected == 0) failed.push_back("no checks selected");
        bool pass = failed.empty();
        ok = ok && pass;
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << std::setw(2) << c.id << ": " << c.title << " [" << c.selected
                  << " checks";
        if (c.id == 1) std::cout << ", " << std::fixed << std::setprecision(3) << table1_time << " s";
        if (c.id == 6) std::cout << ", " << std::fixed << std::setprecision(2) << table5_time << " s";
        if (c.id == 10) std::cout << ", E8 " << std::fixed << std::setprecision(1) << e8_time << " s";
        if (c.id == 11)
            std::cout << ", " << std::fixed << std::setprecision(1) << total_time << " s, " << injected << " faults injected, " << missed
                      << " missed, " << fault_time << " s";
        std::cout << "]\n";
        for (std::size_t k = 0; k < failed.size() && k < 10; ++k) std::cout << "    " << failed[k] << "\n";
    }
    return ok ? 0 : 1;
}
