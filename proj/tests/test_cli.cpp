#include "conicfans/io.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>

using namespace conicfans;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + std::string(CONICFANS_CLI) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, ""};
    std::string out;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::filesystem::path copy_fixtures(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("conicfans_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    for (const auto& f : golden_files()) std::filesystem::copy_file(fixture_dir() / f, dir / f);
    return dir;
}

void write(const std::filesystem::path& p, const std::string& s) {
    std::ofstream o(p, std::ios::binary | std::ios::trunc);
    o << s;
}

}  // namespace

TEST(Cli, TableCosets) {
    auto r = run("table cosets --format csv");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(lines(r.out), 11u);
    EXPECT_NE(r.out.find("G2,G2,2\n"), std::string::npos);
    EXPECT_EQ(r.out.substr(r.out.size() - 8), "G2,G2,2\n");
}

TEST(Cli, TableChowG2) {
    auto r = run("table chow G2");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("<-g2,l2>"), std::string::npos);
    EXPECT_NE(r.out.find("{D2}"), std::string::npos);
}

TEST(Cli, TablePlanesD4) {
    auto r = run("table planes D4 --format json");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out).size(), 3u);
}

TEST(Cli, OtherTables) {
    for (const char* t : {"satake", "hilb", "colors"}) {
        auto r = run(std::string("table ") + t);
        EXPECT_EQ(r.code, 0) << t;
        EXPECT_GT(lines(r.out), 10u) << t;
    }
    EXPECT_EQ(lines(run("table hilb B4 --format csv").out), 3u);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("table bogus").code, 2);
    EXPECT_EQ(run("table chow A3").code, 2);
    EXPECT_EQ(run("table chow B2").code, 2);
    EXPECT_EQ(run("verify nonsense").code, 2);
    EXPECT_EQ(run("export fan-json G2 --which both").code, 2);
    EXPECT_EQ(run("export pdf G2").code, 2);
    EXPECT_EQ(run("table cosets --format xml").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, VerifyAll) {
    auto r = run("verify all");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find(" 0 failed"), std::string::npos);
}

TEST(Cli, VerifyIsDeterministic) {
    auto a = run("verify chevalley --seed 7 --format json --max-rank 5");
    auto b = run("verify chevalley --seed 7 --format json --max-rank 5");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_GE(json::parse(a.out).at("total").get<int>(), 50);
}

TEST(Cli, FaultInjectionThroughEnvironment) {
    auto dir = copy_fixtures("fault");
    json g = json::parse(read_file(dir / "gamma31.json"));
    g["B4"][0][3] = "1/3";
    write(dir / "gamma31.json", canonical_dump(g));
    auto r = run("verify symdata", "CONICFANS_FIXTURES=" + dir.string());
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("symdata.gamma_duality[B4]"), std::string::npos) << r.out;
    std::filesystem::remove_all(dir);
}

TEST(Cli, MissingFixturesFail) {
    auto r = run("verify symdata", "CONICFANS_FIXTURES=/nonexistent/dir");
    EXPECT_EQ(r.code, 1);
}

TEST(Cli, BlessCanonicalizesOnly) {
    auto dir = copy_fixtures("bless");
    json t = json::parse(read_file(dir / "table5.json"));
    write(dir / "table5.json", t.dump());  // same values, compact form
    std::string env = "CONICFANS_FIXTURES=" + dir.string();
    auto before = run("verify all --max-rank 4", env);
    EXPECT_EQ(before.code, 1);
    EXPECT_NE(before.out.find("golden.canonical[table5.json]"), std::string::npos);
    auto r = run("verify all --max-rank 4 --bless", env);
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("--- table5.json"), std::string::npos);
    EXPECT_EQ(read_file(dir / "table5.json"), read_file(fixture_dir() / "table5.json"));
    auto again = run("verify rootcore --bless", env);
    EXPECT_EQ(again.out.find("---"), std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST(Cli, ExportHasseDot) {
    auto r = run("export hasse-dot G2");
    ASSERT_EQ(r.code, 0);
    std::size_t nodes = 0, edges = 0;
    std::istringstream in(r.out);
    for (std::string l; std::getline(in, l);) {
        if (l.find("->") != std::string::npos)
            ++edges;
        else if (l.find("[label=") != std::string::npos)
            ++nodes;
    }
    EXPECT_EQ(nodes, 3u);
    EXPECT_EQ(edges, 2u);
}

TEST(Cli, ExportFanRoundTrip) {
    auto path = std::filesystem::temp_directory_path() / ("conicfans_fan_" + std::to_string(::getpid()) + ".json");
    auto r = run("export fan-json B4 --which hilb " + path.string());
    ASSERT_EQ(r.code, 0);
    json j = json::parse(read_file(path));
    EXPECT_EQ(j.at("cones").size(), 2u);
    auto at = build_atlas(Series::B, 4);
    auto fan = fan_from_json(at.sp, j);
    EXPECT_EQ(fan.cones, at.hilb.cones);
    EXPECT_EQ(fan_to_json(fan).dump(2) + "\n", read_file(path));
    std::filesystem::remove(path);
}

TEST(Cli, ExportConstants) {
    auto r = run("export constants-csv G2");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, 13), "alpha,beta,N\n");
}

TEST(Cli, ContactEq) {
    auto r = run("contact-eq G2 --samples 500 --seed 3");
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_EQ(j["violations"]["implication"], 0);
    EXPECT_EQ(j["violations"]["pairs"], 0);
    EXPECT_EQ(j["counts"]["samples"], 500);
    auto b3 = json::parse(run("contact-eq B3 --samples 10").out);
    EXPECT_FALSE(b3["quadratic_witness"].is_null());
}
