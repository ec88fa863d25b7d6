#include "conicfans/io.hpp"

#include <gtest/gtest.h>

using namespace conicfans;

namespace {

using Mat = std::vector<IVec>;

// simple reflection s_i on simple-root coordinates, as an integer matrix
Mat reflection(const RootDatum& rd, int i) {
    int n = rd.rank;
    Mat m(n, IVec(n, 0));
    for (int k = 0; k < n; ++k) {
        m[k][k] = 1;
        m[i][k] -= rd.cartan[k][i];
    }
    return m;
}

Mat mul(const Mat& a, const Mat& b) {
    int n = static_cast<int>(a.size());
    Mat c(n, IVec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (a[i][k])
                for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

std::set<Mat> generate(const std::vector<Mat>& gens, int n) {
    Mat id(n, IVec(n, 0));
    for (int i = 0; i < n; ++i) id[i][i] = 1;
    std::set<Mat> seen{id};
    std::vector<Mat> todo{id};
    while (!todo.empty()) {
        Mat x = todo.back();
        todo.pop_back();
        for (const auto& g : gens) {
            Mat y = mul(g, x);
            if (seen.insert(y).second) todo.push_back(y);
        }
    }
    return seen;
}

// |W_Q \ W / W_Q| by enumerating W as matrices
std::size_t brute_double_cosets(const RootDatum& rd, const ParabolicSubset& q) {
    int n = rd.rank;
    std::vector<Mat> all, sub;
    for (int i = 0; i < n; ++i) {
        all.push_back(reflection(rd, i));
        if (!q.missing.count(i)) sub.push_back(reflection(rd, i));
    }
    auto w = generate(all, n);
    std::set<Mat> done;
    std::size_t classes = 0;
    for (const auto& x : w) {
        if (done.count(x)) continue;
        ++classes;
        std::vector<Mat> todo{x};
        done.insert(x);
        while (!todo.empty()) {
            Mat y = todo.back();
            todo.pop_back();
            for (const auto& g : sub)
                for (const Mat& z : {mul(g, y), mul(y, g)})
                    if (done.insert(z).second) todo.push_back(z);
        }
    }
    return classes;
}

}  // namespace

TEST(ConicAtlas, SupportedAlgebras) {
    EXPECT_EQ(supported_algebras(8).size(), 16u);
    EXPECT_EQ(supported_algebras(4).size(), 5u);
    EXPECT_THROW(build_atlas(Series::A, 3), UnsupportedType);
    EXPECT_THROW(family_of({Series::C, 3}), UnsupportedType);
}

TEST(ConicAtlas, DoubleCosetsAgainstBruteForce) {
    for (auto [s, r] : std::vector<std::pair<Series, int>>{{Series::B, 3}, {Series::B, 4}, {Series::B, 5}, {Series::D, 4},
                                                           {Series::D, 5}, {Series::D, 6}, {Series::F, 4}, {Series::G, 2},
                                                           {Series::E, 6}}) {
        auto a = adjoint_data(s, r);
        EXPECT_EQ(double_coset_value(a), brute_double_cosets(a.pss, a.q)) << SimpleType{s, r}.name();
    }
}

TEST(ConicAtlas, ContactDimension) {
    // dim Z = 2n + 1 = |{alpha : m_j0(alpha) > 0}|
    for (const auto& g : supported_algebras(7)) {
        auto a = adjoint_data(g.series, g.rank);
        int pos = 0;
        for (const auto& x : a.g.roots) pos += x[a.j0] > 0;
        EXPECT_EQ(2 * a.n + 1, pos) << g.name();
        EXPECT_EQ(a.neighbors, neighbors(a.g, a.j0));
    }
}

TEST(ConicAtlas, PlanesAreSpannedByRootVectors) {
    for (const auto& g : supported_algebras(6)) {
        auto a = adjoint_data(g.series, g.rank);
        for (const auto& p : b_stable_planes(a)) {
            ASSERT_EQ(p.roots.size(), 3u);
            EXPECT_EQ(p.roots[0], a.rho);
            for (const auto& x : p.roots) EXPECT_TRUE(a.g.is_root(x)) << g.name();
            // B-stable: adding any positive simple root leaves the span or the root system
            for (const auto& x : p.roots)
                for (int i = 0; i < a.g.rank; ++i) {
                    Root y = x;
                    y[i] += 1;
                    if (a.g.is_root(y)) EXPECT_TRUE(std::find(p.roots.begin(), p.roots.end(), y) != p.roots.end());
                }
        }
    }
}

TEST(ConicAtlas, SolveColors) {
    auto rr = restricted_datum(Series::G, 2);
    auto tw = twisted_color_parabolics(rr);
    auto f = solve_colors(tw, ParabolicSubset{{0}});
    ASSERT_TRUE(f.has_value());
    EXPECT_EQ(*f, (std::set<int>{1}));
    // the Borel subgroup: no color contains the closed orbit
    EXPECT_EQ(solve_colors(tw, ParabolicSubset{{0, 1}}), (std::optional<std::set<int>>{std::set<int>{}}));
    auto b4 = twisted_color_parabolics(restricted_datum(Series::B, 4));
    EXPECT_FALSE(solve_colors(b4, ParabolicSubset{{5}}).has_value());
}

TEST(ConicAtlas, OrbitReports) {
    auto at = build_atlas(Series::G, 2);
    auto rep = orbit_report(at, SchemeKind::Hilbert);
    ASSERT_EQ(rep.nodes.size(), 3u);
    EXPECT_EQ(rep.edges.size(), 2u);
    EXPECT_TRUE(rep.issues.empty());
    std::set<std::string> labels;
    for (const auto& n : rep.nodes) labels.insert(n.label);
    EXPECT_EQ(labels, (std::set<std::string>{"Twistor", "NPR", "NPD"}));
}

TEST(ConicAtlas, ChowFanHasOneMaximalCone) {
    for (const auto& g : supported_algebras(6)) {
        auto at = build_atlas(g.series, g.rank);
        EXPECT_EQ(maximal_cones(at.chow).size(), 1u) << g.name();
        EXPECT_EQ(maximal_cones(at.hilb).size(), at.planes.size()) << g.name();
    }
}

TEST(ConicAtlas, ReducibleRayFaces) {
    for (const auto& g : supported_algebras(6)) {
        auto at = build_atlas(g.series, g.rank);
        EXPECT_EQ(faces_containing_reducible_ray(at), double_coset_value(at.adj)) << g.name();
    }
}

TEST(ConicAtlas, HasseDot) {
    auto at = build_atlas(Series::G, 2);
    auto dot = hasse_dot(at.sp, orbit_report(at, SchemeKind::Hilbert), "G2");
    EXPECT_EQ(std::count(dot.begin(), dot.end(), '\n'), 8);
    EXPECT_NE(dot.find("Twistor"), std::string::npos);
    EXPECT_NE(dot.find("->"), std::string::npos);
}

TEST(ConicAtlas, EntryJson) {
    auto j = entry_json(build_atlas(Series::B, 4));
    EXPECT_EQ(j["g"], "B4");
    EXPECT_EQ(j["j0"], 2);
    EXPECT_EQ(j["n"], 5);
    EXPECT_EQ(j["double_cosets"], 6);
}
