#include "conicfans/rootcore.hpp"

#include <gtest/gtest.h>

using namespace conicfans;

namespace {

int coxeter_number(const SimpleType& t) {
    switch (t.series) {
        case Series::A: return t.rank + 1;
        case Series::B:
        case Series::C: return 2 * t.rank;
        case Series::D: return 2 * t.rank - 2;
        case Series::E: return t.rank == 6 ? 12 : t.rank == 7 ? 18 : 30;
        case Series::F: return 12;
        case Series::G: return 6;
    }
    return 0;
}

std::vector<SimpleType> sample_types() {
    return {{Series::A, 1}, {Series::A, 4}, {Series::B, 2}, {Series::B, 5}, {Series::C, 3}, {Series::D, 4},
            {Series::D, 6}, {Series::E, 6}, {Series::E, 7}, {Series::E, 8}, {Series::F, 4}, {Series::G, 2}};
}

}  // namespace

TEST(RootCore, RootCountIsRankTimesCoxeterNumber) {
    for (const auto& t : sample_types()) {
        auto rd = build_root_datum(t);
        EXPECT_EQ(rd.roots.size(), static_cast<std::size_t>(t.rank * coxeter_number(t))) << t.name();
        EXPECT_EQ(rd.positive_roots.size() * 2, rd.roots.size());
    }
}

TEST(RootCore, HighestRootHeight) {
    for (const auto& t : sample_types()) {
        auto rd = build_root_datum(t);
        EXPECT_EQ(rd.height(rd.highest_root()), coxeter_number(t) - 1) << t.name();
    }
}

TEST(RootCore, WeylOrderMatchesRegularOrbit) {
    // the orbit of a regular weight is free, so its size is |W|
    for (const auto& t : sample_types()) {
        if (t.series == Series::E && t.rank > 6) continue;
        auto rd = build_root_datum(t);
        std::set<int> all;
        for (int i = 0; i < t.rank; ++i) all.insert(i);
        EXPECT_EQ(coset_orbit(rd, ParabolicSubset{all}).size(), weyl_order_formula(t)) << t.name();
    }
}

TEST(RootCore, LongestElementLength) {
    for (const auto& t : sample_types()) {
        auto rd = build_root_datum(t);
        EXPECT_EQ(longest_element(rd).size(), rd.positive_roots.size()) << t.name();
    }
}

TEST(RootCore, DualityInvolution) {
    auto e6 = duality_involution(build_root_datum({Series::E, 6}));
    auto e7 = duality_involution(build_root_datum({Series::E, 7}));
    auto a4 = duality_involution(build_root_datum({Series::A, 4}));
    int moved6 = 0;
    for (int i = 0; i < 6; ++i) moved6 += e6[i] != i;
    EXPECT_EQ(moved6, 4);
    for (int i = 0; i < 7; ++i) EXPECT_EQ(e7[i], i);
    EXPECT_EQ(a4, (IVec{3, 2, 1, 0}));
}

TEST(RootCore, ProjectiveSpaceCosets) {
    // P^n = A_n / P_1: n+1 points, and pairs of points are equal or distinct
    for (int n = 2; n <= 6; ++n) {
        auto rd = build_root_datum({Series::A, n});
        EXPECT_EQ(coset_orbit(rd, ParabolicSubset{{0}}).size(), static_cast<std::size_t>(n + 1));
        EXPECT_EQ(double_coset_count(rd, ParabolicSubset{{0}}), 2u);
    }
    auto g2 = build_root_datum({Series::G, 2});
    EXPECT_EQ(double_coset_count(g2, ParabolicSubset{{}}), 1u);
    EXPECT_EQ(double_coset_count(g2, ParabolicSubset{{0, 1}}), 12u);
}

TEST(RootCore, OrbitCap) {
    auto e8 = build_root_datum({Series::E, 8});
    EXPECT_THROW(coset_orbit(e8, ParabolicSubset{{0, 1, 2}}, 1000), ResourceLimit);
}

TEST(RootCore, ReflectionsPreserveRoots) {
    for (const auto& t : sample_types()) EXPECT_TRUE(roots_closed_under_reflections(build_root_datum(t))) << t.name();
}

TEST(RootCore, PairingIsCartanMatrix) {
    auto rd = build_root_datum({Series::F, 4});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_EQ(rd.pair(rd.simple(i), rd.simple(j)), rd.cartan[i][j]);
}

TEST(RootCore, ParseType) {
    EXPECT_EQ(parse_type("E7").rank, 7);
    EXPECT_EQ(parse_type("B12").series, Series::B);
    for (const char* bad : {"", "B", "B1", "D3", "E9", "F5", "G3", "Q2", "B2x", "A0"}) EXPECT_THROW(parse_type(bad), UnsupportedType) << bad;
}

TEST(RootCore, CanonicalNames) {
    EXPECT_EQ(canonical_type_name({Series::D, 3}), "A3");
    EXPECT_EQ(canonical_type_name({Series::C, 2}), "B2");
    EXPECT_EQ(canonical_type_name({Series::B, 1}), "A1");
    EXPECT_EQ(canonical_type_name({Series::E, 8}), "E8");
}

TEST(RootCore, SubdiagramComponents) {
    auto e8 = build_root_datum({Series::E, 8});
    IVec rest;
    for (int i = 1; i < 8; ++i) rest.push_back(i);
    auto sub = subdiagram(e8, rest);
    ASSERT_EQ(sub.components.size(), 1u);
    EXPECT_EQ(sub.components[0].name(), "E7");
}

TEST(RootCore, ParabolicIntersection) {
    auto p = parabolic_intersection(ParabolicSubset{{0}}, ParabolicSubset{{2}});
    EXPECT_EQ(p.missing, (std::set<int>{0, 2}));
    EXPECT_EQ(set_label(p.missing), "{1,3}");
}
