#include "conicfans/symdata.hpp"

#include <gtest/gtest.h>

using namespace conicfans;

namespace {

std::vector<SimpleType> algebras() {
    std::vector<SimpleType> v;
    for (int r = 3; r <= 9; ++r) v.push_back({Series::B, r});
    for (int r = 4; r <= 9; ++r) v.push_back({Series::D, r});
    for (int r = 6; r <= 8; ++r) v.push_back({Series::E, r});
    v.push_back({Series::F, 4});
    v.push_back({Series::G, 2});
    return v;
}

int dual_coxeter(const SimpleType& t) {
    switch (t.series) {
        case Series::B: return 2 * t.rank - 1;
        case Series::D: return 2 * t.rank - 2;
        case Series::E: return t.rank == 6 ? 12 : t.rank == 7 ? 18 : 30;
        case Series::F: return 9;
        case Series::G: return 4;
        default: return 0;
    }
}

// dimension of a simple Lie algebra from its name, e.g. "D6" -> 66
int lie_dim(const std::string& name) {
    char s = name[0];
    int r = std::stoi(name.substr(1));
    switch (s) {
        case 'A': return r * (r + 2);
        case 'B':
        case 'C': return r * (2 * r + 1);
        case 'D': return r * (2 * r - 1);
        case 'E': return r == 6 ? 78 : r == 7 ? 133 : 248;
        case 'F': return 52;
        case 'G': return 14;
    }
    return -1;
}

}  // namespace

TEST(SymData, QuaternionicDimension) {
    // G / K for the quaternionic real form has dimension 4 (h^vee - 2)
    for (const auto& t : algebras()) {
        int dk = 0;
        for (const auto& c : fixed_subalgebra_type(build_root_datum(t))) dk += lie_dim(c);
        auto rd = build_root_datum(t);
        int dg = rd.rank + static_cast<int>(rd.roots.size());
        EXPECT_EQ(dg - dk, 4 * (dual_coxeter(t) - 2)) << t.name();
    }
}

TEST(SymData, SigmaIsAnInvolutionOnRoots) {
    for (const auto& t : algebras()) {
        auto rr = restricted_datum(t.series, t.rank);
        for (const auto& a : rr.g().roots) {
            Root s = sigma_of(rr.sigma_cols, a);
            EXPECT_TRUE(rr.g().is_root(s)) << t.name();
            EXPECT_EQ(sigma_of(rr.sigma_cols, s), a) << t.name();
        }
        for (int b : rr.satake.black) EXPECT_TRUE(is_zero(restrict_root(rr.sigma_cols, rr.g().simple(b)))) << t.name();
    }
}

TEST(SymData, RestrictedRank) {
    for (const auto& t : algebras()) {
        auto rr = restricted_datum(t.series, t.rank);
        int white = t.rank - static_cast<int>(rr.satake.black.size());
        EXPECT_EQ(rr.rank(), white - static_cast<int>(rr.satake.arrows.size())) << t.name();
        EXPECT_EQ(rr.rank(), t.series == Series::G ? 2 : t.series == Series::B && t.rank == 3 ? 3 : 4) << t.name();
    }
}

TEST(SymData, RestrictedRootsFormARootSystem) {
    for (const auto& t : algebras()) {
        auto rr = restricted_datum(t.series, t.rank);
        auto got = restricted_roots_in_lambda(rr);
        EXPECT_EQ(got.size(), rr.restricted.roots.size()) << t.name();
        for (const auto& v : got) EXPECT_TRUE(rr.restricted.is_root(v)) << t.name();
    }
}

TEST(SymData, GammaIsDualToSimpleRoots) {
    for (const auto& t : algebras()) {
        auto rr = restricted_datum(t.series, t.rank);
        const auto& c = rr.restricted.cartan;
        int m = rr.rank();
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                Q s = 0;
                for (int k = 0; k < m; ++k) s += rr.gamma[j][k] * c[i][k];
                EXPECT_EQ(s, i == j ? 1 : 0) << t.name();
            }
        EXPECT_EQ(closed_form_gamma(rr.restricted_type), rr.gamma) << t.name();
    }
}

TEST(SymData, ColorTypes) {
    for (const auto& t : algebras()) {
        auto rr = restricted_datum(t.series, t.rank);
        auto cols = color_table(rr);
        ASSERT_EQ(static_cast<int>(cols.size()), rr.rank()) << t.name();
        for (const auto& c : cols) {
            // spherical roots are sums of positive roots, of the form alpha - sigma(alpha)
            int h = 0;
            for (int x : c.spherical_root) {
                EXPECT_GE(x, 0);
                h += x;
            }
            if (c.type == "2a") EXPECT_EQ(h, 2);
            if (c.type != "b") EXPECT_EQ(c.a_coefficient, 1);
        }
    }
}

TEST(SymData, ParametricAnticanonicalCoefficients) {
    // last color of B_r and D_r, beyond the default rank cap
    for (int r = 5; r <= 14; ++r) EXPECT_EQ(color_table(restricted_datum(Series::B, r))[3].a_coefficient, 2 * r - 7) << r;
    for (int r = 6; r <= 14; ++r) EXPECT_EQ(color_table(restricted_datum(Series::D, r))[3].a_coefficient, 2 * (r - 4)) << r;
}

TEST(SymData, TwistedParabolicsAreOppositeConjugates) {
    auto rr = restricted_datum(Series::E, 6);
    auto tw = twisted_color_parabolics(rr);
    auto iota = duality_involution(rr.g());
    auto cols = color_table(rr);
    for (std::size_t i = 0; i < tw.size(); ++i) {
        std::set<int> want;
        for (int k : cols[i].simple_roots) want.insert(iota[k]);
        EXPECT_EQ(tw[i].missing, want);
    }
}

TEST(SymData, UnsupportedAlgebras) {
    EXPECT_THROW(satake_of(Series::A, 3), UnsupportedType);
    EXPECT_THROW(satake_of(Series::C, 3), UnsupportedType);
    EXPECT_THROW(satake_of(Series::B, 2), UnsupportedType);
}
