#include "conicfans/io.hpp"

#include <gtest/gtest.h>

using namespace conicfans;

namespace {

ChevalleyBasis basis(Series s, int r) { return ChevalleyBasis(build_root_datum(s, r)); }

QVec random_element(const ChevalleyBasis& cb, std::mt19937_64& rng, int terms) {
    QVec v = cb.zero();
    for (int t = 0; t < terms; ++t) v[rng() % cb.dim()] += Q(static_cast<long long>(rng() % 7) - 3, static_cast<long long>(rng() % 3) + 1);
    return v;
}

}  // namespace

TEST(Chevalley, KillingTraceOfCoroots) {
    // tr(ad h_i)^2 = 4 / (alpha_i, alpha_i) when ( , ) is dual to the Killing form
    for (auto [s, r] : std::vector<std::pair<Series, int>>{{Series::B, 4}, {Series::D, 5}, {Series::E, 8}, {Series::F, 4}, {Series::G, 2}}) {
        auto cb = basis(s, r);
        const auto& rd = cb.roots();
        for (int i = 0; i < r; ++i) {
            long long tr = 0;
            for (const auto& b : rd.roots) tr += static_cast<long long>(rd.pair_simple(b, i)) * rd.pair_simple(b, i);
            EXPECT_EQ(Q(tr), Q(4) / rd.form(rd.simple(i), rd.simple(i))) << rd.name() << " node " << i + 1;
        }
    }
}

TEST(Chevalley, JacobiExhaustiveSmallRank) {
    for (auto [s, r] : std::vector<std::pair<Series, int>>{{Series::G, 2}, {Series::B, 3}, {Series::A, 3}}) {
        auto cb = basis(s, r);
        for (int x = 0; x < cb.dim(); ++x)
            for (int y = x + 1; y < cb.dim(); ++y)
                for (int z = y + 1; z < cb.dim(); ++z) ASSERT_TRUE(cb.jacobi_basis(x, y, z)) << x << " " << y << " " << z;
    }
}

TEST(Chevalley, LargestStructureConstant) {
    auto maxn = [](const ChevalleyBasis& cb) {
        int m = 0;
        int n = static_cast<int>(cb.roots().roots.size());
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) m = std::max(m, std::abs(cb.N(a, b)));
        return m;
    };
    EXPECT_EQ(maxn(basis(Series::G, 2)), 3);
    EXPECT_EQ(maxn(basis(Series::F, 4)), 2);
    EXPECT_EQ(maxn(basis(Series::B, 4)), 2);
    EXPECT_EQ(maxn(basis(Series::E, 6)), 1);
}

TEST(Chevalley, RootVectorsExtremalIffLong) {
    for (auto [s, r] : std::vector<std::pair<Series, int>>{{Series::B, 3}, {Series::G, 2}, {Series::F, 4}}) {
        auto cb = basis(s, r);
        for (const auto& a : cb.roots().positive_roots) EXPECT_EQ(is_extremal(cb, cb.e(a)), cb.roots().is_long(a)) << cb.roots().name();
    }
    auto cb = basis(Series::G, 2);
    EXPECT_FALSE(is_extremal(cb, cb.zero()));
    EXPECT_FALSE(is_extremal(cb, cb.basis_vector(0)));
}

TEST(Chevalley, WeylAutomorphismPreservesBracket) {
    std::mt19937_64 rng(5);
    for (auto [s, r] : std::vector<std::pair<Series, int>>{{Series::G, 2}, {Series::B, 3}, {Series::D, 4}}) {
        auto cb = basis(s, r);
        for (int k = 0; k < 10; ++k) {
            QVec x = random_element(cb, rng, 3), y = random_element(cb, rng, 3);
            int i = static_cast<int>(rng() % r);
            EXPECT_EQ(weyl_automorphism(cb, i, cb.bracket(x, y)), cb.bracket(weyl_automorphism(cb, i, x), weyl_automorphism(cb, i, y)));
        }
    }
}

TEST(Chevalley, TwistorConic) {
    for (auto [s, r] : std::vector<std::pair<Series, int>>{{Series::B, 4}, {Series::E, 6}, {Series::G, 2}}) {
        auto cb = basis(s, r);
        for (int t : {-3, -1, 2, 5}) EXPECT_TRUE(is_extremal(cb, twistor_conic_sample(cb, Q(t))));
        EXPECT_TRUE(is_extremal(cb, twistor_conic_sample(cb, Q(1, 3))));
    }
}

TEST(Chevalley, ContactCubic) {
    for (auto [s, r] : std::vector<std::pair<Series, int>>{{Series::B, 3}, {Series::B, 5}, {Series::D, 4}, {Series::F, 4}, {Series::G, 2}, {Series::E, 7}}) {
        auto cb = basis(s, r);
        const auto& rd = cb.roots();
        int j0 = contact_node(rd);
        Root a = rd.simple(j0);
        for (auto& x : a) x = -x;
        EXPECT_TRUE(is_zero(contact_cubic(cb, cb.e(a))));
        auto rep = contact_cubic_check(cb, 5, 11);
        EXPECT_TRUE(rep.nonzero_witness) << rd.name();
        EXPECT_THROW(contact_cubic(cb, cb.basis_vector(0)), std::invalid_argument);
    }
}

TEST(Chevalley, QuadraticWitnessB3NotG2) {
    auto b3 = basis(Series::B, 3);
    auto w = find_quadratic_witness(b3);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(is_zero(contact_cubic(b3, *w)));
    EXPECT_FALSE(is_zero(contact_quadratic(b3, *w)));
    EXPECT_FALSE(find_quadratic_witness(basis(Series::G, 2)).has_value());
}

TEST(Chevalley, ContactCheckIsDeterministic) {
    auto cb = basis(Series::G, 2);
    auto a = contact_cubic_check(cb, 200, 7), b = contact_cubic_check(cb, 200, 7);
    EXPECT_EQ(a.samples, b.samples);
    EXPECT_EQ(a.implication_violations, 0);
    EXPECT_EQ(a.pair_violations, 0);
    EXPECT_EQ(a.witnesses, b.witnesses);
}

TEST(Chevalley, ConstantsCsv) {
    auto cb = basis(Series::G, 2);
    const auto& rd = cb.roots();
    std::size_t pairs = 0;
    for (const auto& a : rd.roots)
        for (const auto& b : rd.roots) {
            Root s(rd.rank);
            for (int k = 0; k < rd.rank; ++k) s[k] = a[k] + b[k];
            pairs += rd.is_root(s);
        }
    auto csv = constants_csv(cb);
    EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), pairs + 1);
    EXPECT_EQ(csv.substr(0, 12), "alpha,beta,N");
}
