#include "conicfans/verify.hpp"

#include <gtest/gtest.h>

using namespace conicfans;

TEST(Golden, Expressions) {
    EXPECT_EQ(eval_expr("2r-7", 5), 3);
    EXPECT_EQ(eval_expr("2(r-4)", 6), 4);
    EXPECT_EQ(eval_expr("r", 9), 9);
    EXPECT_EQ(eval_expr(" 2 r - 3 ", 4), 5);
    EXPECT_EQ(eval_expr("2*r+1", 3), 7);
    for (const char* bad : {"", "2r+", "(r", "r)", "x", "2r-7q"}) EXPECT_THROW(eval_expr(bad, 4), std::invalid_argument) << bad;
}

TEST(Golden, IndexRanges) {
    EXPECT_EQ(expand_indices(json("4..r-2"), 7), (std::vector<long long>{4, 5}));
    EXPECT_EQ(expand_indices(json("5..r"), 4), (std::vector<long long>{}));
    EXPECT_EQ(expand_indices(json(3), 9), (std::vector<long long>{3}));
    EXPECT_EQ(expand_index_set(json::array({1, "3..4"}), 9), (std::set<int>{1, 3, 4}));
    EXPECT_THROW(eval_value(json(true), 3), std::invalid_argument);
}

TEST(Golden, TypeStrings) {
    EXPECT_EQ(canonical_type_string("B{r-2}", 3), "A1");
    EXPECT_EQ(canonical_type_string("D{r-2}", 5), "A3");
    EXPECT_EQ(canonical_type_string("D{r-2}", 8), "D6");
    EXPECT_EQ(canonical_type_string("C3", 0), "C3");
    EXPECT_THROW(canonical_type_string("X3", 0), std::invalid_argument);
}

TEST(Golden, RowSelection) {
    json rows = json::parse(R"([{"series":"B","min":4,"max":null},{"series":"B","min":3,"max":3},{"series":"E","min":6,"max":6}])");
    EXPECT_EQ(select_row(rows, {Series::B, 9}).at("min"), 4);
    EXPECT_EQ(select_row(rows, {Series::B, 3}).at("min"), 3);
    EXPECT_THROW(select_row(rows, {Series::E, 7}), StructureError);
    rows.push_back(json::parse(R"({"series":"B","min":5,"max":6})"));
    EXPECT_THROW(select_row(rows, {Series::B, 5}), StructureError);
}

TEST(Golden, FixturesAreCanonical) {
    auto gb = load_golden();
    for (const auto& f : golden_files()) EXPECT_EQ(gb.raw.at(f), canonical_dump(gb[f])) << f;
}

TEST(Golden, FixtureConeValidation) {
    auto sp = luna_vust_space(restricted_datum(Series::G, 2));
    EXPECT_THROW(fixture_cone(sp, json::array({"l2"}), json::array({3})), std::out_of_range);
    EXPECT_THROW(fixture_cone(sp, json::array({"l2"}), json::array({2, 2})), StructureError);
    EXPECT_EQ(fixture_cone(sp, json::array({"-g2", "l2"}), json::array({2})).colors, (std::set<int>{1}));
}

TEST(Golden, LabeledIsomorphism) {
    using E = std::set<std::pair<int, int>>;
    std::vector<std::string> l{"a", "b", "b"};
    EXPECT_TRUE(detail::labeled_isomorphic(l, E{{0, 1}, {0, 2}}, {"b", "a", "b"}, E{{1, 0}, {1, 2}}));
    EXPECT_FALSE(detail::labeled_isomorphic(l, E{{0, 1}, {0, 2}}, {"b", "a", "b"}, E{{0, 1}, {1, 2}}));
    EXPECT_FALSE(detail::labeled_isomorphic(l, E{{0, 1}}, {"a", "b", "c"}, E{{0, 1}}));
}

TEST(Golden, PerturbedGammaFailsDuality) {
    VerifyOptions o;
    o.max_rank = 4;
    o.modules = {"symdata"};
    auto gb = load_golden();
    auto all = compute_all(o);
    auto ok = compare_all(all, gb, o);
    EXPECT_TRUE(std::all_of(ok.begin(), ok.end(), [](const Check& c) { return c.pass; }));
    gb.files["gamma31.json"]["B4"][0][3] = "1/3";
    auto bad = compare_all(all, gb, o);
    bool named = false;
    for (const auto& c : bad)
        if (!c.pass && c.name.find("gamma_duality[B4]") != std::string::npos) named = true;
    EXPECT_TRUE(named);
}

TEST(Golden, ReportIsDeterministic) {
    VerifyOptions o;
    o.max_rank = 4;
    o.modules = {"chevalley"};
    o.seed = 7;
    o.jacobi_samples = 1000;
    auto gb = load_golden();
    EXPECT_EQ(report_json(run_verify(o, gb)).dump(), report_json(run_verify(o, gb)).dump());
}
