#include <gtest/gtest.h>

#include "staircase/sequences.hpp"

using namespace staircase;

namespace {

std::vector<std::string> strs(const std::vector<BigInt>& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

using S = std::vector<std::string>;

}  // namespace

TEST(Sequences, DemoTableDepth6) {
    ParamTable p = build_params({}, 6);
    EXPECT_EQ(strs(p.r_values()), (S{"2", "3", "4", "5", "6", "7"}));
    EXPECT_EQ(strs(p.c_values()), (S{"1", "5", "20", "88", "480", "3196"}));
    EXPECT_EQ(strs(p.h_values()), (S{"1", "6", "42", "296", "2226", "18477", "170209"}));
    EXPECT_EQ(p.m(1), BigInt(5));
    EXPECT_TRUE(p.flags().all_elevation_ok());
}

TEST(Sequences, HeightRecursionHolds) {
    ParamTable p = build_params({}, 8);
    for (std::size_t n = 1; n <= p.depth(); ++n) {
        const BigInt r = p.r(n), c = p.c(n), h = p.h(n);
        EXPECT_EQ(p.h(n + 1), (r + 1) * h + r * c + r * (r - 1) / 2);
        EXPECT_EQ(p.m(n), h + 2 * c + 2 * r - 2);
        if (n < p.depth()) {
            EXPECT_EQ(p.c(n + 1), p.m(n));
        }
    }
}

TEST(Sequences, Theorem2CutsAndElevation) {
    RecipeSpec spec;
    spec.kind = RecipeKind::theorem2;
    spec.epsilon = Rational(1);
    ParamTable p = build_params(spec, 8);
    EXPECT_EQ(strs(p.r_values()), (S{"0", "3", "7", "12", "19", "26", "34", "43"}));
    EXPECT_EQ(strs(p.c_values()), (S{"1", "1", "7", "36", "244", "2972", "59761", "1648894"}));
    EXPECT_FALSE(p.flags().cuts_positive[0]);
    EXPECT_TRUE(p.flags().cuts_positive[1]);
}

TEST(Sequences, Theorem3ExactElevation) {
    RecipeSpec spec;
    spec.kind = RecipeKind::theorem3;
    spec.epsilon = Rational(1);
    ParamTable p = build_params(spec, 4);
    EXPECT_EQ(strs(p.c_values()), (S{"1", "1", "19", "14127"}));
    EXPECT_EQ(strs(p.r_values()), (S{"1", "15", "511", "65535"}));  // 2^{n^2} - 1
    EXPECT_EQ(p.r(4), ipow(BigInt(2), 16) - 1);
}

TEST(Sequences, Theorem3BuildsToDepth6) {
    RecipeSpec spec;
    spec.kind = RecipeKind::theorem3;
    spec.epsilon = Rational(1);
    ParamTable p = build_params(spec, 6);
    // prod (r_j + 1) = 2^{1+4+9+16+25+36} = 2^91 bounds h_7 from below.
    EXPECT_GE(bit_length(p.h(7)), 92u);
    for (const auto& row : hr_bounds_check(p)) EXPECT_TRUE(row.holds) << row.n;
}

TEST(Sequences, Theorem1FromPowerGrowth) {
    RecipeSpec spec;
    spec.kind = RecipeKind::theorem1;
    spec.f = GrowthFunction::parse("pow:3/2");
    ParamTable p = build_params(spec, 5);
    EXPECT_EQ(strs(p.r_values()), (S{"2", "3", "6", "13", "30"}));
}

TEST(Sequences, ClassicStaircaseRepeatsLastSpacer) {
    RecipeSpec spec;
    spec.kind = RecipeKind::classic_staircase;
    spec.e = {BigInt(0)};
    ParamTable p = build_params(spec, 4);
    EXPECT_EQ(strs(p.c_values()), (S{"0", "2", "5", "9"}));
    EXPECT_FALSE(p.flags().c1_ok);
}

TEST(Sequences, ExplicitTableValidation) {
    RecipeSpec spec;
    spec.kind = RecipeKind::explicit_table;
    spec.explicit_r = {BigInt(2), BigInt(3)};
    spec.explicit_c = {BigInt(1), BigInt(4)};
    ParamTable p = build_params(spec, 2);
    EXPECT_FALSE(p.elevation_ok(1));
    spec.explicit_c = {BigInt(1)};
    EXPECT_THROW(build_params(spec, 2), ValidationError);
}

TEST(Sequences, DepthOneRejected) { EXPECT_THROW(build_params({}, 1), ValidationError); }

TEST(Sequences, ProductBoundOnDemo) {
    ParamTable p = build_params({}, 6);
    for (const auto& row : hr_bounds_check(p)) {
        EXPECT_TRUE(row.holds);
        EXPECT_LE(row.product, row.height);
    }
}

TEST(Sequences, FiniteMeasureSumsNondecreasing) {
    ParamTable p = build_params({}, 10);
    auto fm = finite_measure_partial_sums(p);
    ASSERT_EQ(fm.spacer_mass.size(), 10u);
    for (std::size_t i = 1; i < 10; ++i) {
        EXPECT_GE(fm.spacer_mass[i], fm.spacer_mass[i - 1]);
        EXPECT_GE(fm.growth_mass[i], fm.growth_mass[i - 1]);
    }
    // First term: (r c + r(r-1)/2) / (r h) = (2 + 1) / 2
    EXPECT_EQ(fm.spacer_mass[0], make_rational(3, 2));
}

TEST(Sequences, GoverningIndex) {
    ParamTable p = build_params({}, 6);
    EXPECT_EQ(*p.governing_index(BigInt(1)), 1u);
    EXPECT_EQ(*p.governing_index(BigInt(19)), 2u);
    EXPECT_EQ(*p.governing_index(BigInt(20)), 3u);
    EXPECT_FALSE(p.governing_index(BigInt(0)).has_value());
}

TEST(Sequences, JsonUsesDecimalStrings) {
    auto j = to_json(build_params({}, 3));
    EXPECT_EQ(j["h"][3], "296");
}
