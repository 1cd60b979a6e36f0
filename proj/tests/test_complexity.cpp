#include <gtest/gtest.h>

#include <chrono>

#include "staircase/complexity.hpp"
#include "staircase/language.hpp"

using namespace staircase;

namespace {

const ParamTable& demo() {
    static const ParamTable p = build_params({}, 6);
    return p;
}

ParamTable theorem2(std::size_t depth) {
    RecipeSpec spec;
    spec.kind = RecipeKind::theorem2;
    spec.epsilon = Rational(1);
    return build_params(spec, depth);
}

}  // namespace

TEST(Complexity, AnchorValues) {
    const std::vector<int> expected{2, 3, 5, 8, 11, 12};
    for (std::size_t q = 1; q <= expected.size(); ++q) EXPECT_EQ(complexity_closed_form(demo(), BigInt(q)), BigInt(expected[q - 1]));
    EXPECT_EQ(complexity_closed_form(demo(), BigInt(20)), BigInt(62));
    EXPECT_EQ(complexity_closed_form(demo(), BigInt(480)), BigInt(2706));
}

TEST(Complexity, IncrementExamples) {
    auto check = [](int l, int delta, IncrementTag tag) {
        Increment inc = increment(demo(), BigInt(l));
        EXPECT_EQ(inc.delta, BigInt(delta)) << l;
        EXPECT_EQ(inc.tag, tag) << l;
    };
    check(6, 2, IncrementTag::cf1);
    check(10, 4, IncrementTag::cf2);
    check(18, 3, IncrementTag::cf3_1);
    check(19, 2, IncrementTag::cf3_2);
}

TEST(Complexity, IncrementsSumToClosedForm) {
    BigInt p = 2;
    for (int l = 1; l < 480; ++l) {
        p += increment(demo(), BigInt(l)).delta;
        ASSERT_EQ(p, complexity_closed_form(demo(), BigInt(l + 1))) << l;
    }
}

TEST(Complexity, ClosedFormMatchesOracle) {
    auto oracle = complexity_profile_bruteforce(demo(), 200);
    auto closed = complexity_table_closed(demo(), 200);
    for (std::size_t i = 0; i < 200; ++i) EXPECT_EQ(oracle.entries[i].p, closed.entries[i].p) << i + 1;
}

TEST(Complexity, ClosedFormMatchesOracleOnTheorem2) {
    ParamTable p = theorem2(6);
    auto oracle = complexity_profile_bruteforce(p, 60);
    for (const auto& e : oracle.entries) EXPECT_EQ(complexity_closed_form(p, e.q), e.p) << e.q;
}

TEST(Complexity, RangesTileEachInterval) {
    for (std::size_t n = 1; n < demo().depth(); ++n) EXPECT_NO_THROW(check_tiling(demo(), n));
}

TEST(Complexity, GapRaisesRangeGapError) {
    RecipeSpec spec;
    spec.kind = RecipeKind::explicit_table;
    spec.explicit_r = {BigInt(2), BigInt(3)};
    spec.explicit_c = {BigInt(1), BigInt(4)};
    ParamTable p = build_params(spec, 2);
    EXPECT_THROW(check_tiling(p, 1), RangeGapError);
}

TEST(Complexity, ExceedsLinear) {
    auto t = complexity_table_closed(demo(), 480);
    for (const auto& e : t.entries) EXPECT_GT(e.p, e.q);
}

TEST(Complexity, BoundsAtStructuralPoints) {
    for (std::size_t n = 1; n < demo().depth(); ++n) {
        BoundReport b = bound_report(demo(), demo().m(n));
        ASSERT_TRUE(b.lower.has_value());
        EXPECT_GE(b.value, *b.lower);
        EXPECT_LE(b.value, b.upper_anchor);
        EXPECT_LE(b.upper_anchor, b.upper_linear);
    }
    BoundReport b = bound_report(demo(), BigInt(20));
    EXPECT_EQ(b.value, BigInt(62));
    EXPECT_EQ(*b.lower, BigInt(42));
}

TEST(Complexity, LowerBoundIdentityIsOffByR) {
    for (const auto& row : lowerbound_identity_report(demo())) {
        if (row.n < 2) continue;
        const BigInt r = row.r;
        EXPECT_EQ(row.stated_total, r * r - 4);
        EXPECT_EQ(row.stated_sum, r * r + r - 4);
        EXPECT_FALSE(row.stated_identity_holds);
        EXPECT_EQ(*row.tail_from_second, r * r - 4);
        EXPECT_EQ(*row.tail_from_first, r * r + r - 3);
        EXPECT_EQ(*row.cf1_total, r * (r + 1) / 2);
        EXPECT_TRUE(*row.bound_holds);
    }
}

TEST(Complexity, DeepQueryIsFast) {
    ParamTable p = theorem2(10);
    const auto t0 = std::chrono::steady_clock::now();
    BigInt v = complexity_closed_form(p, BigInt(1000000));
    const auto elapsed = std::chrono::steady_clock::now() - t0;
    EXPECT_EQ(v, BigInt(34496837));
    EXPECT_LT(elapsed, std::chrono::seconds(1));
    EXPECT_NO_THROW(bound_report(p, ipow(BigInt(10), 9)));
}

TEST(Complexity, NonunitC1NeedsPrefix) {
    RecipeSpec spec;
    spec.kind = RecipeKind::classic_staircase;
    spec.e = {BigInt(3)};
    ParamTable p = build_params(spec, 3);
    EXPECT_THROW(complexity_closed_form(p, BigInt(10)), UnsupportedError);
}

TEST(Complexity, ComplexityRatioAtElevations) {
    auto rows = theorem_ratio_scan(demo(), RatioTarget::T5);
    ASSERT_GE(rows.size(), 5u);
    EXPECT_EQ(rows[0].q, BigInt(5));
    EXPECT_EQ(rows[0].numerator, "11");
    EXPECT_EQ(rows[1].numerator, "62");
    EXPECT_EQ(rows[1].denominator, "20");
    EXPECT_EQ(rows[4].numerator, "21673");
    EXPECT_EQ(rows[4].denominator, "3196");
}

TEST(Complexity, LogRatioDecimal) {
    auto rows = theorem_ratio_scan(demo(), RatioTarget::T4);
    bool found = false;
    for (const auto& r : rows)
        if (r.q == 20) {
            found = true;
            EXPECT_EQ(r.decimal.substr(0, 6), "1.0348");
        }
    EXPECT_TRUE(found);
}
