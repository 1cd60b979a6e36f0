#include <gtest/gtest.h>

#include <cstring>
#include <string>

#include "staircase/measure.hpp"

using namespace staircase;

namespace {

const ParamTable& demo() {
    static const ParamTable p = build_params({}, 6);
    return p;
}

std::uint64_t naive_occurrences(const std::string& s, const std::string& u) {
    std::uint64_t n = 0;
    for (std::size_t i = 0; i + u.size() <= s.size(); ++i) n += s.compare(i, u.size(), u) == 0;
    return n;
}

std::uint64_t naive_joint(const std::string& s, const std::string& u, const std::string& v, std::size_t t) {
    std::uint64_t n = 0;
    for (std::size_t i = 0; i + std::max(u.size(), t + v.size()) <= s.size(); ++i)
        n += s.compare(i, u.size(), u) == 0 && s.compare(i + t, v.size(), v) == 0;
    return n;
}

}  // namespace

TEST(Measure, CylinderCountsMatchScan) {
    MeasureContext ctx(demo(), 5);
    const std::string s = build_word(demo(), 5).to_string();
    for (const char* u : {"0", "1", "01", "0110", "111", "1111111", "0101"}) {
        CylinderStats st = ctx.cylinder(BitVec::from_string(u));
        EXPECT_EQ(st.count, naive_occurrences(s, u)) << u;
        EXPECT_EQ(st.freq, make_rational(st.count, st.windows));
    }
}

TEST(Measure, JointCountsMatchScan) {
    MeasureContext ctx(demo(), 5);
    const std::string s = build_word(demo(), 5).to_string();
    for (std::size_t t : {0u, 1u, 5u, 11u, 62u, 300u}) {
        for (auto [u, v] : {std::pair{"0", "0"}, std::pair{"01", "1"}, std::pair{"11", "0110"}}) {
            CorrelationRecord rec = ctx.correlation(BitVec::from_string(u), BitVec::from_string(v), t);
            EXPECT_EQ(rec.count_joint, naive_joint(s, u, v, t)) << u << ' ' << v << ' ' << t;
            EXPECT_EQ(rec.windows, s.size() - std::max(std::strlen(u), t + std::strlen(v)) + 1);
        }
    }
}

TEST(Measure, ZeroShiftSelfCorrelation) {
    CorrelationRecord rec = correlation(demo(), BitVec::from_string("0"), BitVec::from_string("0"), 0, 5);
    EXPECT_EQ(rec.defect, rec.freq_u * (1 - rec.freq_u));
}

TEST(Measure, ZeroDensityEqualsProductRatio) {
    auto rows = zero_density_vs_levels(demo(), 5);
    const std::vector<Rational> expected{1, make_rational(1, 2), make_rational(2, 7), make_rational(15, 74), make_rational(60, 371)};
    ASSERT_EQ(rows.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(rows[i].zero_density, expected[i]);
        EXPECT_EQ(rows[i].zero_density, rows[i].product_ratio);
        EXPECT_TRUE(rows[i].bound_holds);
    }
}

TEST(Measure, DefectsAtLevelSeven) {
    MeasureContext ctx(demo(), 7);
    const BitVec z = BitVec::from_string("0");
    EXPECT_EQ(to_decimal(ctx.correlation(z, z, 62).defect, 6).substr(0, 7), "0.02546");
    EXPECT_EQ(to_decimal(ctx.correlation(z, z, 384).defect, 6).substr(0, 7), "0.01894");
    EXPECT_EQ(to_decimal(ctx.correlation(z, z, 2706).defect, 6).substr(0, 7), "0.02035");
}

TEST(Measure, TimeSpecForms) {
    EXPECT_EQ(TimeSpec::parse("seq:1", 2, 5).expand(demo()), (std::vector<std::uint64_t>{11, 62, 384, 2706}));
    EXPECT_EQ(TimeSpec::parse("seq:2*(h+c)", 2, 2).expand(demo()), (std::vector<std::uint64_t>{22}));
    EXPECT_EQ(TimeSpec::parse("list:0,7,3").expand(demo()), (std::vector<std::uint64_t>{0, 7, 3}));
    EXPECT_EQ(TimeSpec::parse("dense:1..9:4").expand(demo()), (std::vector<std::uint64_t>{1, 5, 9}));
    EXPECT_THROW(TimeSpec::parse("every:3"), ValidationError);
}

TEST(Measure, ScanOrderAndThreads) {
    std::vector<std::pair<BitVec, BitVec>> pairs{{BitVec::from_string("0"), BitVec::from_string("0")},
                                                 {BitVec::from_string("1"), BitVec::from_string("01")}};
    const TimeSpec ts = TimeSpec::parse("dense:1..50");
    auto a = mixing_scan(demo(), pairs, ts, 6, 1);
    auto b = mixing_scan(demo(), pairs, ts, 6, 3);
    ASSERT_EQ(a.size(), 100u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].t, b[i].t);
        EXPECT_EQ(a[i].defect, b[i].defect);
    }
    EXPECT_TRUE(mixing_scan(demo(), {}, ts, 6).empty());
}

TEST(Measure, BudgetRespected) { EXPECT_THROW(MeasureContext(demo(), 7, 1000), ResourceError); }
