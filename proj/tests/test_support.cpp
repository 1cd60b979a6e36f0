#include <gtest/gtest.h>

#include "staircase/bits.hpp"
#include "staircase/errors.hpp"
#include "staircase/growth.hpp"
#include "staircase/numeric.hpp"

using namespace staircase;

TEST(Numeric, ParsesRationalForms) {
    EXPECT_EQ(parse_rational("3/2"), make_rational(3, 2));
    EXPECT_EQ(parse_rational("0.25"), make_rational(1, 4));
    EXPECT_EQ(parse_rational("1e3"), Rational(1000));
    EXPECT_THROW(parse_rational("x"), ValidationError);
}

TEST(Numeric, IntegerRootsRoundUp) {
    EXPECT_EQ(iroot_ceil(BigInt(27), 3), BigInt(3));
    EXPECT_EQ(iroot_ceil(BigInt(28), 3), BigInt(4));
    EXPECT_EQ(ceil_div(BigInt(7), BigInt(2)), BigInt(4));
    EXPECT_EQ(floor_div(BigInt(-7), BigInt(2)), BigInt(-4));
    EXPECT_EQ(ipow(BigInt(10), 30).str(), "1000000000000000000000000000000");
}

TEST(Numeric, CertifiedCeilOfIrrational) {
    // ceil(2 * log2(3)) = ceil(3.1699...) = 4
    BigInt c = certified_ceil([] { return Real(2) * mp::log(Real(3)) / mp::log(Real(2)); });
    EXPECT_EQ(c, BigInt(4));
}

TEST(Bits, RoundTripAndRuns) {
    BitVec v = BitVec::from_string("0101100111");
    EXPECT_EQ(v.to_string(), "0101100111");
    EXPECT_EQ(v.count_zeros(), 4u);
    EXPECT_EQ(v.trailing_ones(), 3u);
    EXPECT_EQ(v.longest_ones_run(), 3u);
    EXPECT_EQ(v.slice(2, 4).to_string(), "0110");
    EXPECT_TRUE(v.ends_with(BitVec::from_string("0111")));
    EXPECT_TRUE(BitVec::ones(70).all_ones());
}

TEST(Bits, OrderingIsLexicographic) {
    EXPECT_LT(BitVec::from_string("0011"), BitVec::from_string("0100"));
    EXPECT_EQ(BitVec::from_string("1").hash(), BitVec::from_string("1").hash());
}

TEST(Growth, PowerThresholds) {
    // Least x with sum_{q>=x} q^-2 <= 1/t^3 (tail bound 1/(x-1)) and f(q)/q >= t.
    auto xs = compute_thresholds(GrowthFunction::power(2), 4);
    ASSERT_EQ(xs.size(), 4u);
    EXPECT_EQ(xs[0], BigInt(1));
    EXPECT_EQ(xs[1], BigInt(9));
    EXPECT_EQ(xs[2], BigInt(28));
    EXPECT_EQ(xs[3], BigInt(65));
}

TEST(Growth, CeilLogThresholds) {
    auto xs = compute_thresholds(GrowthFunction::parse("qceillog:3"), 3);
    EXPECT_EQ(xs[1], BigInt(9));
    EXPECT_EQ(xs[2], BigInt(41));
}

TEST(Growth, ClampLimitsFastGrowth) {
    auto f = GrowthFunction::power(3).clamped();
    EXPECT_EQ(f.ceil_ratio(BigInt(100), BigInt(1)), BigInt(1000));
    EXPECT_THROW(GrowthFunction::parse("pow:1"), ValidationError);
}

TEST(Growth, ThresholdsAreIncreasing) {
    for (const char* id : {"pow:3/2", "pow:2", "qlog:2"}) {
        auto xs = compute_thresholds(GrowthFunction::parse(id).clamped(), 3);
        for (std::size_t i = 1; i < xs.size(); ++i) EXPECT_LT(xs[i - 1], xs[i]) << id;
    }
}

TEST(Errors, ExitCodes) {
    EXPECT_EQ(ValidationError("x").code(), ExitCode::usage);
    EXPECT_EQ(ResourceError("x").code(), ExitCode::resource);
    EXPECT_EQ(RangeGapError("x").code(), ExitCode::theorem_violation);
    EXPECT_EQ(OracleInconclusive("x").code(), ExitCode::oracle_inconclusive);
}
