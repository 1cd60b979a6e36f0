#include <gtest/gtest.h>

#include <set>
#include <string>
#include <unordered_set>

#include "staircase/language.hpp"

using namespace staircase;

namespace {

const ParamTable& demo() {
    static const ParamTable p = build_params({}, 6);
    return p;
}

// Distinct substrings of length l of a plain string.
std::size_t naive_count(const std::string& s, std::size_t l) {
    std::unordered_set<std::string_view> seen;
    std::string_view v(s);
    for (std::size_t i = 0; i + l <= s.size(); ++i) seen.insert(v.substr(i, l));
    return seen.size();
}

}  // namespace

TEST(Language, OracleAnchorValues) {
    LanguageOracle oracle(demo());
    const std::vector<std::size_t> expected{2, 3, 5, 8, 11, 12};
    for (std::size_t l = 1; l <= expected.size(); ++l) EXPECT_EQ(oracle.complexity(l), expected[l - 1]) << l;
    EXPECT_EQ(oracle.complexity(20), 62u);
    EXPECT_EQ(oracle.complexity(480), 2706u);
}

TEST(Language, EngineAgreesWithPlainScan) {
    const std::string b7 = build_word(demo(), 7).to_string();
    LanguageOracle oracle(demo());
    for (std::size_t l : {1u, 2u, 7u, 19u, 20u, 21u, 45u, 88u, 89u, 130u}) EXPECT_EQ(oracle.complexity(l), naive_count(b7, l)) << l;
}

TEST(Language, ScanRouteAgreesWithEngine) {
    RleWord w = build_word(demo(), 6);
    for (std::size_t l : {3u, 30u, 60u}) {
        FactorEngine engine(WordModel::elevated(demo()), l);
        engine.advance_to(6);
        EXPECT_EQ(engine.factors(), scan_factors(w, l)) << l;
    }
}

TEST(Language, SaturationReportsLevels) {
    LanguageOracle oracle(demo());
    auto s = oracle.saturated(20);
    EXPECT_TRUE(s.stabilized);
    EXPECT_GT(s.compare_level, 0u);
    EXPECT_TRUE(std::is_sorted(s.factors.begin(), s.factors.end()));
}

TEST(Language, ShallowTableIsInconclusive) {
    ParamTable shallow = build_params({}, 2);
    LanguageOracle oracle(shallow);
    EXPECT_THROW(oracle.saturated(200), OracleInconclusive);
}

TEST(Language, LengthCapEnforced) {
    LanguageOracle oracle(demo(), {64, 1});
    EXPECT_THROW(oracle.saturated(65), RangeError);
}

TEST(Language, RightSpecialCountsRebuildComplexity) {
    auto r = cassaigne_check(demo(), 1, 40);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.p_m, 2u);
}

TEST(Language, RightSpecialFormsAreExclusive) {
    for (std::size_t l : {3u, 5u, 19u, 20u, 50u, 150u, 200u}) {
        LanguageSlice s = enumerate(demo(), l);
        ASSERT_FALSE(s.right_special.empty());
        for (const auto& c : classify_right_special(demo(), s)) {
            if (l >= 5) {
                EXPECT_NE(c.form, RsForm::unclassified) << c.word.to_string();
            }
            if (c.form != RsForm::unclassified) {
                EXPECT_EQ(c.matches, 1u);
            }
        }
    }
}

TEST(Language, AllOnesWordIsRightSpecial) {
    LanguageSlice s = enumerate(demo(), 7);
    const BitVec ones = BitVec::ones(7);
    EXPECT_TRUE(std::binary_search(s.right_special.begin(), s.right_special.end(), ones));
}

TEST(Language, ParallelProfileMatchesSerial) {
    auto serial = complexity_profile_bruteforce(demo(), 60, {kDefaultWindowCap, 1});
    auto threaded = complexity_profile_bruteforce(demo(), 60, {kDefaultWindowCap, 4});
    ASSERT_EQ(serial.entries.size(), threaded.entries.size());
    for (std::size_t i = 0; i < serial.entries.size(); ++i) EXPECT_EQ(serial.entries[i].p, threaded.entries[i].p);
}
