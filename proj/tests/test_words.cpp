#include <gtest/gtest.h>

#include <string>

#include "staircase/sequences.hpp"
#include "staircase/words.hpp"

using namespace staircase;

namespace {

// Plain string recursion used as an independent reference.
std::string naive_word(const ParamTable& p, std::size_t n) {
    std::string b = "0";
    for (std::size_t k = 1; k < n; ++k) {
        std::string next;
        const auto r = p.r(k).convert_to<std::size_t>();
        const auto c = p.c(k).convert_to<std::size_t>();
        for (std::size_t i = 0; i < r; ++i) next += b + std::string(c + i, '1');
        b = next + b;
    }
    return b;
}

}  // namespace

TEST(Words, FirstLevels) {
    ParamTable p = build_params({}, 4);
    EXPECT_EQ(build_word(p, 1).to_string(), "0");
    EXPECT_EQ(build_word(p, 2).to_string(), "010110");
    EXPECT_EQ(build_word(p, 3).zero_count(), 12u);
}

TEST(Words, MatchesNaiveRecursion) {
    ParamTable p = build_params({}, 5);
    for (std::size_t n = 1; n <= 5; ++n) {
        RleWord w = build_word(p, n);
        EXPECT_EQ(w.to_string(), naive_word(p, n)) << n;
        EXPECT_EQ(BigInt(w.length()), p.h(n));
    }
}

TEST(Words, RleRoundTrip) {
    RleWord w = RleWord::from_string("0011101");
    EXPECT_EQ(w.runs().size(), 4u);
    w.append_run(true, 3);
    EXPECT_EQ(w.runs().size(), 4u);
    EXPECT_EQ(w.to_string(), "0011101111");
    EXPECT_EQ(w.one_count(), 7u);
}

TEST(Words, WindowAndCursor) {
    ParamTable p = build_params({}, 5);
    RleWord w = build_word(p, 5);
    const std::string s = w.to_string();
    for (std::uint64_t start : {0ull, 17ull, 1000ull, 2200ull}) {
        EXPECT_EQ(window(w, start, 26).to_string(), s.substr(start, 26));
        EXPECT_EQ(w[start], s[start] == '1');
    }
    EXPECT_THROW(window(w, 0, 5000), RangeError);
}

TEST(Words, PrefixSuffixWithoutMaterializing) {
    ParamTable p = build_params({}, 6);
    const WordModel model = WordModel::elevated(p);
    const std::string s = build_word(p, 6).to_string();
    EXPECT_EQ(word_prefix(model, 6, 300).to_string(), s.substr(0, 300));
    EXPECT_EQ(word_suffix(model, 6, 300).to_string(), s.substr(s.size() - 300));
    // Level 7 is never built here; its prefix starts with B_6.
    EXPECT_EQ(word_prefix(model, 7, 300).to_string(), s.substr(0, 300));
}

TEST(Words, BudgetNamesTheLevel) {
    ParamTable p = build_params({}, 6);
    try {
        build_word(p, 7, 1000);
        FAIL();
    } catch (const ResourceError& e) {
        EXPECT_NE(std::string(e.what()).find("h[7]"), std::string::npos);
    }
}

TEST(Words, UnelevatedWordIsElevatedWordPlusOnes) {
    RecipeSpec spec;
    spec.kind = RecipeKind::classic_staircase;
    spec.e = {BigInt(0)};
    ParamTable p = build_params(spec, 5);
    const std::vector<BigInt> e(5, BigInt(0));
    std::string tail;
    for (std::size_t n = 1; n <= 5; ++n) {
        if (n > 1) tail += std::string(p.r(n - 1).convert_to<std::size_t>(), '1');
        EXPECT_EQ(build_word_tilde(e, p.r_values(), n).to_string(), naive_word(p, n) + tail) << n;
    }
}

TEST(Words, OneRunHistogram) {
    ParamTable p = build_params({}, 5);
    RleStatistics st = rle_statistics(p, 4);
    BigInt ones = 0, runs = 0;
    for (const auto& [len, count] : st.one_runs) {
        ones += len * count;
        runs += count;
    }
    EXPECT_EQ(ones, st.ones);
    EXPECT_EQ(runs + 1, st.zeros);
    EXPECT_EQ(st.length, p.h(4));
}
