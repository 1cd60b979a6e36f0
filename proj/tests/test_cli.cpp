#include <gtest/gtest.h>

#include <sstream>

#include "staircase/cli.hpp"

using namespace staircase;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s, char lead) {
    std::size_t n = 0;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) n += !line.empty() && line[0] == lead;
    return n;
}

}  // namespace

TEST(Cli, BuildWritesParamsWithHeader) {
    Result r = run({"build", "--recipe", "demo", "--depth", "6"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["params"]["h"][6], "170209");
    EXPECT_EQ(j["header"]["seed"], 1);
    EXPECT_EQ(j["header"]["config_hash"].get<std::string>().size(), 16u);
}

TEST(Cli, BuildTheorem3) {
    Result r = run({"build", "--recipe", "theorem3", "--epsilon", "1", "--depth", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["params"]["h"][3], "226030");
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({"build", "--depth", "1"}).code, 2);
    EXPECT_EQ(run({"nonsense"}).code, 2);
    EXPECT_EQ(run({"build", "--recipe", "mystery"}).code, 2);
    EXPECT_EQ(run({"complexity"}).code, 2);
}

TEST(Cli, ComplexitySingleRow) {
    Result r = run({"complexity", "--q-max", "1"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\n1,2,"), std::string::npos);
    EXPECT_EQ(count_lines(r.out, '1'), 1u);
}

TEST(Cli, ComplexityBothAgrees) {
    Result r = run({"complexity", "--method", "both", "--q-max", "100"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("20,62,"), std::string::npos);
    EXPECT_EQ(r.out.find("closed-form"), std::string::npos);
}

TEST(Cli, LargeQMaxIsSampled) {
    Result r = run({"complexity", "--recipe", "theorem2", "--epsilon", "1", "--depth", "10", "--q-max", "10^7"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\n10000000,"), std::string::npos);
    EXPECT_EQ(r.out, run({"complexity", "--recipe", "theorem2", "--epsilon", "1", "--depth", "10", "--q-max", "1e7"}).out);
}

TEST(Cli, VerifyDemoPasses) {
    Result r = run({"verify", "--depth", "6"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("\nfail,"), std::string::npos);
}

TEST(Cli, VerifyReportsRangeGap) {
    Result r = run({"verify", "--recipe", "explicit", "--r", "2,3,4", "--c", "1,4,20", "--depth", "3"});
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.out.find("fail,\"increment ranges"), std::string::npos);
}

TEST(Cli, VerifyClassicIsomorphism) {
    Result r = run({"verify", "--recipe", "classic-staircase", "--e", "0", "--depth", "5"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("pass,\"un-elevated"), std::string::npos);
}

TEST(Cli, MixingRowsAndEmptyPairs) {
    Result r = run({"mixing", "--pairs", "0:0", "--times", "seq:1", "--n-range", "2..5", "--level", "7"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(count_lines(r.out, '0'), 4u);
    Result e = run({"mixing", "--pairs", ""});
    ASSERT_EQ(e.code, 0) << e.err;
    EXPECT_EQ(count_lines(e.out, '0'), 0u);
    EXPECT_NE(e.out.find("u,v,t,N"), std::string::npos);
}

TEST(Cli, ExportVariants) {
    Result w = run({"export", "--what", "word", "--n", "2"});
    ASSERT_EQ(w.code, 0) << w.err;
    EXPECT_NE(w.out.find("\n010110\n"), std::string::npos);
    Result rle = run({"export", "--what", "rle", "--n", "3"});
    ASSERT_EQ(rle.code, 0) << rle.err;
    EXPECT_EQ(nlohmann::json::parse(rle.out)["length"], "42");
    for (const char* what : {"params", "factors", "ratios", "density", "lowerbound", "slices"})
        EXPECT_EQ(run({"export", "--what", what, "--length", "5", "--n", "4"}).code, 0) << what;
    EXPECT_EQ(run({"export", "--what", "pictures"}).code, 2);
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
    const std::string path = ::testing::TempDir() + "staircase_cfg.json";
    {
        std::ofstream f(path);
        f << R"({"depth": 5, "recipe": "demo", "format": "csv"})";
    }
    Result from_file = run({"build", "--config", path});
    ASSERT_EQ(from_file.code, 0) << from_file.err;
    EXPECT_NE(from_file.out.find("h[6],18477"), std::string::npos);
    Result flag_wins = run({"build", "--config", path, "--depth", "4"});
    EXPECT_NE(flag_wins.out.find("h[5],2226"), std::string::npos);
    {
        std::ofstream f(path);
        f << R"({"colour": "blue"})";
    }
    EXPECT_EQ(run({"build", "--config", path}).code, 2);
}

TEST(Cli, DeterministicOutput) {
    const std::vector<std::string> args{"complexity", "--method", "both", "--q-max", "120", "--seed", "7"};
    Result a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("# seed: 7"), std::string::npos);
}

TEST(Cli, HashIgnoresOutputPath) {
    const std::string path = ::testing::TempDir() + "staircase_out.csv";
    run({"complexity", "--q-max", "5", "--out", path});
    std::ifstream in(path);
    std::stringstream file;
    file << in.rdbuf();
    EXPECT_EQ(file.str(), run({"complexity", "--q-max", "5"}).out);
}
