#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fmoe/cli.hpp"
#include "fmoe/harness.hpp"

namespace fmoe {
namespace {

namespace fs = std::filesystem;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "fmoe-bench");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               (std::string("fmoe_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string file(const std::string& name) const { return (dir_ / name).string(); }

    void write(const std::string& name, const std::string& text) const {
        std::ofstream f(dir_ / name, std::ios::binary);
        f << text;
    }

    fs::path dir_;
};

TEST_F(Cli, ConstantsPrintsBlockCount) {
    const auto r = run({"constants", "--alpha", "0.3888888889", "--p", "0.1", "--delta", "0.05"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("k=11\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("psi=0.2915882625"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("c_alpha=1.2963624"), std::string::npos) << r.out;

    const auto cov = run({"constants", "--alpha", "0.4"});
    EXPECT_EQ(cov.code, 0);
    EXPECT_NE(cov.out.find("k=10\n"), std::string::npos) << cov.out;
}

TEST_F(Cli, ConstantsRejectsBadDomain) {
    const auto r = run({"constants", "--alpha", "0.6"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("alpha"), std::string::npos);
}

TEST_F(Cli, UnknownFlagIsUsageError) {
    const auto r = run({"run", "--bogus", "3"});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(r.err.empty());
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
}

TEST_F(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST_F(Cli, TooManyBlocksNamesBothValues) {
    const auto r = run({"run", "--experiment", "spider5", "--n", "20", "--k", "30", "--out", file("x.csv"), "--quiet"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("30"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("20"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(file("x.csv")));
}

TEST_F(Cli, UnwritableOutputIsIoError) {
    const auto r =
        run({"run", "--experiment", "spider5", "--sims", "2", "--out", "/nonexistent_fmoe_dir/x.csv", "--quiet"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("/nonexistent_fmoe_dir/x.csv"), std::string::npos) << r.err;
}

TEST_F(Cli, MissingConfigIsIoError) {
    EXPECT_EQ(run({"run", "--config", file("absent.json"), "--quiet"}).code, 2);
}

TEST_F(Cli, RunIsDeterministic) {
    const std::vector<std::string> base{"run", "--experiment", "spider5", "--sims", "10", "--seed", "42", "--quiet"};
    auto a = base, b = base;
    a.insert(a.end(), {"--out", file("a.csv")});
    b.insert(b.end(), {"--out", file("b.csv")});
    ASSERT_EQ(run(a).code, 0);
    ASSERT_EQ(run(b).code, 0);
    EXPECT_EQ(slurp(file("a.csv")), slurp(file("b.csv")));
    EXPECT_EQ(slurp(file("a.csv.summary")), slurp(file("b.csv.summary")));
    EXPECT_FALSE(slurp(file("a.csv")).empty());
}

TEST_F(Cli, ThreadCountDoesNotChangeBytes) {
    for (const char* exp : {"spider5", "poincare"}) {
        const std::vector<std::string> base{"run", "--experiment", exp, "--sims", "16", "--seed", "9", "--quiet"};
        auto a = base, b = base;
        a.insert(a.end(), {"--threads", "1", "--out", file("t1.csv")});
        b.insert(b.end(), {"--threads", "4", "--out", file("t4.csv")});
        ASSERT_EQ(run(a).code, 0);
        ASSERT_EQ(run(b).code, 0);
        EXPECT_EQ(slurp(file("t1.csv")), slurp(file("t4.csv"))) << exp;
        EXPECT_EQ(slurp(file("t1.csv.summary")), slurp(file("t4.csv.summary"))) << exp;
    }
}

TEST_F(Cli, JsonConfigWithFlagOverride) {
    write("c.json", R"({"schema": 1, "experiment": "spider5", "n": 60, "k": 6, "sims": 3,
                        "alpha_outlier": 0.2, "master_seed": 5, "output_path": ")" +
                        file("from_json.csv") + R"("})");
    const auto r = run({"run", "--config", file("c.json"), "--k", "4", "--quiet"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("n=60 k=4"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("alpha=0.2"), std::string::npos) << r.out;
    const auto summary = harness::read_summary_csv(file("from_json.csv.summary"));
    ASSERT_EQ(summary.size(), 1u);
    EXPECT_EQ(summary[0].k, 4);
    EXPECT_EQ(summary[0].sims, 3);
}

TEST_F(Cli, JsonConfigRejectsUnknownKeysAndSchema) {
    write("unknown.json", R"({"schema": 1, "experiment": "spider5", "blocks": 3})");
    const auto r = run({"run", "--config", file("unknown.json"), "--quiet"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("blocks"), std::string::npos) << r.err;

    write("noschema.json", R"({"experiment": "spider5"})");
    EXPECT_EQ(run({"run", "--config", file("noschema.json"), "--quiet"}).code, 1);

    write("schema2.json", R"({"schema": 2})");
    EXPECT_EQ(run({"run", "--config", file("schema2.json"), "--quiet"}).code, 1);

    write("broken.json", R"({"schema": 1,)");
    EXPECT_EQ(run({"run", "--config", file("broken.json"), "--quiet"}).code, 1);

    write("solver.json", R"({"schema": 1, "solver": {"iterations": 3}})");
    EXPECT_EQ(run({"run", "--config", file("solver.json"), "--quiet"}).code, 1);
}

TEST_F(Cli, SweepWritesOneRowPerCampaign) {
    const auto r = run({"sweep", "--experiment", "spider5", "--k-list", "1,5,10", "--alpha-list", "0,0.5", "--sims",
                        "3", "--seed", "1", "--out", file("sweep.csv"), "--quiet"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto text = slurp(file("sweep.csv"));
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 7);
    EXPECT_EQ(text.substr(0, 6), "param,");
}

TEST_F(Cli, SweepRejectsAlphaListForCovariance) {
    const auto r = run({"sweep", "--experiment", "cov_ai", "--alpha-list", "0.1", "--out", file("s.csv"), "--quiet"});
    EXPECT_EQ(r.code, 1);
}

}  // namespace
}  // namespace fmoe
