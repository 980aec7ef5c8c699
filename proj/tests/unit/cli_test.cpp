#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rising_cli/app.hpp"

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(const std::vector<std::string>& args, std::optional<std::string> env = std::nullopt) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = rising::cli::run(args, out, err, env);
    return {code, out.str(), err.str()};
}

std::filesystem::path write_config(const std::string& name, const std::string& body) {
    const auto p = std::filesystem::temp_directory_path() / ("rising_cli_" + name + ".conf");
    std::ofstream(p) << body;
    return p;
}

const char* kConfig = R"(horizon = 12
policies = rising_bandit
base_seed = 5

[arm]
type = noisy
curve = exponential
limit = 0.9
initial = 0.2
decay = 0.8
noise = 0.1

[arm]
type = curve
curve = power
limit = 0.8
scale = 0.5
exponent = 1
)";

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(Cli, RunWritesThreeFiles) {
    const auto cfg = write_config("ok", kConfig);
    const auto out = std::filesystem::temp_directory_path() / "rising_cli_out";
    std::filesystem::remove_all(out);
    const Outcome r = run_cli({"run", cfg.string(), "--output", out.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    for (const char* f : {"trace.csv", "report.json", "manifest.json"}) EXPECT_TRUE(std::filesystem::exists(out / f));
    std::filesystem::remove_all(out);
}

TEST(Cli, UnknownPolicyExitsOne) {
    std::string body = kConfig;
    body.replace(body.find("rising_bandit"), 13, "smacx");
    const Outcome r = run_cli({"run", write_config("bad", body).string(), "--output", "/tmp/rising_cli_unused"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("policies"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("smacx"), std::string::npos) << r.err;
}

TEST(Cli, MissingConfigExitsOne) { EXPECT_EQ(run_cli({"run", "/nonexistent/x.conf"}).code, 1); }

TEST(Cli, SeedPrecedence) {
    const auto cfg = write_config("seed", kConfig);
    const auto base = std::filesystem::temp_directory_path();
    const auto a = base / "rising_cli_seed_a";
    const auto b = base / "rising_cli_seed_b";
    const auto c = base / "rising_cli_seed_c";
    ASSERT_EQ(run_cli({"run", cfg.string(), "-o", a.string()}, "77").code, 0);
    ASSERT_EQ(run_cli({"run", cfg.string(), "-o", b.string(), "--seed", "77"}).code, 0);
    ASSERT_EQ(run_cli({"run", cfg.string(), "-o", c.string(), "--seed", "78"}, "77").code, 0);
    EXPECT_EQ(slurp(a / "trace.csv"), slurp(b / "trace.csv"));
    EXPECT_NE(slurp(a / "trace.csv"), slurp(c / "trace.csv"));
    EXPECT_NE(slurp(a / "manifest.json").find("\"seed_source\": \"RB_SEED\""), std::string::npos);
    EXPECT_NE(slurp(c / "manifest.json").find("\"seed_source\": \"--seed\""), std::string::npos);
    EXPECT_EQ(run_cli({"run", cfg.string(), "-o", a.string()}, "not-a-number").code, 1);
    for (const auto& d : {a, b, c}) std::filesystem::remove_all(d);
}

TEST(Cli, JobsFlagValidated) {
    const auto cfg = write_config("jobs", kConfig);
    EXPECT_EQ(run_cli({"run", cfg.string(), "--jobs", "0"}).code, 1);
}

TEST(Cli, VerifyKnownSuite) {
    const Outcome r = run_cli({"verify", "lemma1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("200/200"), std::string::npos) << r.out;
}

TEST(Cli, VerifyUnknownSuiteExitsOne) { EXPECT_EQ(run_cli({"verify", "bogus"}).code, 1); }

TEST(Cli, NoSubcommandExitsOne) { EXPECT_EQ(run_cli({}).code, 1); }

TEST(Cli, HelpExitsZero) {
    const Outcome r = run_cli({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("verify"), std::string::npos);
}
