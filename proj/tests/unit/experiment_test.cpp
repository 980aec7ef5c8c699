#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rising/experiment.hpp"

using namespace rising;

namespace {

const char* kBase = R"(# sample
horizon = 30
growth = smooth
smooth_c = 5
replications = 3
base_seed = 42
policies = rising_bandit, average, thompson
thompson.alpha = 2

[arm]
type = curve
curve = exponential
limit = 0.9
initial = 0.5
decay = 0.5

[arm]
type = noisy      # trailing comment
curve = power
limit = 0.95
scale = 0.5
exponent = 1
noise = 0.1

[arm]
type = hpo
objective = quadratic
dimension = 3
strategy = density
cost = 2
)";

std::string with(std::string text, const std::string& from, const std::string& to) {
    const auto pos = text.find(from);
    if (pos == std::string::npos) throw std::logic_error("fixture edit failed: " + from);
    return text.replace(pos, from.size(), to);
}

std::string error_of(const std::string& text) {
    try {
        parse_config(text, "cfg");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("rising_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(ConfigParse, Sample) {
    const ExperimentConfig c = parse_config(kBase);
    EXPECT_EQ(c.replications, 3u);
    EXPECT_EQ(c.base_seed, 42u);
    EXPECT_EQ(std::get<TrialsHorizon>(c.bandit.horizon).trials, 30u);
    EXPECT_EQ(c.bandit.growth.kind, GrowthMode::Kind::Smooth);
    EXPECT_EQ(c.bandit.growth.window, 5u);
    EXPECT_EQ(c.policy_names(), (std::vector<std::string>{"rising_bandit", "average", "thompson"}));
    EXPECT_EQ(std::get<ThompsonPolicy>(c.policies[2].kind()).prior_alpha, 2.0);
    ASSERT_EQ(c.instance.arms.size(), 3u);
    EXPECT_EQ(std::get<NoisyCurveArmSpec>(c.instance.arms[1]).noise_amplitude, 0.1);
    const auto& h = std::get<HpoArmSpec>(c.instance.arms[2]);
    EXPECT_EQ(h.dimension, 3u);
    EXPECT_EQ(h.strategy, SearchStrategy::DensityEstimator);
    EXPECT_EQ(h.mean_cost, 2.0);
    EXPECT_EQ(c.echo.front(), (std::pair<std::string, std::string>{"horizon", "30"}));
    EXPECT_EQ(c.echo.back(), (std::pair<std::string, std::string>{"arm.3.cost", "2"}));
}

TEST(ConfigParse, StaircaseAndTabulated) {
    const std::string text = with(kBase, "curve = exponential\nlimit = 0.9\ninitial = 0.5\ndecay = 0.5",
                                  "curve = staircase\nbase = exponential\nlimit = 0.9\ninitial = 0.5\ndecay = 0.5\n"
                                  "plateau = 4\njump = 0.5");
    const ExperimentConfig c = parse_config(with(text, "curve = power\nlimit = 0.95\nscale = 0.5\nexponent = 1",
                                                 "curve = tabulated\nvalues = 0.1, 0.5, 0.7"));
    EXPECT_DOUBLE_EQ(std::get<CurveArmSpec>(c.instance.arms[0]).curve.eval(5), 0.7);
    EXPECT_DOUBLE_EQ(std::get<NoisyCurveArmSpec>(c.instance.arms[1]).curve.eval(9), 0.7);
}

TEST(ConfigParse, BudgetMode) {
    const ExperimentConfig c = parse_config(with(kBase, "horizon = 30", "budget = 12.5"));
    EXPECT_EQ(std::get<BudgetHorizon>(c.bandit.horizon).budget, 12.5);
}

TEST(ConfigParse, UnknownPolicyNamesTheField) {
    const std::string msg = error_of(with(kBase, "average", "smacx"));
    EXPECT_NE(msg.find("policies"), std::string::npos) << msg;
    EXPECT_NE(msg.find("smacx"), std::string::npos) << msg;
    EXPECT_NE(msg.find("cfg:7"), std::string::npos) << msg;
}

TEST(ConfigParse, ErrorsNameFields) {
    EXPECT_NE(error_of(with(kBase, "replications = 3", "replications = 0")).find("replications"), std::string::npos);
    EXPECT_NE(error_of(with(kBase, "horizon = 30", "horizon = ten")).find("horizon"), std::string::npos);
    EXPECT_NE(error_of(with(kBase, "horizon = 30", "budget = 3\nhorizon = 30")).find("horizon"), std::string::npos);
    EXPECT_NE(error_of(with(kBase, "horizon = 30\n", "")).find("horizon"), std::string::npos);
    EXPECT_NE(error_of(with(kBase, "growth = smooth", "growth = fast")).find("growth"), std::string::npos);
    EXPECT_NE(error_of(with(kBase, "base_seed = 42", "base_seed = -1")).find("base_seed"), std::string::npos);
    EXPECT_NE(error_of(with(kBase, "base_seed = 42", "colour = red")).find("colour: unknown field"), std::string::npos);
    EXPECT_NE(error_of(with(kBase, "decay = 0.5", "decay = 1.5")).find("arm 1: curve"), std::string::npos);
    EXPECT_NE(error_of(with(kBase, "noise = 0.1", "noise = 2")).find("arm 2"), std::string::npos);
    EXPECT_NE(error_of(with(kBase, "dimension = 3", "dimension = 9")).find("arm 3"), std::string::npos);
    EXPECT_NE(error_of(with(kBase, "objective = quadratic", "objective = ackley")).find("arm 3: objective"),
              std::string::npos);
    EXPECT_NE(error_of(with(kBase, "decay = 0.5\n", "")).find("arm 1: decay: required"), std::string::npos);
    EXPECT_NE(error_of(with(kBase, "type = hpo", "type = oracle")).find("arm 3: type"), std::string::npos);
    EXPECT_NE(error_of(with(kBase, "[arm]\ntype = hpo", "[arms]\ntype = hpo")).find("unknown section"),
              std::string::npos);
    EXPECT_NE(error_of(with(kBase, "limit = 0.9", "limit = 0.9\nlimit = 0.8")).find("duplicate"), std::string::npos);
    EXPECT_NE(error_of(with(kBase, "average", "average, average")).find("twice"), std::string::npos);
    EXPECT_NE(error_of("horizon = 5\npolicies = average\n").find("[arm]"), std::string::npos);
}

TEST(Seeds, PolicyStreamsIndependentOfOtherPolicies) {
    EXPECT_EQ(policy_seed(1, "ucb", 2), policy_seed(1, "ucb", 2));
    EXPECT_NE(policy_seed(1, "ucb", 2), policy_seed(1, "softmax", 2));
    EXPECT_NE(policy_seed(1, "ucb", 2), policy_seed(1, "ucb", 3));
    EXPECT_NE(instance_seed(1, 1), instance_seed(2, 1));
}

TEST(Experiment, AddingAPolicyLeavesOthersUnchanged) {
    ExperimentConfig a = parse_config(with(kBase, "rising_bandit, average, thompson", "thompson"));
    ExperimentConfig b = parse_config(kBase);
    const ExperimentResult ra = run_experiment(a);
    const ExperimentResult rb = run_experiment(b);
    for (std::size_t r = 0; r < 3; ++r) {
        const PolicyTrace& x = ra.replications[r].traces[0];
        const PolicyTrace& y = rb.replications[r].traces[2];
        ASSERT_EQ(x.length(), y.length());
        for (std::size_t s = 0; s < x.length(); ++s) EXPECT_EQ(x.steps[s].arm, y.steps[s].arm);
    }
}

TEST(Experiment, JobsDoNotChangeOutput) {
    const ExperimentConfig c = parse_config(kBase);
    const ExperimentResult one = run_experiment(c, 1);
    const ExperimentResult four = run_experiment(c, 4);
    EXPECT_EQ(trace_csv(c, one), trace_csv(c, four));
    EXPECT_EQ(report_json(c, one), report_json(c, four));
}

TEST(Experiment, CsvSchema) {
    const ExperimentConfig c = parse_config(kBase);
    const ExperimentResult r = run_experiment(c);
    const std::string csv = trace_csv(c, r);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "step,policy,replication,arm,reward,cost,candidate_set_size,best_so_far");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7);
    }
    EXPECT_EQ(rows, 3u * 3u * 30u);  // replications * policies * T
}

TEST(Experiment, ReportJsonIsFiniteAndComplete) {
    const ExperimentConfig c = parse_config(kBase);
    const ExperimentResult r = run_experiment(c);
    EXPECT_TRUE(r.ok());
    const auto j = nlohmann::json::parse(report_json(c, r));
    EXPECT_EQ(j["schema_version"], 1);
    EXPECT_EQ(j["replications"].size(), 3u);
    EXPECT_EQ(j["summary"].size(), 3u);
    const auto& rep = j["replications"][0];
    for (const char* key : {"j_oracle", "gamma_t", "theorem1_bound", "corollary1_condition_holds",
                            "theorem2_condition_holds", "interpretation_notes", "outcomes"}) {
        EXPECT_TRUE(rep.contains(key)) << key;
    }
    EXPECT_TRUE(rep["theorem2_condition_holds"].is_boolean());
    std::function<void(const nlohmann::json&)> check = [&](const nlohmann::json& v) {
        if (v.is_number_float()) EXPECT_TRUE(std::isfinite(v.get<double>()));
        if (v.is_structured()) {
            for (const auto& x : v) check(x);
        }
    };
    check(j);
}

TEST(Experiment, WritesThreeFilesAndRerunsByteIdentical) {
    const ExperimentConfig c = parse_config(kBase);
    const auto d1 = scratch_dir("a");
    const auto d2 = scratch_dir("b");
    write_outputs(d1, c, run_experiment(c), "config", "2026-01-01T00:00:00Z");
    write_outputs(d2, c, run_experiment(c, 3), "config", "2026-01-02T00:00:00Z");
    for (const char* f : {kTraceFile, kReportFile, kManifestFile}) EXPECT_TRUE(std::filesystem::exists(d1 / f)) << f;
    EXPECT_EQ(slurp(d1 / kTraceFile), slurp(d2 / kTraceFile));
    EXPECT_EQ(slurp(d1 / kReportFile), slurp(d2 / kReportFile));
    auto m1 = nlohmann::json::parse(slurp(d1 / kManifestFile));
    auto m2 = nlohmann::json::parse(slurp(d2 / kManifestFile));
    EXPECT_NE(m1["timestamp"], m2["timestamp"]);
    m1.erase("timestamp");
    m2.erase("timestamp");
    EXPECT_EQ(m1, m2);
    EXPECT_EQ(m1["base_seed"], 42);
    EXPECT_EQ(m1["seeds"].size(), 3u);
    EXPECT_EQ(m1["config"]["policies"], "rising_bandit, average, thompson");
    std::filesystem::remove_all(d1);
    std::filesystem::remove_all(d2);
}

TEST(Experiment, DifferentSeedsDiffer) {
    ExperimentConfig a = parse_config(kBase);
    ExperimentConfig b = a;
    b.base_seed = 43;
    EXPECT_NE(trace_csv(a, run_experiment(a)), trace_csv(b, run_experiment(b)));
}

TEST(Format, ShortestRoundTrip) {
    EXPECT_EQ(format_double(0.875), "0.875");
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(std::stod(format_double(0.30000000000000004)), 0.30000000000000004);
}
