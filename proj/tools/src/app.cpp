#include "rising_cli/app.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <exception>

#include "CLI11.hpp"
#include "rising/errors.hpp"
#include "rising/experiment.hpp"
#include "rising/suites.hpp"

namespace rising::cli {

namespace {

std::uint64_t parse_seed(const std::string& text, const std::string& what) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError(what + ": expected an unsigned 64-bit integer, got \"" + text + "\"");
    }
    return v;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct RunArgs {
    std::string config;
    std::size_t jobs = 1;
    std::string output;
    std::optional<std::string> seed;
};

int do_run(const RunArgs& a, std::ostream& out, std::ostream& err, const std::optional<std::string>& env_seed) {
    ExperimentConfig config;
    std::string seed_source = "config";
    try {
        config = load_config(a.config);
        if (a.seed) {
            config.base_seed = parse_seed(*a.seed, "--seed");
            seed_source = "--seed";
        } else if (env_seed) {
            config.base_seed = parse_seed(*env_seed, "RB_SEED");
            seed_source = "RB_SEED";
        }
        if (!a.output.empty()) config.output = a.output;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    }

    ExperimentResult result;
    try {
        result = run_experiment(config, a.jobs);
        write_outputs(config.output, config, result, seed_source, utc_timestamp());
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    }

    for (std::size_t p = 0; p < config.policies.size(); ++p) {
        double sum = 0.0;
        for (const ReplicationResult& rep : result.replications) sum += rep.report.outcomes[p].regret;
        out << config.policies[p].name() << ": mean regret "
            << format_double(sum / static_cast<double>(result.replications.size())) << " over "
            << result.replications.size() << " replication(s)\n";
    }
    out << "wrote " << config.output << "/{" << kTraceFile << ',' << kReportFile << ',' << kManifestFile << "}\n";
    if (!result.ok()) {
        for (const std::string& v : result.violations) err << "invariant violation: " << v << '\n';
        return kInvariantViolation;
    }
    return kOk;
}

int do_verify(const std::string& suite, const std::optional<std::string>& seed_text, std::ostream& out,
              std::ostream& err) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
        err << "unknown suite \"" << suite << "\" (expected lemma1, theorem1, corollary1, theorem2, safety)\n";
        return kConfigError;
    }
    std::uint64_t seed = kDefaultSuiteSeed;
    try {
        if (seed_text) seed = parse_seed(*seed_text, "--seed");
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    const SuiteResult r = run_suite(suite, seed);
    out << r.name << ": " << r.passed() << "/" << r.total << " passed, " << r.failed << " failed, " << r.skipped
        << " skipped\n";
    out << "  " << r.summary << '\n';
    for (const std::string& f : r.failures) out << "  FAIL " << f << '\n';
    return r.ok() ? kOk : kInvariantViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& env_seed) {
    CLI::App app{"Rising bandit simulator: run seeded experiments and verification suites", "rising"};
    app.require_subcommand(1);

    RunArgs run_args;
    std::optional<std::string> run_seed;
    auto* run_cmd = app.add_subcommand("run", "Run the experiment described by a config file");
    run_cmd->add_option("config", run_args.config, "Experiment config file")->required();
    run_cmd->add_option("--jobs,-j", run_args.jobs, "Replications run in parallel")->check(CLI::PositiveNumber);
    run_cmd->add_option("--output,-o", run_args.output, "Output directory (overrides the config)");
    run_cmd->add_option("--seed", run_seed, "Base seed (overrides RB_SEED and the config)");

    std::string suite;
    std::optional<std::string> verify_seed;
    auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite: lemma1, theorem1, corollary1, theorem2, safety");
    verify_cmd->add_option("suite", suite, "Suite name")->required();
    verify_cmd->add_option("--seed", verify_seed, "Suite seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n' << "run with --help for usage\n";
        return kConfigError;
    }

    try {
        if (run_cmd->parsed()) {
            run_args.seed = run_seed;
            return do_run(run_args, out, err, env_seed);
        }
        return do_verify(suite, verify_seed, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInvariantViolation;
    }
}

}  // namespace rising::cli
