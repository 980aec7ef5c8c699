#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rising/bandit.hpp"
#include "rising/curves.hpp"
#include "rising/harness.hpp"
#include "rising/policies.hpp"
#include "rising/trace.hpp"

namespace rising {

// Parsed experiment file. See docs/config-format.md for the grammar.
struct ExperimentConfig {
    InstanceSpec instance;
    std::vector<Policy> policies;
    BanditConfig bandit;
    std::size_t replications = 1;
    std::uint64_t base_seed = 0;
    std::string output = "results";
    // Normalized key/value pairs in file order, arm keys prefixed "arm.N.".
    std::vector<std::pair<std::string, std::string>> echo;

    [[nodiscard]] std::vector<std::string> policy_names() const;
};

// Throws ConfigError; messages start with "<source>:<line>: <field>:" when a
// line is at fault and "<field>:" otherwise.
ExperimentConfig parse_config(std::string_view text, std::string_view source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

// Seed scheme. Every replication builds one instance shared by all policies
// (common random numbers); arm k of replication r draws from
// arm_seed(instance_seed(base, r), k - 1). Policy streams are keyed by name.
std::uint64_t instance_seed(std::uint64_t base_seed, std::size_t replication);
std::uint64_t policy_seed(std::uint64_t base_seed, std::string_view policy_name, std::size_t replication);

struct ReplicationResult {
    std::size_t replication = 0;  // 1-based
    std::uint64_t instance_seed = 0;
    std::vector<PolicyTrace> traces;  // config policy order
    RegretReport report;
};

struct ExperimentResult {
    std::vector<ReplicationResult> replications;  // ascending replication
    std::vector<std::string> violations;          // invariant failures found while checking

    [[nodiscard]] bool ok() const { return violations.empty(); }
};

// Runs every replication (up to `jobs` at once) and checks trace and report
// invariants. Output does not depend on `jobs`.
ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t jobs = 1);

// step,policy,replication,arm,reward,cost,candidate_set_size,best_so_far
std::string trace_csv(const ExperimentConfig& config, const ExperimentResult& result);
std::string report_json(const ExperimentConfig& config, const ExperimentResult& result);
std::string manifest_json(const ExperimentConfig& config, const ExperimentResult& result, std::string_view seed_source,
                          std::string_view timestamp);

inline constexpr const char* kTraceFile = "trace.csv";
inline constexpr const char* kReportFile = "report.json";
inline constexpr const char* kManifestFile = "manifest.json";

// Writes the three output files into `dir`, creating it when missing.
void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& config, const ExperimentResult& result,
                   std::string_view seed_source, std::string_view timestamp);

// Shortest round-trip decimal form, locale independent.
std::string format_double(double x);

}  // namespace rising
