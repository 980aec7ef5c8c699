#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rising/bandit.hpp"
#include "rising/curves.hpp"
#include "rising/policies.hpp"
#include "rising/trace.hpp"

namespace rising {

// Runs `policy` on fresh copies of `instance`. `seed` feeds the policy's own
// stream; the arm copies keep the streams they were built with.
PolicyTrace simulate(const Policy& policy, std::span<const ArmProcess> instance, const BanditConfig& config,
                     std::uint64_t seed);

// ---------------------------------------------------------------------------
// Problem-dependent separation time.

struct GammaResult {
    std::size_t gamma = 0;              // max_k gamma_k
    std::vector<std::size_t> per_arm;   // gamma_k, index k - 1; 0 for the optimal arm
    ArmId optimal_arm = 1;              // k*_T
    bool identifiable = true;           // false when some arm never separates before T
};

// For every suboptimal k, pulls k and k* alternately (ascending id order) on
// ground-truth values and reports the first per-arm pull count n at which
// u_k <= l_{k*} (Last growth rate, horizon T, same bound clock as the run).
// gamma_k = T when that never happens within the horizon.
GammaResult compute_gamma(std::span<const RewardCurve> curves, std::size_t horizon,
                          double epsilon = BanditConfig::kDefaultEpsilon, BoundClock clock = BoundClock::ArmPulls);

struct Theorem1Bound {
    double value = 0.0;
    bool vacuous = false;  // (K-1) * gamma >= T; value is then 1.0
};

// r_{k*}(T) - r_{k*}(T - (K-1) gamma), reading the bound's free count as K.
Theorem1Bound theorem1_bound(std::span<const RewardCurve> curves, std::size_t horizon, std::size_t gamma,
                             std::size_t k);

struct Corollary1Check {
    bool condition_holds = false;  // gamma <= (KT - T) / (K (K - 1))
    double average_regret = 0.0;   // r_{k*}(T) - max_k r_k(floor(T / K))
    bool exact_split = true;       // T divisible by K
};

Corollary1Check corollary1_check(std::span<const RewardCurve> curves, std::size_t horizon, std::size_t k,
                                 std::size_t gamma);

// Least concave majorant of the points (n, y(n)), n = 1..len, that stays
// non-decreasing toward the limit. Throws DomainError when an observation
// exceeds `limit`.
std::vector<double> concave_majorant(std::span<const double> observed, double limit);

// Checks Delta(t) / Delta(t - C) <= (T - t) / (T - t + C) for every
// t in (C, min(T, len)], Delta = r - y. 0/0 passes, positive/0 fails.
// Throws DomainError when y(t) > r(t) anywhere (not a majorant).
bool theorem2_condition_check(const RewardCurve& true_curve, std::span<const double> observed, std::size_t window,
                              std::size_t horizon);

struct BruteForceResult {
    double best_j = 0.0;
    std::vector<ArmId> witness;  // one optimal pull sequence
};

inline constexpr std::uint64_t kBruteForceLimit = 10'000'000;

// Enumerates all K^T pull sequences. Throws SizeError when K^T > 10^7.
BruteForceResult brute_force_optimal(std::span<const RewardCurve> curves, std::size_t horizon);

struct RegretValue {
    double regret = 0.0;
    bool oracle_exceeded = false;  // J beat the oracle by more than epsilon
};

// J_oracle - J, clamped at 0.
RegretValue regret(double trace_j, double oracle_j, double epsilon = BanditConfig::kDefaultEpsilon);

// ---------------------------------------------------------------------------
// Report assembly.

struct PolicyOutcome {
    std::string policy;
    double j = 0.0;
    double regret = 0.0;
    ArmId best_arm = 0;
    std::vector<std::size_t> pull_counts;
    double total_cost = 0.0;
    bool oracle_exceeded = false;
};

struct RegretReport {
    std::size_t replication = 0;
    std::size_t horizon = 0;          // T used for ground truth (trials, or pulls affordable in budget mode)
    double j_oracle = 0.0;
    ArmId oracle_arm = 1;
    std::size_t gamma_t = 0;
    std::vector<std::size_t> gamma_per_arm;
    bool identifiable = true;
    double theorem1_bound = 0.0;
    bool theorem1_vacuous = false;
    bool corollary1_condition_holds = false;
    double average_policy_regret = 0.0;
    // Smooth growth in trials mode only: every arm's first T rewards pass the
    // ratio condition against their concave majorant.
    std::optional<bool> theorem2_condition_holds;
    bool concave_instance = false;    // every arm is an exact concave curve
    std::vector<PolicyOutcome> outcomes;
    std::vector<std::string> interpretation_notes;
};

// Ground-truth reward functions of an instance, as tabulated replays of
// `pulls` outputs per arm (exact closed forms for noiseless curve arms).
std::vector<RewardCurve> ground_truth_curves(std::span<const ArmProcess> instance, std::size_t pulls);

// Offline horizon of the instance under `config`: T in trials mode; in budget
// mode the largest pull count any single arm can afford.
std::size_t offline_horizon(std::span<const ArmProcess> instance, const BanditConfig& config);

RegretReport build_report(std::size_t replication, std::span<const ArmProcess> instance, const BanditConfig& config,
                          std::span<const std::string> policy_names, std::span<const PolicyTrace> traces);

}  // namespace rising
