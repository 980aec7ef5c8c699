#pragma once

#include <cstddef>
#include <vector>

namespace rising {

// Arms are identified 1..K throughout the public API.
using ArmId = std::size_t;

struct StepRecord {
    std::size_t step;                // global step t, 1-based
    ArmId arm;                       // i(t)
    double reward;                   // y_{i(t)}(N_{i(t)}(t) + 1)
    double cost;
    std::size_t candidate_set_size;  // |S_cand| when the pull was made (K for baselines)
    double lower;                    // bounds of the pulled arm after the update
    double upper;
};

// Full record of one run.
struct PolicyTrace {
    std::vector<StepRecord> steps;
    double final_j = 0.0;  // max observed reward
    ArmId best_arm = 0;
    std::size_t best_step = 0;
    std::vector<std::size_t> pull_counts;  // N_k(T + 1), index k - 1
    double total_cost = 0.0;
    // Candidate set after each elimination sweep (Rising Bandit runs only).
    std::vector<std::vector<ArmId>> candidate_history;

    [[nodiscard]] std::size_t length() const { return steps.size(); }
};

}  // namespace rising
