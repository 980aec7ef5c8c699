#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rising/rng.hpp"

namespace rising {

// Toy objectives standing in for a validation loss over a hyperparameter box.
// All have global minimum 0.
enum class HpoObjective { Sphere, Rosenbrock, Quadratic };

enum class SearchStrategy { Random, DensityEstimator };

HpoObjective parse_objective(std::string_view name);
SearchStrategy parse_strategy(std::string_view name);
std::string to_string(HpoObjective objective);
std::string to_string(SearchStrategy strategy);

struct Trial {
    std::vector<double> point;
    double loss;
};

// Sequential optimizer over one toy objective. Each step evaluates one
// configuration and reports 1 - normalized best loss so far.
class HpoProcess {
public:
    static constexpr std::size_t kMinDimension = 2;
    static constexpr std::size_t kMaxDimension = 5;
    static constexpr std::size_t kStartupTrials = 10;
    static constexpr std::size_t kCandidates = 8;

    // Draws the objective's seeded parameters (quadratic optimum and
    // curvatures) from `rng`.
    HpoProcess(HpoObjective objective, std::size_t dimension, SearchStrategy strategy, Rng& rng);

    // Runs one trial; returns the reward in [0, 1].
    double step(Rng& rng);

    [[nodiscard]] double loss(const std::vector<double>& point) const;
    [[nodiscard]] double best_loss() const { return best_loss_; }
    [[nodiscard]] double reference_loss() const { return reference_loss_; }
    [[nodiscard]] double lower() const { return lower_; }
    [[nodiscard]] double upper() const { return upper_; }
    [[nodiscard]] const std::vector<Trial>& trials() const { return trials_; }

private:
    std::vector<double> propose_random(Rng& rng) const;
    std::vector<double> propose_density(Rng& rng) const;

    HpoObjective objective_;
    std::size_t dimension_;
    SearchStrategy strategy_;
    double lower_;
    double upper_;
    std::vector<double> optimum_;    // Quadratic only
    std::vector<double> curvature_;  // Quadratic only
    double reference_loss_ = 1.0;
    double best_loss_;
    std::vector<Trial> trials_;
};

}  // namespace rising
