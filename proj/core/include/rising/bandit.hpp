#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "rising/curves.hpp"
#include "rising/trace.hpp"

namespace rising {

// Per-arm bookkeeping of the online algorithm.
struct ArmState {
    ArmId arm_id = 1;
    std::vector<double> history;  // y_k(1..N_k), non-decreasing
    std::optional<double> growth_rate;
    double upper = 1.0;
    double lower = 0.0;
    bool active = true;
    double total_cost = 0.0;

    [[nodiscard]] std::size_t pulls() const { return history.size(); }
    // Running mean of observed pull costs; 0 before the first pull.
    [[nodiscard]] double mean_cost() const;
    void record(double reward, double cost);
};

std::vector<ArmState> make_states(std::size_t k);

struct GrowthMode {
    enum class Kind { Last, Smooth };
    static constexpr std::size_t kDefaultWindow = 7;

    Kind kind = Kind::Last;
    std::size_t window = 1;

    static GrowthMode last() { return {Kind::Last, 1}; }
    static GrowthMode smooth(std::size_t c = kDefaultWindow);
};

struct TrialsHorizon {
    std::size_t trials;
};
struct BudgetHorizon {
    double budget;
};
using Horizon = std::variant<TrialsHorizon, BudgetHorizon>;

// Which elapsed-resource count the upper bound extrapolates from.
//  ArmPulls:   u_k = y + omega * (T - N_k), a bound on r_k(T) itself.
//  GlobalStep: u_k = y + omega * (T - t), a bound on what arm k can still
//              reach in this run if it received every remaining pull.
// Budget mode uses B - (cost spent on k) and B - (cost spent overall) respectively.
enum class BoundClock { ArmPulls, GlobalStep };

struct BanditConfig {
    static constexpr double kDefaultEpsilon = 1e-12;

    Horizon horizon = TrialsHorizon{100};
    GrowthMode growth = GrowthMode::last();
    double epsilon = kDefaultEpsilon;
    BoundClock clock = BoundClock::ArmPulls;

    static BanditConfig trials(std::size_t t, GrowthMode growth = GrowthMode::last());
    static BanditConfig budget(double b, GrowthMode growth = GrowthMode::last());

    // Throws ConfigError on T = 0, B <= 0, negative epsilon.
    void validate() const;
};

// Ordered set of surviving arm ids; never empty once constructed.
class CandidateSet {
public:
    explicit CandidateSet(std::size_t k);                // {1, ..., K}
    explicit CandidateSet(std::vector<ArmId> ids);       // sorted + deduplicated

    [[nodiscard]] const std::vector<ArmId>& ids() const { return ids_; }
    [[nodiscard]] std::size_t size() const { return ids_.size(); }
    [[nodiscard]] bool contains(ArmId id) const;

    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }

    friend bool operator==(const CandidateSet&, const CandidateSet&) = default;

private:
    std::vector<ArmId> ids_;
};

// Last: y(n) - y(n-1). Smooth(C): (y(n) - y(n-C)) / C when n > C, otherwise
// (y(n) - y(1)) / (n - 1). nullopt when fewer than two observations exist.
std::optional<double> growth_rate(std::span<const double> history, const GrowthMode& mode);

// min(y + omega * (T - t), 1); 1 when omega is unavailable.
// Throws DomainError when t > T or the arm has no observation.
double upper_bound(const ArmState& state, std::size_t t, std::size_t horizon, std::optional<double> omega);

// min(y + omega * B' / c_k, 1) with c_k the arm's mean pull cost;
// 1 when omega is unavailable. Throws DomainError when c_k <= 0 or B' < 0.
double cost_aware_upper_bound(const ArmState& state, double budget_left, std::optional<double> omega);

// One elimination sweep against the set as it stood at sweep start: j is
// dropped iff some other candidate i has lower_i >= upper_j - epsilon. If every
// arm would go, the lowest id survives.
CandidateSet eliminate(const CandidateSet& candidates, std::span<const ArmState> states, double epsilon);

// Elimination-based online algorithm: pull each candidate once per round in
// ascending id order, refresh its bounds, sweep, repeat until the horizon or
// budget is exhausted. Consumes the arm processes.
PolicyTrace rising_bandit_run(std::vector<ArmProcess> arms, const BanditConfig& config);

struct OfflineChoice {
    ArmId arm;
    double value;
};

// Offline optimum argmax_k r_k(T), lowest id on ties.
OfflineChoice offline_max_run(std::span<const RewardCurve> curves, std::size_t horizon);

}  // namespace rising
