#include "rising/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rising {

double ArmState::mean_cost() const {
    return history.empty() ? 0.0 : total_cost / static_cast<double>(history.size());
}

void ArmState::record(double reward, double cost) {
    history.push_back(reward);
    total_cost += cost;
    lower = reward;
}

std::vector<ArmState> make_states(std::size_t k) {
    std::vector<ArmState> states(k);
    for (std::size_t i = 0; i < k; ++i) states[i].arm_id = i + 1;
    return states;
}

GrowthMode GrowthMode::smooth(std::size_t c) {
    if (c == 0) throw ConfigError("smooth growth window C must be >= 1");
    return {Kind::Smooth, c};
}

BanditConfig BanditConfig::trials(std::size_t t, GrowthMode growth) {
    BanditConfig cfg;
    cfg.horizon = TrialsHorizon{t};
    cfg.growth = growth;
    return cfg;
}

BanditConfig BanditConfig::budget(double b, GrowthMode growth) {
    BanditConfig cfg;
    cfg.horizon = BudgetHorizon{b};
    cfg.growth = growth;
    return cfg;
}

void BanditConfig::validate() const {
    if (const auto* h = std::get_if<TrialsHorizon>(&horizon); h != nullptr && h->trials == 0) {
        throw ConfigError("horizon T must be >= 1");
    }
    if (const auto* h = std::get_if<BudgetHorizon>(&horizon); h != nullptr && !(h->budget > 0.0 && std::isfinite(h->budget))) {
        throw ConfigError("budget B must be a positive finite number");
    }
    if (growth.kind == GrowthMode::Kind::Smooth && growth.window == 0) throw ConfigError("smooth growth window C must be >= 1");
    if (!(epsilon >= 0.0)) throw ConfigError("epsilon must be >= 0");
}

CandidateSet::CandidateSet(std::size_t k) {
    if (k == 0) throw ConfigError("candidate set needs K >= 1");
    ids_.resize(k);
    for (std::size_t i = 0; i < k; ++i) ids_[i] = i + 1;
}

CandidateSet::CandidateSet(std::vector<ArmId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    if (ids_.empty()) throw ConfigError("candidate set must not be empty");
}

bool CandidateSet::contains(ArmId id) const { return std::binary_search(ids_.begin(), ids_.end(), id); }

std::optional<double> growth_rate(std::span<const double> history, const GrowthMode& mode) {
    const std::size_t n = history.size();
    if (n < 2) return std::nullopt;
    const double latest = history[n - 1];
    double omega = 0.0;
    if (mode.kind == GrowthMode::Kind::Last) {
        omega = latest - history[n - 2];
    } else if (n > mode.window) {
        omega = (latest - history[n - 1 - mode.window]) / static_cast<double>(mode.window);
    } else {
        omega = (latest - history[0]) / static_cast<double>(n - 1);
    }
    // Histories are monotone; guard against callers passing raw observations.
    return std::max(omega, 0.0);
}

double upper_bound(const ArmState& state, std::size_t t, std::size_t horizon, std::optional<double> omega) {
    if (t > horizon) throw DomainError("upper bound requested at t = " + std::to_string(t) + " > T = " + std::to_string(horizon));
    if (state.history.empty()) throw DomainError("upper bound needs at least one observation");
    if (!omega) return 1.0;
    const double remaining = static_cast<double>(horizon - t);
    return std::min(state.history.back() + *omega * remaining, 1.0);
}

double cost_aware_upper_bound(const ArmState& state, double budget_left, std::optional<double> omega) {
    if (state.history.empty()) throw DomainError("upper bound needs at least one observation");
    const double mean_cost = state.mean_cost();
    if (!(mean_cost > 0.0)) throw DomainError("cost-aware upper bound needs a positive mean cost");
    if (budget_left < 0.0) throw DomainError("remaining budget must be >= 0");
    if (!omega) return 1.0;
    return std::min(state.history.back() + *omega * (budget_left / mean_cost), 1.0);
}

CandidateSet eliminate(const CandidateSet& candidates, std::span<const ArmState> states, double epsilon) {
    std::vector<ArmId> survivors;
    survivors.reserve(candidates.size());
    for (const ArmId j : candidates) {
        const ArmState& sj = states[j - 1];
        bool dominated = false;
        for (const ArmId i : candidates) {
            if (i != j && states[i - 1].lower >= sj.upper - epsilon) {
                dominated = true;
                break;
            }
        }
        if (!dominated) survivors.push_back(j);
    }
    if (survivors.empty()) survivors.push_back(candidates.ids().front());
    return CandidateSet(std::move(survivors));
}

namespace {

void note_best(PolicyTrace& trace, const StepRecord& rec) {
    if (trace.steps.size() == 1 || rec.reward > trace.final_j) {
        trace.final_j = rec.reward;
        trace.best_arm = rec.arm;
        trace.best_step = rec.step;
    }
}

}  // namespace

PolicyTrace rising_bandit_run(std::vector<ArmProcess> arms, const BanditConfig& config) {
    config.validate();
    if (arms.empty()) throw ConfigError("instance needs at least one arm (K >= 1)");
    const std::size_t k = arms.size();

    std::vector<ArmState> states = make_states(k);
    CandidateSet candidates(k);
    PolicyTrace trace;
    trace.pull_counts.assign(k, 0);

    const auto* trials = std::get_if<TrialsHorizon>(&config.horizon);
    const double budget = trials ? 0.0 : std::get<BudgetHorizon>(config.horizon).budget;
    std::size_t t = 0;
    double spent = 0.0;
    bool exhausted = false;

    while (!exhausted) {
        const std::size_t round_size = candidates.size();
        bool pulled_any = false;
        for (const ArmId id : candidates) {
            ArmProcess& arm = arms[id - 1];
            if (trials) {
                if (t >= trials->trials) {
                    exhausted = true;
                    break;
                }
            } else if (spent + arm.next_cost() > budget) {
                exhausted = true;
                break;
            }

            ++t;
            const PullResult out = arm.pull();
            spent += out.cost;
            ArmState& st = states[id - 1];
            st.record(out.reward, out.cost);
            st.growth_rate = growth_rate(st.history, config.growth);
            // Smooth mode extrapolates only once a full window of C increments exists.
            const bool warming_up = config.growth.kind == GrowthMode::Kind::Smooth && st.pulls() <= config.growth.window;
            const std::optional<double> omega = warming_up ? std::nullopt : st.growth_rate;
            const bool per_arm = config.clock == BoundClock::ArmPulls;
            if (trials) {
                st.upper = upper_bound(st, per_arm ? st.pulls() : t, trials->trials, omega);
            } else {
                const double left = budget - (per_arm ? st.total_cost : spent);
                st.upper = cost_aware_upper_bound(st, std::max(left, 0.0), omega);
            }
            pulled_any = true;

            trace.steps.push_back({t, id, out.reward, out.cost, round_size, st.lower, st.upper});
            trace.pull_counts[id - 1] += 1;
            note_best(trace, trace.steps.back());
        }
        if (trials && t >= trials->trials) exhausted = true;
        if (!pulled_any) break;

        candidates = eliminate(candidates, states, config.epsilon);
        for (ArmState& st : states) st.active = candidates.contains(st.arm_id);
        trace.candidate_history.push_back(candidates.ids());
    }
    trace.total_cost = spent;
    return trace;
}

OfflineChoice offline_max_run(std::span<const RewardCurve> curves, std::size_t horizon) {
    if (curves.empty()) throw ConfigError("offline run needs at least one curve");
    OfflineChoice best{1, curves[0].eval(horizon)};
    for (std::size_t k = 1; k < curves.size(); ++k) {
        const double v = curves[k].eval(horizon);
        if (v > best.value) best = {k + 1, v};
    }
    return best;
}

}  // namespace rising
