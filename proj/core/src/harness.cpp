#include "rising/harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace rising {

namespace {

constexpr double kZeroTol = 1e-12;

PolicyTrace run_baseline(Policy policy, std::vector<ArmProcess> arms, const BanditConfig& config) {
    const std::size_t k = arms.size();
    std::vector<ArmState> states = make_states(k);
    PolicyTrace trace;
    trace.pull_counts.assign(k, 0);

    const auto* trials = std::get_if<TrialsHorizon>(&config.horizon);
    const double budget = trials ? 0.0 : std::get<BudgetHorizon>(config.horizon).budget;
    double spent = 0.0;

    for (std::size_t t = 1;; ++t) {
        if (trials && t > trials->trials) break;
        const ArmId id = policy.select(states, t);
        ArmProcess& arm = arms[id - 1];
        if (!trials && spent + arm.next_cost() > budget) break;

        const PullResult out = arm.pull();
        spent += out.cost;
        ArmState& st = states[id - 1];
        st.record(out.reward, out.cost);
        st.growth_rate = growth_rate(st.history, config.growth);

        trace.steps.push_back({t, id, out.reward, out.cost, k, st.lower, st.lower});
        trace.pull_counts[id - 1] += 1;
        if (trace.steps.size() == 1 || out.reward > trace.final_j) {
            trace.final_j = out.reward;
            trace.best_arm = id;
            trace.best_step = t;
        }
    }
    trace.total_cost = spent;
    return trace;
}

}  // namespace

PolicyTrace simulate(const Policy& policy, std::span<const ArmProcess> instance, const BanditConfig& config,
                     std::uint64_t seed) {
    config.validate();
    if (instance.empty()) throw ConfigError("instance needs at least one arm (K >= 1)");
    std::vector<ArmProcess> arms(instance.begin(), instance.end());
    if (policy.delegates_to_bandit()) return rising_bandit_run(std::move(arms), config);
    Policy local = policy;
    local.reseed(seed);
    return run_baseline(std::move(local), std::move(arms), config);
}

// ---------------------------------------------------------------------------

GammaResult compute_gamma(std::span<const RewardCurve> curves, std::size_t horizon, double epsilon,
                          BoundClock clock) {
    if (curves.empty()) throw ConfigError("gamma needs at least one curve");
    GammaResult out;
    out.optimal_arm = offline_max_run(curves, horizon).arm;
    out.per_arm.assign(curves.size(), 0);
    const RewardCurve& best = curves[out.optimal_arm - 1];

    for (std::size_t idx = 0; idx < curves.size(); ++idx) {
        const ArmId k = idx + 1;
        if (k == out.optimal_arm) continue;
        const RewardCurve& arm = curves[idx];
        std::size_t gamma_k = horizon;
        bool separated = false;
        for (std::size_t n = 1;; ++n) {
            // Lockstep round n occupies global steps 2n-1 and 2n, lower id first.
            const std::size_t lockstep_t = k < out.optimal_arm ? 2 * n - 1 : 2 * n;
            const std::size_t t_k = clock == BoundClock::ArmPulls ? n : lockstep_t;
            if (2 * n > horizon) break;
            double upper = 1.0;
            if (n >= 2) {
                const double omega = arm.eval(n) - arm.eval(n - 1);
                upper = std::min(arm.eval(n) + omega * static_cast<double>(horizon - t_k), 1.0);
            }
            if (best.eval(n) >= upper - epsilon) {
                gamma_k = n;
                separated = true;
                break;
            }
        }
        out.per_arm[idx] = gamma_k;
        if (!separated) out.identifiable = false;
    }
    out.gamma = curves.size() == 1 ? 0 : *std::max_element(out.per_arm.begin(), out.per_arm.end());
    return out;
}

Theorem1Bound theorem1_bound(std::span<const RewardCurve> curves, std::size_t horizon, std::size_t gamma,
                             std::size_t k) {
    if (k == 0) throw ConfigError("theorem 1 bound needs K >= 1");
    const std::size_t spent = (k - 1) * gamma;
    if (spent >= horizon) return {1.0, true};
    const RewardCurve& best = curves[offline_max_run(curves, horizon).arm - 1];
    return {best.eval(horizon) - best.eval(horizon - spent), false};
}

Corollary1Check corollary1_check(std::span<const RewardCurve> curves, std::size_t horizon, std::size_t k,
                                 std::size_t gamma) {
    Corollary1Check out;
    if (k <= 1) {
        out.condition_holds = true;
        return out;
    }
    // gamma <= (KT - T) / (K (K - 1)) in exact integer arithmetic.
    out.condition_holds = gamma * k * (k - 1) <= k * horizon - horizon;
    out.exact_split = horizon % k == 0;
    const std::size_t share = horizon / k;
    const double best = offline_max_run(curves, horizon).value;
    double uniform_best = 0.0;
    if (share >= 1) {
        for (const RewardCurve& c : curves) uniform_best = std::max(uniform_best, c.eval(share));
    }
    out.average_regret = best - uniform_best;
    return out;
}

std::vector<double> concave_majorant(std::span<const double> observed, double limit) {
    const std::size_t len = observed.size();
    for (const double y : observed) {
        if (y > limit + kZeroTol) throw DomainError("observation exceeds the curve limit");
    }
    if (len == 0) return {};
    // Upper hull by monotone chain on x = 1..len.
    std::vector<std::size_t> hull;
    auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
        const double ax = static_cast<double>(a) - static_cast<double>(o);
        const double bx = static_cast<double>(b) - static_cast<double>(o);
        return ax * (observed[b] - observed[o]) - (observed[a] - observed[o]) * bx;
    };
    for (std::size_t i = 0; i < len; ++i) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), i) >= 0.0) hull.pop_back();
        hull.push_back(i);
    }
    // Toward the limit the majorant must not decrease: drop trailing vertices
    // that sit below an earlier maximum.
    while (hull.size() >= 2 && observed[hull.back()] < observed[hull[hull.size() - 2]]) hull.pop_back();

    std::vector<double> out(len);
    for (std::size_t v = 0; v + 1 < hull.size(); ++v) {
        const std::size_t a = hull[v];
        const std::size_t b = hull[v + 1];
        const double slope = (observed[b] - observed[a]) / static_cast<double>(b - a);
        for (std::size_t i = a; i < b; ++i) out[i] = observed[a] + slope * static_cast<double>(i - a);
    }
    for (std::size_t i = hull.back(); i < len; ++i) out[i] = std::max(observed[hull.back()], observed[i]);
    for (std::size_t i = 0; i < len; ++i) out[i] = std::max(out[i], observed[i]);
    return out;
}

bool theorem2_condition_check(const RewardCurve& true_curve, std::span<const double> observed, std::size_t window,
                              std::size_t horizon) {
    if (window == 0) throw DomainError("window C must be >= 1");
    const std::size_t last = std::min(horizon, observed.size());
    std::vector<double> delta(observed.size());
    for (std::size_t n = 1; n <= observed.size(); ++n) {
        const double gap = true_curve.eval(n) - observed[n - 1];
        if (gap < -kZeroTol) throw DomainError("observed reward exceeds the supplied majorant at n = " + std::to_string(n));
        delta[n - 1] = gap < kZeroTol ? 0.0 : gap;
    }
    for (std::size_t t = window + 1; t <= last; ++t) {
        const double now = delta[t - 1];
        const double before = delta[t - 1 - window];
        if (before == 0.0) {
            if (now > 0.0) return false;
            continue;
        }
        const double remaining = static_cast<double>(horizon - t);
        // now / before <= rem / (rem + C), cross-multiplied.
        if (now * (remaining + static_cast<double>(window)) > before * remaining + kZeroTol) return false;
    }
    return true;
}

BruteForceResult brute_force_optimal(std::span<const RewardCurve> curves, std::size_t horizon) {
    const std::size_t k = curves.size();
    if (k == 0) throw ConfigError("brute force needs at least one curve");
    if (horizon == 0) throw DomainError("brute force needs T >= 1");
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < horizon; ++i) {
        if (size > kBruteForceLimit / k) throw SizeError("K^T exceeds the brute-force limit of 10^7 sequences");
        size *= k;
    }

    BruteForceResult out;
    out.best_j = -1.0;
    std::vector<std::size_t> counts(k, 0);
    std::vector<ArmId> sequence;
    sequence.reserve(horizon);

    // J of a sequence is the max of the instantaneous rewards it collects.
    std::function<void(double)> descend = [&](double running_max) {
        if (sequence.size() == horizon) {
            if (running_max > out.best_j) {
                out.best_j = running_max;
                out.witness = sequence;
            }
            return;
        }
        for (std::size_t a = 0; a < k; ++a) {
            counts[a] += 1;
            sequence.push_back(a + 1);
            descend(std::max(running_max, curves[a].eval(counts[a])));
            sequence.pop_back();
            counts[a] -= 1;
        }
    };
    descend(-1.0);
    return out;
}

RegretValue regret(double trace_j, double oracle_j, double epsilon) {
    const double diff = oracle_j - trace_j;
    return {std::max(diff, 0.0), diff < -epsilon};
}

// ---------------------------------------------------------------------------

std::vector<RewardCurve> ground_truth_curves(std::span<const ArmProcess> instance, std::size_t pulls) {
    std::vector<RewardCurve> curves;
    curves.reserve(instance.size());
    for (const ArmProcess& arm : instance) {
        if (arm.pulls() != 0) throw std::logic_error("ground truth needs fresh arm processes");
        if (const auto* spec = std::get_if<CurveArmSpec>(&arm.spec())) {
            curves.push_back(spec->curve);
            continue;
        }
        ArmProcess copy = arm;
        std::vector<double> values;
        values.reserve(pulls);
        for (std::size_t i = 0; i < std::max<std::size_t>(pulls, 1); ++i) values.push_back(copy.pull().reward);
        curves.push_back(RewardCurve::tabulated(std::move(values)));
    }
    return curves;
}

namespace {

// Pulls arm k can afford on its own within the budget.
std::size_t affordable_pulls(const ArmProcess& arm, double budget) {
    ArmProcess copy = arm;
    double spent = 0.0;
    std::size_t n = 0;
    while (spent + copy.next_cost() <= budget) {
        spent += copy.pull().cost;
        ++n;
    }
    return n;
}

}  // namespace

std::size_t offline_horizon(std::span<const ArmProcess> instance, const BanditConfig& config) {
    if (const auto* h = std::get_if<TrialsHorizon>(&config.horizon)) return h->trials;
    const double budget = std::get<BudgetHorizon>(config.horizon).budget;
    std::size_t most = 0;
    for (const ArmProcess& arm : instance) most = std::max(most, affordable_pulls(arm, budget));
    return most;
}

RegretReport build_report(std::size_t replication, std::span<const ArmProcess> instance, const BanditConfig& config,
                          std::span<const std::string> policy_names, std::span<const PolicyTrace> traces) {
    if (policy_names.size() != traces.size()) throw std::invalid_argument("one trace per policy name expected");
    RegretReport report;
    report.replication = replication;
    const std::size_t k = instance.size();
    const std::size_t horizon = std::max<std::size_t>(offline_horizon(instance, config), 1);
    report.horizon = horizon;
    const std::vector<RewardCurve> curves = ground_truth_curves(instance, horizon);

    report.concave_instance = std::all_of(instance.begin(), instance.end(), [](const ArmProcess& a) {
        const auto* s = std::get_if<CurveArmSpec>(&a.spec());
        return s != nullptr && s->curve.is_concave_family();
    });

    if (std::holds_alternative<TrialsHorizon>(config.horizon)) {
        const OfflineChoice oracle = offline_max_run(curves, horizon);
        report.j_oracle = oracle.value;
        report.oracle_arm = oracle.arm;
        const GammaResult g = compute_gamma(curves, horizon, config.epsilon, config.clock);
        report.gamma_t = g.gamma;
        report.gamma_per_arm = g.per_arm;
        report.identifiable = g.identifiable;
        const Theorem1Bound b = theorem1_bound(curves, horizon, g.gamma, k);
        report.theorem1_bound = b.value;
        report.theorem1_vacuous = b.vacuous;
        const Corollary1Check c = corollary1_check(curves, horizon, k, g.gamma);
        report.corollary1_condition_holds = c.condition_holds;
        report.average_policy_regret = c.average_regret;
        report.interpretation_notes.push_back(
            "theorem 1 bound evaluated as r*(T) - r*(T - (K-1) gamma(T)), reading the bound's free arm count as K");
        report.interpretation_notes.push_back("gamma computed by pulling each arm and the optimal arm alternately");
        if (!g.identifiable) report.interpretation_notes.push_back("some arm never separates from the optimal arm before T");
        if (b.vacuous) report.interpretation_notes.push_back("(K-1) gamma(T) >= T: theorem 1 bound is vacuous (reported as 1)");
        if (!c.exact_split) report.interpretation_notes.push_back("T not divisible by K: average-policy regret uses floor(T/K)");
        if (config.growth.kind == GrowthMode::Kind::Smooth) {
            bool holds = true;
            for (const RewardCurve& curve : curves) {
                std::vector<double> observed(horizon);
                for (std::size_t n = 1; n <= horizon; ++n) observed[n - 1] = curve.eval(n);
                const RewardCurve majorant = RewardCurve::tabulated(concave_majorant(observed, curve.limit()));
                if (!theorem2_condition_check(majorant, observed, config.growth.window, horizon)) {
                    holds = false;
                    break;
                }
            }
            report.theorem2_condition_holds = holds;
            report.interpretation_notes.push_back(
                "theorem 2 condition checked against each arm's least concave majorant over t in (C, T]");
        }
        if (!report.concave_instance) {
            report.interpretation_notes.push_back("instance is not exactly concave; theorem checks are informational");
        }
    } else {
        const double budget = std::get<BudgetHorizon>(config.horizon).budget;
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t n = affordable_pulls(instance[i], budget);
            const double value = n == 0 ? 0.0 : curves[i].eval(n);
            if (i == 0 || value > report.j_oracle) {
                report.j_oracle = value;
                report.oracle_arm = i + 1;
            }
        }
        report.interpretation_notes.push_back(
            "budget mode: oracle is max_k r_k(n_k) with n_k the pulls arm k affords alone; gamma and theorem bounds not computed");
    }

    for (std::size_t p = 0; p < traces.size(); ++p) {
        const PolicyTrace& tr = traces[p];
        const RegretValue r = regret(tr.final_j, report.j_oracle, config.epsilon);
        report.outcomes.push_back({policy_names[p], tr.final_j, r.regret, tr.best_arm, tr.pull_counts, tr.total_cost,
                                   r.oracle_exceeded});
    }
    return report;
}

}  // namespace rising
