#include "rising/policies.hpp"

#include <cmath>
#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace rising {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double mean_of(const ArmState& s) {
    return std::accumulate(s.history.begin(), s.history.end(), 0.0) / static_cast<double>(s.history.size());
}

// First arm never pulled, if any.
std::optional<ArmId> first_unpulled(std::span<const ArmState> states) {
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (states[k].history.empty()) return k + 1;
    }
    return std::nullopt;
}

ArmId argmax(const std::vector<double>& scores) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < scores.size(); ++k) {
        if (scores[k] > scores[best]) best = k;
    }
    return best + 1;
}

}  // namespace

Policy::Policy(Variant kind, std::uint64_t seed) : kind_(kind), rng_(seed) {
    std::visit(Overloaded{
                   [](const UcbPolicy& p) {
                       if (!(p.coefficient > 0.0)) throw ConfigError("ucb.coefficient must be > 0");
                   },
                   [](const SoftmaxPolicy& p) {
                       if (!(p.temperature > 0.0)) throw ConfigError("softmax.temperature must be > 0");
                   },
                   [](const ThompsonPolicy& p) {
                       if (!(p.prior_alpha > 0.0 && p.prior_beta > 0.0)) {
                           throw ConfigError("thompson.alpha and thompson.beta must be > 0");
                       }
                   },
                   [](const auto&) {},
               },
               kind_);
}

Policy Policy::from_name(std::string_view name) {
    if (name == "rising_bandit") return Policy(RisingBanditPolicy{});
    if (name == "average") return Policy(AveragePolicy{});
    if (name == "ucb") return Policy(UcbPolicy{});
    if (name == "softmax") return Policy(SoftmaxPolicy{});
    if (name == "thompson") return Policy(ThompsonPolicy{});
    throw ConfigError("unknown policy '" + std::string(name) + "'");
}

bool Policy::is_known_name(std::string_view name) {
    return name == "rising_bandit" || name == "average" || name == "ucb" || name == "softmax" || name == "thompson";
}

std::string Policy::name() const {
    return std::visit(Overloaded{
                          [](const AveragePolicy&) { return std::string("average"); },
                          [](const UcbPolicy&) { return std::string("ucb"); },
                          [](const SoftmaxPolicy&) { return std::string("softmax"); },
                          [](const ThompsonPolicy&) { return std::string("thompson"); },
                          [](const RisingBanditPolicy&) { return std::string("rising_bandit"); },
                      },
                      kind_);
}

ArmId Policy::select(std::span<const ArmState> states, std::size_t t) {
    if (states.empty()) throw ConfigError("policy needs K >= 1");
    if (t == 0) throw DomainError("steps are numbered from 1");
    const std::size_t k = states.size();

    return std::visit(
        Overloaded{
            [&](const AveragePolicy&) -> ArmId { return (t - 1) % k + 1; },
            [&](const UcbPolicy& p) -> ArmId {
                if (auto id = first_unpulled(states)) return *id;
                std::vector<double> scores(k);
                const double log_t = std::log(static_cast<double>(t));
                for (std::size_t i = 0; i < k; ++i) {
                    const double n = static_cast<double>(states[i].pulls());
                    scores[i] = mean_of(states[i]) + p.coefficient * std::sqrt(log_t / n);
                }
                return argmax(scores);
            },
            [&](const SoftmaxPolicy& p) -> ArmId {
                if (auto id = first_unpulled(states)) return *id;
                std::vector<double> logits(k);
                for (std::size_t i = 0; i < k; ++i) logits[i] = mean_of(states[i]) / p.temperature;
                const double top = *std::max_element(logits.begin(), logits.end());
                std::vector<double> weights(k);
                double total = 0.0;
                for (std::size_t i = 0; i < k; ++i) {
                    weights[i] = std::exp(logits[i] - top);
                    total += weights[i];
                }
                double u = rng_.uniform() * total;
                for (std::size_t i = 0; i < k; ++i) {
                    if (u < weights[i]) return i + 1;
                    u -= weights[i];
                }
                return k;
            },
            [&](const ThompsonPolicy& p) -> ArmId {
                std::vector<double> draws(k);
                for (std::size_t i = 0; i < k; ++i) {
                    double successes = 0.0;
                    for (const double r : states[i].history) successes += r;
                    const double failures = static_cast<double>(states[i].pulls()) - successes;
                    draws[i] = rng_.beta(p.prior_alpha + successes, p.prior_beta + failures);
                }
                return argmax(draws);
            },
            [](const RisingBanditPolicy&) -> ArmId {
                throw std::logic_error("the rising bandit policy runs through rising_bandit_run, not select()");
            },
        },
        kind_);
}

}  // namespace rising
