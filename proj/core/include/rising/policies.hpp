#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "rising/bandit.hpp"
#include "rising/rng.hpp"

namespace rising {

struct AveragePolicy {};

struct UcbPolicy {
    static constexpr double kDefaultCoefficient = 1.4142135623730951;  // sqrt(2)
    double coefficient = kDefaultCoefficient;
};

struct SoftmaxPolicy {
    static constexpr double kDefaultTemperature = 0.1;
    double temperature = kDefaultTemperature;
};

// Beta posterior over fractional pseudo-counts: S += r, F += 1 - r.
struct ThompsonPolicy {
    double prior_alpha = 1.0;
    double prior_beta = 1.0;
};

// Marker: runs are delegated to rising_bandit_run.
struct RisingBanditPolicy {};

// Arm-selection rule seeing only observed histories. Stochastic variants draw
// from the policy's own stream.
class Policy {
public:
    using Variant = std::variant<AveragePolicy, UcbPolicy, SoftmaxPolicy, ThompsonPolicy, RisingBanditPolicy>;

    explicit Policy(Variant kind, std::uint64_t seed = 0);

    // Known names: rising_bandit, average, ucb, softmax, thompson.
    static Policy from_name(std::string_view name);
    static bool is_known_name(std::string_view name);

    [[nodiscard]] std::string name() const;
    [[nodiscard]] const Variant& kind() const { return kind_; }
    [[nodiscard]] bool delegates_to_bandit() const { return std::holds_alternative<RisingBanditPolicy>(kind_); }

    void reseed(std::uint64_t seed) { rng_ = Rng(seed); }

    // Next arm (1-based) at global step t >= 1. Ties go to the lowest id.
    // Throws std::logic_error for the Rising Bandit marker.
    ArmId select(std::span<const ArmState> states, std::size_t t);

private:
    Variant kind_;
    Rng rng_;
};

}  // namespace rising
