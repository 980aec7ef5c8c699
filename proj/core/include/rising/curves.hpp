#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rising/errors.hpp"
#include "rising/hpo.hpp"
#include "rising/rng.hpp"

namespace rising {

class RewardCurve;

// r(n) = limit - (limit - initial) * decay^(n-1)
struct ExponentialCurve {
    double limit;
    double initial;
    double decay;
};

// r(n) = limit - scale * n^(-exponent)
struct PowerCurve {
    double limit;
    double scale;
    double exponent;
};

// values[n-1] for n <= size, last value beyond.
struct TabulatedCurve {
    std::vector<double> values;
};

// Starts at base(1); every `plateau` pulls the value closes a fraction `jump`
// of the remaining gap to base's limit. Monotone and bounded, not concave.
struct StaircaseCurve {
    std::shared_ptr<const RewardCurve> base;
    std::size_t plateau;
    double jump;
};

// Deterministic ground-truth reward function n -> r(n) on n >= 1.
// Parameters are validated by the factory functions; eval never re-checks them.
class RewardCurve {
public:
    using Variant = std::variant<ExponentialCurve, PowerCurve, TabulatedCurve, StaircaseCurve>;

    static RewardCurve exponential(double limit, double initial, double decay);
    static RewardCurve power(double limit, double scale, double exponent);
    static RewardCurve tabulated(std::vector<double> values);
    static RewardCurve staircase(RewardCurve base, std::size_t plateau, double jump);

    // Throws DomainError for n == 0.
    [[nodiscard]] double eval(std::size_t n) const;

    // lim_{n -> inf} r(n).
    [[nodiscard]] double limit() const;

    // True for the closed-form families that satisfy concavity exactly.
    [[nodiscard]] bool is_concave_family() const;

    [[nodiscard]] const Variant& variant() const { return variant_; }

    // Scales every reward by `factor` in (0, 1]; preserves the family.
    [[nodiscard]] RewardCurve scaled(double factor) const;

    [[nodiscard]] std::string describe() const;

private:
    explicit RewardCurve(Variant v) : variant_(std::move(v)) {}
    Variant variant_;
};

// Outcome of one pull: best-so-far reward and the resource it consumed.
struct PullResult {
    double reward;
    double cost;
};

struct CurveArmSpec {
    RewardCurve curve;
    double cost = 1.0;
};

struct NoisyCurveArmSpec {
    RewardCurve curve;
    double noise_amplitude;
    double cost = 1.0;
};

struct HpoArmSpec {
    HpoObjective objective = HpoObjective::Sphere;
    std::size_t dimension = 2;
    SearchStrategy strategy = SearchStrategy::Random;
    double mean_cost = 1.0;
};

using ArmSpec = std::variant<CurveArmSpec, NoisyCurveArmSpec, HpoArmSpec>;

struct InstanceSpec {
    std::vector<ArmSpec> arms;
};

// Stateful reward source. Pull outputs are non-decreasing and lie in [0, 1];
// identical spec and seed give identical output sequences.
// Owned exclusively by one run; copying yields an independent replica at the
// same point in its stream.
class ArmProcess {
public:
    ArmProcess(const ArmSpec& spec, std::uint64_t seed);

    PullResult pull();

    // Cost the next pull will charge; drawn once and held until that pull.
    [[nodiscard]] double next_cost();

    [[nodiscard]] std::size_t pulls() const { return pulls_; }
    [[nodiscard]] double last_reward() const { return last_reward_; }
    [[nodiscard]] const ArmSpec& spec() const { return spec_; }

    // Ground-truth curve when the arm is curve-backed, nullptr for HPO arms.
    [[nodiscard]] const RewardCurve* curve() const;

private:
    double draw_cost();
    double draw_reward();

    ArmSpec spec_;
    Rng rng_;
    std::size_t pulls_ = 0;
    double last_reward_ = 0.0;
    double pending_cost_ = 0.0;
    bool has_pending_cost_ = false;
    std::optional<HpoProcess> hpo_;  // set for HpoArmSpec only
};

// Validates one arm spec; throws ConfigError naming `arm_label`.
void validate_arm_spec(const ArmSpec& spec, const std::string& arm_label);

// Builds K independent arms with per-arm streams derived from `stream_seed`.
std::vector<ArmProcess> make_instance(const InstanceSpec& spec, std::uint64_t stream_seed);

// Seed of arm `index` under `stream_seed`; exposed so tests and oracles can
// rebuild a single arm.
std::uint64_t arm_seed(std::uint64_t stream_seed, std::size_t index);

// First `pulls` outputs of a fresh copy of the arm: its offline reward function.
std::vector<double> replay_rewards(const ArmSpec& spec, std::uint64_t seed, std::size_t pulls);

}  // namespace rising
