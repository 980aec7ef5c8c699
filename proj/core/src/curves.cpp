#include "rising/curves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rising {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr std::uint64_t kArmStreamTag = 0x41524d;  // "ARM"

bool in_unit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

}  // namespace

RewardCurve RewardCurve::exponential(double limit, double initial, double decay) {
    if (!(initial > 0.0 && initial <= limit && limit <= 1.0)) {
        throw ConfigError("exponential curve needs 0 < initial <= limit <= 1");
    }
    if (!(decay > 0.0 && decay < 1.0)) throw ConfigError("exponential curve needs 0 < decay < 1");
    return RewardCurve(ExponentialCurve{limit, initial, decay});
}

RewardCurve RewardCurve::power(double limit, double scale, double exponent) {
    if (!(scale > 0.0 && exponent > 0.0)) throw ConfigError("power curve needs scale > 0 and exponent > 0");
    if (!(limit <= 1.0 && limit - scale >= 0.0)) throw ConfigError("power curve needs limit <= 1 and limit - scale >= 0");
    return RewardCurve(PowerCurve{limit, scale, exponent});
}

RewardCurve RewardCurve::tabulated(std::vector<double> values) {
    if (values.empty()) throw ConfigError("tabulated curve needs at least one value");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!in_unit(values[i])) throw ConfigError("tabulated curve values must lie in [0, 1]");
        if (i > 0 && values[i] < values[i - 1]) throw ConfigError("tabulated curve values must be non-decreasing");
    }
    return RewardCurve(TabulatedCurve{std::move(values)});
}

RewardCurve RewardCurve::staircase(RewardCurve base, std::size_t plateau, double jump) {
    if (plateau == 0) throw ConfigError("staircase plateau length must be >= 1");
    if (!(jump > 0.0 && jump <= 1.0)) throw ConfigError("staircase jump fraction must be in (0, 1]");
    if (std::holds_alternative<StaircaseCurve>(base.variant_)) {
        throw ConfigError("staircase base must not itself be a staircase");
    }
    return RewardCurve(StaircaseCurve{std::make_shared<const RewardCurve>(std::move(base)), plateau, jump});
}

double RewardCurve::eval(std::size_t n) const {
    if (n == 0) throw DomainError("reward curves are defined for n >= 1");
    return std::visit(
        Overloaded{
            [n](const ExponentialCurve& c) {
                return c.limit - (c.limit - c.initial) * std::pow(c.decay, static_cast<double>(n - 1));
            },
            [n](const PowerCurve& c) { return c.limit - c.scale * std::pow(static_cast<double>(n), -c.exponent); },
            [n](const TabulatedCurve& c) { return c.values[std::min(n, c.values.size()) - 1]; },
            [n](const StaircaseCurve& c) {
                const double start = c.base->eval(1);
                const double gap = c.base->limit() - start;
                const auto level = static_cast<double>((n - 1) / c.plateau);
                return c.base->limit() - gap * std::pow(1.0 - c.jump, level);
            },
        },
        variant_);
}

double RewardCurve::limit() const {
    return std::visit(Overloaded{
                          [](const ExponentialCurve& c) { return c.limit; },
                          [](const PowerCurve& c) { return c.limit; },
                          [](const TabulatedCurve& c) { return c.values.back(); },
                          [](const StaircaseCurve& c) { return c.base->limit(); },
                      },
                      variant_);
}

bool RewardCurve::is_concave_family() const {
    return std::holds_alternative<ExponentialCurve>(variant_) || std::holds_alternative<PowerCurve>(variant_);
}

RewardCurve RewardCurve::scaled(double factor) const {
    if (!(factor > 0.0 && factor <= 1.0)) throw ConfigError("scale factor must be in (0, 1]");
    return std::visit(Overloaded{
                          [factor](const ExponentialCurve& c) {
                              return exponential(c.limit * factor, c.initial * factor, c.decay);
                          },
                          [factor](const PowerCurve& c) { return power(c.limit * factor, c.scale * factor, c.exponent); },
                          [factor](const TabulatedCurve& c) {
                              std::vector<double> v = c.values;
                              for (double& x : v) x *= factor;
                              return tabulated(std::move(v));
                          },
                          [factor](const StaircaseCurve& c) {
                              return staircase(c.base->scaled(factor), c.plateau, c.jump);
                          },
                      },
                      variant_);
}

std::string RewardCurve::describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(Overloaded{
                   [&](const ExponentialCurve& c) {
                       os << "exponential(limit=" << c.limit << ", initial=" << c.initial << ", decay=" << c.decay << ")";
                   },
                   [&](const PowerCurve& c) {
                       os << "power(limit=" << c.limit << ", scale=" << c.scale << ", exponent=" << c.exponent << ")";
                   },
                   [&](const TabulatedCurve& c) { os << "tabulated(" << c.values.size() << " values)"; },
                   [&](const StaircaseCurve& c) {
                       os << "staircase(" << c.base->describe() << ", plateau=" << c.plateau << ", jump=" << c.jump
                          << ")";
                   },
               },
               variant_);
    return os.str();
}

// ---------------------------------------------------------------------------

void validate_arm_spec(const ArmSpec& spec, const std::string& arm_label) {
    auto fail = [&](const std::string& what) { throw ConfigError(arm_label + ": " + what); };
    std::visit(Overloaded{
                   [&](const CurveArmSpec& s) {
                       if (!(s.cost > 0.0 && std::isfinite(s.cost))) fail("cost must be a positive finite number");
                   },
                   [&](const NoisyCurveArmSpec& s) {
                       if (!(s.cost > 0.0 && std::isfinite(s.cost))) fail("cost must be a positive finite number");
                       if (!(s.noise_amplitude >= 0.0 && s.noise_amplitude <= 1.0)) fail("noise amplitude must be in [0, 1]");
                   },
                   [&](const HpoArmSpec& s) {
                       if (!(s.mean_cost > 0.0 && std::isfinite(s.mean_cost))) fail("mean cost must be a positive finite number");
                       if (s.dimension < HpoProcess::kMinDimension || s.dimension > HpoProcess::kMaxDimension) {
                           fail("HPO dimension must be in [2, 5]");
                       }
                   },
               },
               spec);
}

ArmProcess::ArmProcess(const ArmSpec& spec, std::uint64_t seed) : spec_(spec), rng_(seed) {
    if (const auto* hpo = std::get_if<HpoArmSpec>(&spec_)) {
        hpo_.emplace(hpo->objective, hpo->dimension, hpo->strategy, rng_);
    }
}

const RewardCurve* ArmProcess::curve() const {
    if (const auto* s = std::get_if<CurveArmSpec>(&spec_)) return &s->curve;
    if (const auto* s = std::get_if<NoisyCurveArmSpec>(&spec_)) return &s->curve;
    return nullptr;
}

double ArmProcess::draw_cost() {
    return std::visit(Overloaded{
                          [](const CurveArmSpec& s) { return s.cost; },
                          [](const NoisyCurveArmSpec& s) { return s.cost; },
                          [this](const HpoArmSpec& s) { return s.mean_cost * rng_.uniform(0.8, 1.2); },
                      },
                      spec_);
}

double ArmProcess::next_cost() {
    if (!has_pending_cost_) {
        pending_cost_ = draw_cost();
        has_pending_cost_ = true;
    }
    return pending_cost_;
}

double ArmProcess::draw_reward() {
    const std::size_t n = pulls_ + 1;
    double candidate = std::visit(
        Overloaded{
            [n](const CurveArmSpec& s) { return s.curve.eval(n); },
            [this, n](const NoisyCurveArmSpec& s) {
                return std::clamp(s.curve.eval(n) - rng_.uniform(0.0, s.noise_amplitude), 0.0, 1.0);
            },
            [this](const HpoArmSpec&) { return hpo_->step(rng_); },
        },
        spec_);
    return pulls_ == 0 ? candidate : std::max(last_reward_, candidate);
}

PullResult ArmProcess::pull() {
    const double cost = next_cost();
    has_pending_cost_ = false;
    const double reward = draw_reward();
    ++pulls_;
    last_reward_ = reward;
    return {reward, cost};
}

std::uint64_t arm_seed(std::uint64_t stream_seed, std::size_t index) {
    return derive_seed(stream_seed, {kArmStreamTag, static_cast<std::uint64_t>(index)});
}

std::vector<ArmProcess> make_instance(const InstanceSpec& spec, std::uint64_t stream_seed) {
    if (spec.arms.empty()) throw ConfigError("instance needs at least one arm (K >= 1)");
    std::vector<ArmProcess> arms;
    arms.reserve(spec.arms.size());
    for (std::size_t k = 0; k < spec.arms.size(); ++k) {
        validate_arm_spec(spec.arms[k], "arm " + std::to_string(k + 1));
        arms.emplace_back(spec.arms[k], arm_seed(stream_seed, k));
    }
    return arms;
}

std::vector<double> replay_rewards(const ArmSpec& spec, std::uint64_t seed, std::size_t pulls) {
    ArmProcess arm(spec, seed);
    std::vector<double> out;
    out.reserve(pulls);
    for (std::size_t i = 0; i < pulls; ++i) out.push_back(arm.pull().reward);
    return out;
}

}  // namespace rising
