#include <gtest/gtest.h>

#include <map>

#include "rising/harness.hpp"
#include "rising/policies.hpp"

using namespace rising;

namespace {

std::vector<ArmState> states_with(const std::vector<std::vector<double>>& histories) {
    std::vector<ArmState> s = make_states(histories.size());
    for (std::size_t i = 0; i < histories.size(); ++i) {
        for (const double y : histories[i]) s[i].record(y, 1.0);
    }
    return s;
}

}  // namespace

TEST(Average, RoundRobin) {
    Policy p(AveragePolicy{});
    const auto s = states_with({{}, {}, {}});
    std::vector<ArmId> got;
    for (std::size_t t = 1; t <= 6; ++t) got.push_back(p.select(s, t));
    EXPECT_EQ(got, (std::vector<ArmId>{1, 2, 3, 1, 2, 3}));
}

TEST(Ucb, PrefersHigherMean) {
    Policy p(UcbPolicy{1.0});
    EXPECT_EQ(p.select(states_with({{0.9}, {0.1}}), 3), 1u);
}

TEST(Ucb, ForcesUnpulledArms) {
    Policy p(UcbPolicy{});
    EXPECT_EQ(p.select(states_with({{0.9}, {}, {0.1}}), 2), 2u);
}

TEST(Ucb, ExplorationCanOverrideMean) {
    Policy p(UcbPolicy{1.0});
    // Arm 2 is rarely pulled: 0.5 + sqrt(ln 21 / 1) > 0.6 + sqrt(ln 21 / 20).
    const auto s = states_with({std::vector<double>(20, 0.6), {0.5}});
    EXPECT_EQ(p.select(s, 21), 2u);
}

TEST(Softmax, ForcesUnpulledArms) {
    Policy p(SoftmaxPolicy{}, 3);
    EXPECT_EQ(p.select(states_with({{0.9}, {0.9}, {}}), 3), 3u);
}

TEST(Softmax, HighTemperatureIsUniform) {
    Policy p(SoftmaxPolicy{1e9}, 12345);
    const auto s = states_with({{0.9}, {0.1}, {0.5}, {0.3}});
    std::vector<double> counts(4, 0.0);
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) counts[p.select(s, 5 + i) - 1] += 1.0;
    double chi2 = 0.0;
    for (const double c : counts) chi2 += (c - draws / 4.0) * (c - draws / 4.0) / (draws / 4.0);
    EXPECT_LT(chi2, 16.27);  // 3 dof, p = 0.001
}

TEST(Softmax, LowTemperatureIsGreedy) {
    Policy p(SoftmaxPolicy{0.001}, 1);
    const auto s = states_with({{0.2}, {0.9}, {0.5}});
    for (int i = 0; i < 100; ++i) EXPECT_EQ(p.select(s, 4 + i), 2u);
}

TEST(Thompson, PrefersStrongArm) {
    Policy p(ThompsonPolicy{}, 99);
    const auto s = states_with({std::vector<double>(40, 0.95), std::vector<double>(40, 0.05)});
    int first = 0;
    for (int i = 0; i < 200; ++i) first += p.select(s, 81 + i) == 1u ? 1 : 0;
    EXPECT_EQ(first, 200);
}

TEST(Thompson, ReproducibleUnderSeed) {
    const auto s = states_with({{0.5, 0.6}, {0.55, 0.58}, {0.4}});
    Policy a(ThompsonPolicy{}, 7);
    Policy b(ThompsonPolicy{}, 7);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.select(s, 6 + i), b.select(s, 6 + i));
}

TEST(Policy, NamesRoundTrip) {
    for (const char* n : {"rising_bandit", "average", "ucb", "softmax", "thompson"}) {
        EXPECT_TRUE(Policy::is_known_name(n));
        EXPECT_EQ(Policy::from_name(n).name(), n);
    }
    EXPECT_FALSE(Policy::is_known_name("smacx"));
    EXPECT_THROW(Policy::from_name("smacx"), ConfigError);
}

TEST(Policy, RisingBanditMarkerDoesNotSelect) {
    Policy p(RisingBanditPolicy{});
    EXPECT_TRUE(p.delegates_to_bandit());
    EXPECT_THROW(p.select(states_with({{0.5}}), 2), std::logic_error);
}

TEST(Policy, TiesGoToLowestId) {
    Policy p(UcbPolicy{});
    EXPECT_EQ(p.select(states_with({{0.5}, {0.5}, {0.5}}), 4), 1u);
}

TEST(Policy, AverageSplitsExactly) {
    const RewardCurve c = RewardCurve::exponential(0.9, 0.2, 0.8);
    std::vector<ArmProcess> arms;
    for (int k = 0; k < 4; ++k) arms.emplace_back(CurveArmSpec{c}, k);
    const PolicyTrace tr = simulate(Policy(AveragePolicy{}), arms, BanditConfig::trials(4 * 7), 0);
    EXPECT_EQ(tr.pull_counts, (std::vector<std::size_t>{7, 7, 7, 7}));
}

TEST(Policy, ForcedInitializationInRuns) {
    const RewardCurve c = RewardCurve::exponential(0.9, 0.2, 0.8);
    std::vector<ArmProcess> arms;
    for (int k = 0; k < 5; ++k) arms.emplace_back(CurveArmSpec{c.scaled(1.0 - 0.1 * k)}, k);
    for (const char* name : {"ucb", "softmax"}) {
        const PolicyTrace tr = simulate(Policy::from_name(name), arms, BanditConfig::trials(50), 3);
        for (std::size_t t = 0; t < 5; ++t) EXPECT_EQ(tr.steps[t].arm, t + 1) << name;
    }
}

TEST(Policy, StochasticRunsReproducible) {
    const RewardCurve c = RewardCurve::exponential(0.9, 0.2, 0.8);
    std::vector<ArmProcess> arms;
    for (int k = 0; k < 3; ++k) arms.emplace_back(NoisyCurveArmSpec{c, 0.2}, 10 + k);
    for (const char* name : {"softmax", "thompson"}) {
        const PolicyTrace a = simulate(Policy::from_name(name), arms, BanditConfig::trials(60), 8);
        const PolicyTrace b = simulate(Policy::from_name(name), arms, BanditConfig::trials(60), 8);
        ASSERT_EQ(a.length(), b.length());
        for (std::size_t i = 0; i < a.length(); ++i) {
            EXPECT_EQ(a.steps[i].arm, b.steps[i].arm);
            EXPECT_EQ(a.steps[i].reward, b.steps[i].reward);
        }
    }
}
