#include <benchmark/benchmark.h>

#include <vector>

#include "rising/bandit.hpp"
#include "rising/curves.hpp"
#include "rising/harness.hpp"

using namespace rising;

namespace {

std::vector<RewardCurve> curves(std::size_t k) {
    std::vector<RewardCurve> out;
    for (std::size_t i = 0; i < k; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(k);
        out.push_back(RewardCurve::exponential(0.6 + 0.35 * x, 0.2 + 0.2 * x, 0.5 + 0.45 * x));
    }
    return out;
}

void BM_RisingBanditRun(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const auto t = static_cast<std::size_t>(state.range(1));
    const auto cs = curves(k);
    for (auto _ : state) {
        std::vector<ArmProcess> arms;
        for (std::size_t i = 0; i < k; ++i) arms.emplace_back(CurveArmSpec{cs[i]}, i + 1);
        benchmark::DoNotOptimize(rising_bandit_run(std::move(arms), BanditConfig::trials(t)));
    }
    state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_RisingBanditRun)->Args({4, 200})->Args({16, 500})->Args({64, 5000});

void BM_BruteForceOptimal(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const auto t = static_cast<std::size_t>(state.range(1));
    const auto cs = curves(k);
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_optimal(cs, t));
}
BENCHMARK(BM_BruteForceOptimal)->Args({2, 12})->Args({3, 10})->Args({4, 8});

void BM_HpoPull(benchmark::State& state) {
    const auto strategy = state.range(0) == 0 ? SearchStrategy::Random : SearchStrategy::DensityEstimator;
    for (auto _ : state) {
        ArmProcess arm(HpoArmSpec{HpoObjective::Rosenbrock, 4, strategy}, 11);
        for (int i = 0; i < 100; ++i) benchmark::DoNotOptimize(arm.pull());
    }
    state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_HpoPull)->Arg(0)->Arg(1);

}  // namespace
BENCHMARK_MAIN();
