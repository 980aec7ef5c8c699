#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rising/curves.hpp"
#include "rising/rng.hpp"

namespace rising {

// A K-arm ground-truth instance with its horizon.
struct CurveCase {
    std::vector<RewardCurve> curves;
    std::size_t horizon = 0;
};

// Random strictly concave curve: exponential or power family, half each.
RewardCurve random_concave_curve(Rng& rng);

CurveCase random_concave_case(Rng& rng, std::size_t k_min, std::size_t k_max, std::size_t t_min, std::size_t t_max);

// Loose-concavity instance: staircase arms (plateau = window) mixed with exact
// concave arms. Not filtered; see theorem2_qualification.
CurveCase random_staircase_case(Rng& rng, std::size_t window);

struct Theorem2Qualification {
    bool ratio_condition = false;  // every arm's first T rewards pass against its concave majorant
    bool unique_optimum = false;   // the best arm at T is unique
    bool identifiable = false;     // gamma(T) separation on the majorants fits in T: K * gamma <= T
};

Theorem2Qualification theorem2_qualification(const CurveCase& c, std::size_t window);

// Outcome of one verification suite.
struct SuiteResult {
    std::string name;
    std::size_t total = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;  // instances outside the suite's precondition
    std::vector<std::string> failures;  // first few, human readable
    std::string summary;

    [[nodiscard]] std::size_t passed() const { return total - failed; }
    [[nodiscard]] bool ok() const { return failed == 0 && total > 0; }
};

inline constexpr std::uint64_t kDefaultSuiteSeed = 20200407;

// lemma1, safety, theorem1, corollary1, theorem2.
const std::vector<std::string>& suite_names();

// Throws ConfigError for an unknown name.
SuiteResult run_suite(std::string_view name, std::uint64_t seed = kDefaultSuiteSeed);

// Sizes of the shipped suites.
inline constexpr std::size_t kLemma1Instances = 200;
inline constexpr std::size_t kConcaveInstances = 1000;
inline constexpr std::size_t kTheorem2Instances = 100;
inline constexpr double kSuiteTolerance = 1e-12;

}  // namespace rising
