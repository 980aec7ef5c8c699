#include "rising/hpo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>

#include "rising/errors.hpp"

namespace rising {

HpoObjective parse_objective(std::string_view name) {
    if (name == "sphere") return HpoObjective::Sphere;
    if (name == "rosenbrock") return HpoObjective::Rosenbrock;
    if (name == "quadratic") return HpoObjective::Quadratic;
    throw ConfigError("unknown objective '" + std::string(name) + "' (expected sphere, rosenbrock, quadratic)");
}

SearchStrategy parse_strategy(std::string_view name) {
    if (name == "random") return SearchStrategy::Random;
    if (name == "density" || name == "density_estimator") return SearchStrategy::DensityEstimator;
    throw ConfigError("unknown search strategy '" + std::string(name) + "' (expected random, density)");
}

std::string to_string(HpoObjective objective) {
    switch (objective) {
        case HpoObjective::Sphere: return "sphere";
        case HpoObjective::Rosenbrock: return "rosenbrock";
        case HpoObjective::Quadratic: return "quadratic";
    }
    return "?";
}

std::string to_string(SearchStrategy strategy) {
    return strategy == SearchStrategy::Random ? "random" : "density";
}

HpoProcess::HpoProcess(HpoObjective objective, std::size_t dimension, SearchStrategy strategy, Rng& rng)
    : objective_(objective),
      dimension_(dimension),
      strategy_(strategy),
      lower_(objective == HpoObjective::Rosenbrock ? -2.0 : -5.0),
      upper_(objective == HpoObjective::Rosenbrock ? 2.0 : 5.0),
      best_loss_(std::numeric_limits<double>::infinity()) {
    if (dimension < kMinDimension || dimension > kMaxDimension) {
        throw ConfigError("HPO dimension must be in [2, 5], got " + std::to_string(dimension));
    }
    if (objective_ == HpoObjective::Quadratic) {
        optimum_.resize(dimension_);
        curvature_.resize(dimension_);
        for (std::size_t i = 0; i < dimension_; ++i) {
            optimum_[i] = rng.uniform(0.6 * lower_, 0.6 * upper_);
            curvature_[i] = rng.uniform(0.5, 5.0);
        }
    }
    // Normalizer: worst corner of the box.
    reference_loss_ = 0.0;
    std::vector<double> corner(dimension_);
    for (std::size_t mask = 0; mask < (std::size_t{1} << dimension_); ++mask) {
        for (std::size_t i = 0; i < dimension_; ++i) corner[i] = (mask >> i) & 1U ? upper_ : lower_;
        reference_loss_ = std::max(reference_loss_, loss(corner));
    }
}

double HpoProcess::loss(const std::vector<double>& point) const {
    double total = 0.0;
    switch (objective_) {
        case HpoObjective::Sphere:
            for (const double x : point) total += x * x;
            break;
        case HpoObjective::Rosenbrock:
            for (std::size_t i = 0; i + 1 < point.size(); ++i) {
                const double a = point[i + 1] - point[i] * point[i];
                const double b = 1.0 - point[i];
                total += 100.0 * a * a + b * b;
            }
            break;
        case HpoObjective::Quadratic:
            for (std::size_t i = 0; i < point.size(); ++i) {
                const double d = point[i] - optimum_[i];
                total += curvature_[i] * d * d;
            }
            break;
    }
    return total;
}

std::vector<double> HpoProcess::propose_random(Rng& rng) const {
    std::vector<double> point(dimension_);
    for (double& x : point) x = rng.uniform(lower_, upper_);
    return point;
}

namespace {

// Product of per-axis Gaussian kernels, averaged over the sample.
// Gaussian KDE mixed with one uniform pseudo-observation over the box, both
// without the (2 pi)^(-d/2) factor. The uniform part keeps the bad density
// away from zero where no trial has been made yet.
double kde_density(const std::vector<const Trial*>& sample, const std::vector<double>& bandwidth,
                   const std::vector<double>& x, double span) {
    const auto d = static_cast<double>(x.size());
    double sum = std::pow(2.0 * std::numbers::pi, 0.5 * d) / std::pow(span, d);
    for (const Trial* trial : sample) {
        double log_k = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double z = (x[i] - trial->point[i]) / bandwidth[i];
            log_k += -0.5 * z * z - std::log(bandwidth[i]);
        }
        sum += std::exp(log_k);
    }
    return sum / static_cast<double>(sample.size() + 1);
}

std::vector<double> scott_bandwidth(const std::vector<const Trial*>& sample, std::size_t dim, double span) {
    std::vector<double> bw(dim);
    const double n = static_cast<double>(sample.size());
    for (std::size_t i = 0; i < dim; ++i) {
        double mean = 0.0;
        for (const Trial* t : sample) mean += t->point[i];
        mean /= n;
        double var = 0.0;
        for (const Trial* t : sample) var += (t->point[i] - mean) * (t->point[i] - mean);
        var /= std::max(1.0, n - 1.0);
        const double scott = std::sqrt(var) * std::pow(n, -1.0 / (static_cast<double>(dim) + 4.0));
        bw[i] = std::clamp(scott, span / std::min(100.0, 1.0 + n), 0.5 * span);
    }
    return bw;
}

}  // namespace

// Splits trials at the median loss, samples candidates around the good half,
// keeps the one with the largest good/bad density ratio.
std::vector<double> HpoProcess::propose_density(Rng& rng) const {
    std::vector<const Trial*> order;
    order.reserve(trials_.size());
    for (const Trial& t : trials_) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(), [](const Trial* a, const Trial* b) { return a->loss < b->loss; });
    const std::size_t n_good = std::max<std::size_t>(1, order.size() / 2);
    const std::vector<const Trial*> good(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_good));
    const std::vector<const Trial*> bad(order.begin() + static_cast<std::ptrdiff_t>(n_good), order.end());

    const double span = upper_ - lower_;
    const auto bw_good = scott_bandwidth(good, dimension_, span);
    const auto bw_bad = scott_bandwidth(bad, dimension_, span);

    std::vector<double> best_candidate;
    double best_ratio = -1.0;
    for (std::size_t c = 0; c < kCandidates; ++c) {
        // Draw from the good mixture, uniform component included.
        const std::size_t pick = rng.below(good.size() + 1);
        std::vector<double> x(dimension_);
        if (pick == good.size()) {
            x = propose_random(rng);
        } else {
            for (std::size_t i = 0; i < dimension_; ++i) {
                x[i] = std::clamp(good[pick]->point[i] + bw_good[i] * rng.normal(), lower_, upper_);
            }
        }
        const double g = kde_density(good, bw_good, x, span);
        const double b = kde_density(bad, bw_bad, x, span);
        const double ratio = g / b;
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best_candidate = std::move(x);
        }
    }
    return best_candidate;
}

double HpoProcess::step(Rng& rng) {
    std::vector<double> point;
    if (strategy_ == SearchStrategy::Random || trials_.size() < kStartupTrials) {
        point = propose_random(rng);
    } else {
        point = propose_density(rng);
    }
    const double value = loss(point);
    best_loss_ = std::min(best_loss_, value);
    trials_.push_back({std::move(point), value});
    return std::clamp(1.0 - best_loss_ / reference_loss_, 0.0, 1.0);
}

}  // namespace rising
