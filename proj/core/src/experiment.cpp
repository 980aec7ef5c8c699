#include "rising/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace rising {

namespace {

using nlohmann::ordered_json;

struct Entry {
    std::string value;
    std::size_t line = 0;
};

// One "key = value" section: the global header or an [arm] block.
struct Section {
    std::size_t line = 0;
    std::map<std::string, Entry> entries;
    std::vector<std::string> order;
    std::set<std::string> used;
};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

class Reader {
public:
    Reader(std::string_view source, std::string prefix) : source_(source), prefix_(std::move(prefix)) {}

    [[noreturn]] void fail(const Section& sec, const std::string& key, const std::string& what) const {
        const auto it = sec.entries.find(key);
        const std::size_t line = it != sec.entries.end() ? it->second.line : sec.line;
        throw ConfigError(std::string(source_) + ":" + std::to_string(line) + ": " + prefix_ + key + ": " + what);
    }

    const Entry* find(Section& sec, const std::string& key) const {
        const auto it = sec.entries.find(key);
        if (it == sec.entries.end()) return nullptr;
        sec.used.insert(key);
        return &it->second;
    }

    std::string text(Section& sec, const std::string& key) const {
        const Entry* e = find(sec, key);
        if (e == nullptr) fail(sec, key, "required field is missing");
        return e->value;
    }

    double number(Section& sec, const std::string& key, std::optional<double> fallback = std::nullopt) const {
        const Entry* e = find(sec, key);
        if (e == nullptr) {
            if (fallback) return *fallback;
            fail(sec, key, "required field is missing");
        }
        return parse_double(sec, key, e->value);
    }

    std::uint64_t integer(Section& sec, const std::string& key, std::optional<std::uint64_t> fallback = std::nullopt) const {
        const Entry* e = find(sec, key);
        if (e == nullptr) {
            if (fallback) return *fallback;
            fail(sec, key, "required field is missing");
        }
        std::uint64_t v = 0;
        const std::string& s = e->value;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) fail(sec, key, "expected a non-negative integer, got \"" + s + "\"");
        return v;
    }

    double parse_double(const Section& sec, const std::string& key, const std::string& s) const {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
            fail(sec, key, "expected a finite number, got \"" + s + "\"");
        }
        return v;
    }

    void reject_unused(const Section& sec) const {
        for (const std::string& key : sec.order) {
            if (!sec.used.contains(key)) fail(sec, key, "unknown field");
        }
    }

private:
    std::string_view source_;
    std::string prefix_;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(trim(item));
    return out;
}

template <class Make>
RewardCurve checked(Section& sec, const Reader& rd, Make make) {
    try {
        return make();
    } catch (const ConfigError& e) {
        rd.fail(sec, "curve", e.what());
    }
}

RewardCurve read_curve(Section& sec, const Reader& rd, const std::string& family) {
    if (family == "exponential") {
        const double limit = rd.number(sec, "limit");
        const double initial = rd.number(sec, "initial");
        const double decay = rd.number(sec, "decay");
        return checked(sec, rd, [&] { return RewardCurve::exponential(limit, initial, decay); });
    }
    if (family == "power") {
        const double limit = rd.number(sec, "limit");
        const double scale = rd.number(sec, "scale");
        const double exponent = rd.number(sec, "exponent");
        return checked(sec, rd, [&] { return RewardCurve::power(limit, scale, exponent); });
    }
    if (family == "tabulated") {
        std::vector<double> values;
        for (const std::string& v : split_list(rd.text(sec, "values"))) values.push_back(rd.parse_double(sec, "values", v));
        return checked(sec, rd, [&] { return RewardCurve::tabulated(values); });
    }
    if (family == "staircase") {
        const std::string base = rd.text(sec, "base");
        if (base != "exponential" && base != "power") rd.fail(sec, "base", "staircase base must be exponential or power");
        RewardCurve inner = read_curve(sec, rd, base);
        const std::uint64_t plateau = rd.integer(sec, "plateau");
        const double jump = rd.number(sec, "jump");
        return checked(sec, rd, [&] { return RewardCurve::staircase(inner, plateau, jump); });
    }
    rd.fail(sec, "curve", "unknown curve family \"" + family + "\" (expected exponential, power, tabulated, staircase)");
}

ArmSpec read_arm(Section& sec, std::size_t index, std::string_view source) {
    const Reader rd(source, "arm " + std::to_string(index) + ": ");
    const std::string type = rd.text(sec, "type");
    ArmSpec spec = CurveArmSpec{RewardCurve::exponential(1.0, 1.0, 0.5)};
    if (type == "curve") {
        RewardCurve c = read_curve(sec, rd, rd.text(sec, "curve"));
        spec = CurveArmSpec{std::move(c), rd.number(sec, "cost", 1.0)};
    } else if (type == "noisy") {
        RewardCurve c = read_curve(sec, rd, rd.text(sec, "curve"));
        const double noise = rd.number(sec, "noise");
        spec = NoisyCurveArmSpec{std::move(c), noise, rd.number(sec, "cost", 1.0)};
    } else if (type == "hpo") {
        HpoArmSpec h;
        const std::string objective = rd.text(sec, "objective");
        try {
            h.objective = parse_objective(objective);
        } catch (const ConfigError& e) {
            rd.fail(sec, "objective", e.what());
        }
        h.dimension = rd.integer(sec, "dimension", 2);
        if (const Entry* e = rd.find(sec, "strategy")) {
            try {
                h.strategy = parse_strategy(e->value);
            } catch (const ConfigError& e) {
                rd.fail(sec, "strategy", e.what());
            }
        }
        h.mean_cost = rd.number(sec, "cost", 1.0);
        spec = h;
    } else {
        rd.fail(sec, "type", "unknown arm type \"" + type + "\" (expected curve, noisy, hpo)");
    }
    rd.reject_unused(sec);
    try {
        validate_arm_spec(spec, "arm " + std::to_string(index));
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(source) + ":" + std::to_string(sec.line) + ": " + e.what());
    }
    return spec;
}

std::vector<Section> split_sections(std::string_view text, std::string_view source) {
    std::vector<Section> sections(1);
    sections[0].line = 1;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
        if (line.front() == '[') {
            if (line != "[arm]") throw ConfigError(where + "unknown section " + line + " (only [arm] is allowed)");
            Section s;
            s.line = line_no;
            sections.push_back(std::move(s));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + "expected \"key = value\"");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) throw ConfigError(where + "missing key before '='");
        if (value.empty()) throw ConfigError(where + key + ": empty value");
        Section& cur = sections.back();
        if (cur.entries.contains(key)) throw ConfigError(where + key + ": duplicate field");
        cur.entries.emplace(key, Entry{value, line_no});
        cur.order.push_back(key);
    }
    return sections;
}

ordered_json finite(double x) {
    if (!std::isfinite(x)) throw std::logic_error("non-finite number in report");
    return x;
}

std::string clock_name(BoundClock c) { return c == BoundClock::ArmPulls ? "arm_pulls" : "global_step"; }

ordered_json run_settings(const ExperimentConfig& config) {
    ordered_json j;
    if (const auto* t = std::get_if<TrialsHorizon>(&config.bandit.horizon)) {
        j["mode"] = "trials";
        j["horizon"] = t->trials;
    } else {
        j["mode"] = "budget";
        j["budget"] = finite(std::get<BudgetHorizon>(config.bandit.horizon).budget);
    }
    const bool smooth = config.bandit.growth.kind == GrowthMode::Kind::Smooth;
    j["growth"] = smooth ? "smooth" : "last";
    if (smooth) j["smooth_c"] = config.bandit.growth.window;
    j["clock"] = clock_name(config.bandit.clock);
    j["epsilon"] = finite(config.bandit.epsilon);
    j["arms"] = config.instance.arms.size();
    j["replications"] = config.replications;
    j["base_seed"] = config.base_seed;
    j["policies"] = config.policy_names();
    return j;
}

void check_invariants(const ExperimentConfig& config, const ReplicationResult& rep, std::vector<std::string>& out) {
    const auto* trials = std::get_if<TrialsHorizon>(&config.bandit.horizon);
    const std::string tag = "replication " + std::to_string(rep.replication) + ", ";
    for (std::size_t p = 0; p < rep.traces.size(); ++p) {
        const PolicyTrace& tr = rep.traces[p];
        const std::string who = tag + config.policies[p].name() + ": ";
        std::size_t pulled = 0;
        for (const std::size_t n : tr.pull_counts) pulled += n;
        if (pulled != tr.length()) out.push_back(who + "pull counts do not sum to the trace length");
        if (trials && tr.length() != trials->trials) out.push_back(who + "trace length differs from T");
        if (!trials && tr.total_cost > std::get<BudgetHorizon>(config.bandit.horizon).budget) {
            out.push_back(who + "total cost exceeds the budget");
        }
        double best = 0.0;
        for (const StepRecord& s : tr.steps) best = std::max(best, s.reward);
        if (!tr.steps.empty() && best != tr.final_j) out.push_back(who + "final J differs from the max step reward");
        const PolicyOutcome& o = rep.report.outcomes[p];
        if (o.oracle_exceeded) {
            out.push_back(who + "J = " + format_double(o.j) + " exceeds the offline oracle " +
                          format_double(rep.report.j_oracle));
        }
    }
    if (rep.report.theorem1_bound < 0.0) out.push_back(tag + "negative theorem 1 bound");
}

ReplicationResult run_replication(const ExperimentConfig& config, std::size_t replication) {
    ReplicationResult rep;
    rep.replication = replication;
    rep.instance_seed = instance_seed(config.base_seed, replication);
    const std::vector<ArmProcess> instance = make_instance(config.instance, rep.instance_seed);
    for (const Policy& p : config.policies) {
        rep.traces.push_back(simulate(p, instance, config.bandit, policy_seed(config.base_seed, p.name(), replication)));
    }
    const std::vector<std::string> names = config.policy_names();
    rep.report = build_report(replication, instance, config.bandit, names, rep.traces);
    return rep;
}

}  // namespace

std::vector<std::string> ExperimentConfig::policy_names() const {
    std::vector<std::string> out;
    for (const Policy& p : policies) out.push_back(p.name());
    return out;
}

ExperimentConfig parse_config(std::string_view text, std::string_view source) {
    std::vector<Section> sections = split_sections(text, source);
    Section& head = sections.front();
    const Reader rd(source, "");
    ExperimentConfig cfg;

    const bool has_trials = head.entries.contains("horizon");
    const bool has_budget = head.entries.contains("budget");
    if (has_trials == has_budget) {
        throw ConfigError(std::string(source) + ": horizon: exactly one of \"horizon\" (trials) or \"budget\" is required");
    }
    if (has_trials) {
        const std::uint64_t t = rd.integer(head, "horizon");
        if (t == 0) rd.fail(head, "horizon", "must be >= 1");
        cfg.bandit.horizon = TrialsHorizon{t};
    } else {
        const double b = rd.number(head, "budget");
        if (!(b > 0.0)) rd.fail(head, "budget", "must be > 0");
        cfg.bandit.horizon = BudgetHorizon{b};
    }

    std::string growth = "last";
    if (const Entry* e = rd.find(head, "growth")) growth = e->value;
    const std::uint64_t window = rd.integer(head, "smooth_c", GrowthMode::kDefaultWindow);
    if (growth == "last") {
        cfg.bandit.growth = GrowthMode::last();
        if (head.entries.contains("smooth_c")) rd.fail(head, "smooth_c", "only valid with growth = smooth");
    } else if (growth == "smooth") {
        if (window == 0) rd.fail(head, "smooth_c", "must be >= 1");
        cfg.bandit.growth = GrowthMode::smooth(window);
    } else {
        rd.fail(head, "growth", "expected last or smooth, got \"" + growth + "\"");
    }

    cfg.bandit.epsilon = rd.number(head, "epsilon", BanditConfig::kDefaultEpsilon);
    if (cfg.bandit.epsilon < 0.0) rd.fail(head, "epsilon", "must be >= 0");
    if (const Entry* e = rd.find(head, "clock")) {
        if (e->value == "arm_pulls") {
            cfg.bandit.clock = BoundClock::ArmPulls;
        } else if (e->value == "global_step") {
            cfg.bandit.clock = BoundClock::GlobalStep;
        } else {
            rd.fail(head, "clock", "expected arm_pulls or global_step, got \"" + e->value + "\"");
        }
    }

    cfg.replications = rd.integer(head, "replications", 1);
    if (cfg.replications == 0) rd.fail(head, "replications", "must be >= 1");
    cfg.base_seed = rd.integer(head, "base_seed", 0);
    if (const Entry* e = rd.find(head, "output")) cfg.output = e->value;

    UcbPolicy ucb;
    SoftmaxPolicy softmax;
    ThompsonPolicy thompson;
    ucb.coefficient = rd.number(head, "ucb.coefficient", UcbPolicy::kDefaultCoefficient);
    if (ucb.coefficient < 0.0) rd.fail(head, "ucb.coefficient", "must be >= 0");
    softmax.temperature = rd.number(head, "softmax.temperature", SoftmaxPolicy::kDefaultTemperature);
    if (!(softmax.temperature > 0.0)) rd.fail(head, "softmax.temperature", "must be > 0");
    thompson.prior_alpha = rd.number(head, "thompson.alpha", 1.0);
    thompson.prior_beta = rd.number(head, "thompson.beta", 1.0);
    if (!(thompson.prior_alpha > 0.0)) rd.fail(head, "thompson.alpha", "must be > 0");
    if (!(thompson.prior_beta > 0.0)) rd.fail(head, "thompson.beta", "must be > 0");

    std::set<std::string> seen;
    for (const std::string& name : split_list(rd.text(head, "policies"))) {
        if (name.empty()) rd.fail(head, "policies", "empty policy name");
        if (!Policy::is_known_name(name)) {
            rd.fail(head, "policies",
                    "unknown policy \"" + name + "\" (known: rising_bandit, average, ucb, softmax, thompson)");
        }
        if (!seen.insert(name).second) rd.fail(head, "policies", "policy \"" + name + "\" listed twice");
        if (name == "ucb") {
            cfg.policies.emplace_back(ucb);
        } else if (name == "softmax") {
            cfg.policies.emplace_back(softmax);
        } else if (name == "thompson") {
            cfg.policies.emplace_back(thompson);
        } else {
            cfg.policies.push_back(Policy::from_name(name));
        }
    }
    rd.reject_unused(head);

    if (sections.size() < 2) throw ConfigError(std::string(source) + ": arm: at least one [arm] block is required");
    for (std::size_t i = 1; i < sections.size(); ++i) {
        cfg.instance.arms.push_back(read_arm(sections[i], i, source));
    }

    for (std::size_t i = 0; i < sections.size(); ++i) {
        const std::string prefix = i == 0 ? "" : "arm." + std::to_string(i) + ".";
        for (const std::string& key : sections[i].order) cfg.echo.emplace_back(prefix + key, sections[i].entries[key].value);
    }
    cfg.bandit.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

std::uint64_t instance_seed(std::uint64_t base_seed, std::size_t replication) {
    return derive_seed(base_seed, {hash_name("instance"), static_cast<std::uint64_t>(replication)});
}

std::uint64_t policy_seed(std::uint64_t base_seed, std::string_view policy_name, std::size_t replication) {
    return derive_seed(base_seed, {hash_name("policy"), hash_name(policy_name), static_cast<std::uint64_t>(replication)});
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t jobs) {
    if (config.policies.empty()) throw ConfigError("policies: at least one policy is required");
    if (config.replications == 0) throw ConfigError("replications: must be >= 1");
    config.bandit.validate();

    ExperimentResult result;
    result.replications.resize(config.replications);
    const std::size_t workers = std::clamp<std::size_t>(jobs, 1, config.replications);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= config.replications) return;
            try {
                result.replications[i] = run_replication(config, i + 1);
            } catch (...) {
                const std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(config.replications);
                return;
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (error) std::rethrow_exception(error);

    for (const ReplicationResult& rep : result.replications) check_invariants(config, rep, result.violations);
    return result;
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) throw std::logic_error("number formatting failed");
    return std::string(buf, ptr);
}

std::string trace_csv(const ExperimentConfig& config, const ExperimentResult& result) {
    std::string out = "step,policy,replication,arm,reward,cost,candidate_set_size,best_so_far\n";
    for (const ReplicationResult& rep : result.replications) {
        for (std::size_t p = 0; p < rep.traces.size(); ++p) {
            const std::string name = config.policies[p].name();
            double best = 0.0;
            for (const StepRecord& s : rep.traces[p].steps) {
                best = std::max(best, s.reward);
                out += std::to_string(s.step) + ',' + name + ',' + std::to_string(rep.replication) + ',' +
                       std::to_string(s.arm) + ',' + format_double(s.reward) + ',' + format_double(s.cost) + ',' +
                       std::to_string(s.candidate_set_size) + ',' + format_double(best) + '\n';
            }
        }
    }
    return out;
}

std::string report_json(const ExperimentConfig& config, const ExperimentResult& result) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["settings"] = run_settings(config);

    ordered_json reps = ordered_json::array();
    for (const ReplicationResult& rep : result.replications) {
        const RegretReport& r = rep.report;
        ordered_json j;
        j["replication"] = rep.replication;
        j["horizon"] = r.horizon;
        j["j_oracle"] = finite(r.j_oracle);
        j["oracle_arm"] = r.oracle_arm;
        j["gamma_t"] = r.gamma_t;
        j["gamma_per_arm"] = r.gamma_per_arm;
        j["identifiable"] = r.identifiable;
        j["theorem1_bound"] = finite(r.theorem1_bound);
        j["theorem1_vacuous"] = r.theorem1_vacuous;
        j["corollary1_condition_holds"] = r.corollary1_condition_holds;
        j["average_policy_regret"] = finite(r.average_policy_regret);
        j["theorem2_condition_holds"] = r.theorem2_condition_holds ? ordered_json(*r.theorem2_condition_holds) : ordered_json();
        j["concave_instance"] = r.concave_instance;
        ordered_json outcomes = ordered_json::array();
        for (const PolicyOutcome& o : r.outcomes) {
            outcomes.push_back({{"policy", o.policy},
                                {"j", finite(o.j)},
                                {"regret", finite(o.regret)},
                                {"best_arm", o.best_arm},
                                {"pull_counts", o.pull_counts},
                                {"total_cost", finite(o.total_cost)},
                                {"oracle_exceeded", o.oracle_exceeded}});
        }
        j["outcomes"] = std::move(outcomes);
        j["interpretation_notes"] = r.interpretation_notes;
        reps.push_back(std::move(j));
    }
    doc["replications"] = std::move(reps);

    // Means over replications, summed in replication order.
    ordered_json summary = ordered_json::array();
    const auto n = static_cast<double>(result.replications.size());
    for (std::size_t p = 0; p < config.policies.size(); ++p) {
        double sum_j = 0.0;
        double sum_regret = 0.0;
        double max_regret = 0.0;
        double oracle_share = 0.0;
        for (const ReplicationResult& rep : result.replications) {
            const PolicyOutcome& o = rep.report.outcomes[p];
            sum_j += o.j;
            sum_regret += o.regret;
            max_regret = std::max(max_regret, o.regret);
            std::size_t total = 0;
            for (const std::size_t c : o.pull_counts) total += c;
            if (total > 0) oracle_share += static_cast<double>(o.pull_counts[rep.report.oracle_arm - 1]) / static_cast<double>(total);
        }
        summary.push_back({{"policy", config.policies[p].name()},
                           {"mean_j", finite(sum_j / n)},
                           {"mean_regret", finite(sum_regret / n)},
                           {"max_regret", finite(max_regret)},
                           {"mean_oracle_arm_share", finite(oracle_share / n)}});
    }
    doc["summary"] = std::move(summary);
    doc["invariant_violations"] = result.violations;
    return doc.dump(2) + "\n";
}

std::string manifest_json(const ExperimentConfig& config, const ExperimentResult& result, std::string_view seed_source,
                          std::string_view timestamp) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["timestamp"] = std::string(timestamp);
    doc["base_seed"] = config.base_seed;
    doc["seed_source"] = std::string(seed_source);
    doc["seed_scheme"] =
        "derive_seed(base, path) = fold of splitmix64 over path; instance seed = derive_seed(base, [fnv1a(\"instance\"), r]); "
        "arm k seed = derive_seed(instance seed, [0x41524d, k - 1]); policy seed = derive_seed(base, [fnv1a(\"policy\"), "
        "fnv1a(name), r])";
    ordered_json seeds = ordered_json::array();
    for (const ReplicationResult& rep : result.replications) {
        ordered_json arms = ordered_json::array();
        for (std::size_t k = 0; k < config.instance.arms.size(); ++k) arms.push_back(arm_seed(rep.instance_seed, k));
        ordered_json pols = ordered_json::object();
        for (const Policy& p : config.policies) pols[p.name()] = policy_seed(config.base_seed, p.name(), rep.replication);
        seeds.push_back({{"replication", rep.replication},
                         {"instance_seed", rep.instance_seed},
                         {"arm_seeds", std::move(arms)},
                         {"policy_seeds", std::move(pols)}});
    }
    doc["seeds"] = std::move(seeds);
    doc["settings"] = run_settings(config);
    ordered_json echo = ordered_json::object();
    for (const auto& [k, v] : config.echo) echo[k] = v;
    doc["config"] = std::move(echo);
    doc["outputs"] = {kTraceFile, kReportFile};
    return doc.dump(2) + "\n";
}

void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& config, const ExperimentResult& result,
                   std::string_view seed_source, std::string_view timestamp) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("output: cannot create directory " + dir.string() + ": " + ec.message());
    auto put = [&](const char* name, const std::string& body) {
        const std::filesystem::path p = dir / name;
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("output: cannot write " + p.string());
        out << body;
        if (!out) throw ConfigError("output: write failed for " + p.string());
    };
    put(kTraceFile, trace_csv(config, result));
    put(kReportFile, report_json(config, result));
    put(kManifestFile, manifest_json(config, result, seed_source, timestamp));
}

}  // namespace rising
