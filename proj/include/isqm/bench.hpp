#pragma once

/**
 * @file bench.hpp
 * @brief Step-count trials for the walk and their summary statistics.
 *
 * A "step" is one walk iteration (a division, a 3x+1 map or a square
 * root). Trial i draws its exponent and seeds its walk from seed_base + i,
 * so the same (field, seed) pair sees the same target under every variant.
 * Wall time is only measured on request; without it the CSV is a pure
 * function of the inputs.
 */

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "isqm/walk.hpp"

namespace isqm {

struct TrialRecord {
    std::string variant;
    std::string field;
    Int group_order;
    Int n_true;
    std::uint64_t seed = 0;
    std::uint64_t steps = 0;
    std::uint64_t restarts = 0;
    bool success = false;
    std::uint64_t nanos = 0;
};

struct StepStats {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double success_rate = 0.0;
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;
    /// mean / sqrt(N)
    double normalized = 0.0;
};

struct TrialOptions {
    bool measure_time = false;
    unsigned workers = 1;
};

/// Exponent drawn for trial seed s; independent of the variant.
inline Int trial_exponent(std::uint64_t seed, const Int& order) {
    std::mt19937_64 rng(mix_seed(seed, 0x7e57));
    return uniform_below(rng, order);
}

template <class Group>
TrialRecord run_one_trial(const Group& group, const PrecomputedTable<Group>& table, WalkConfig config,
                          std::uint64_t seed, bool measure_time) {
    TrialRecord rec;
    rec.variant = to_string(config.variant);
    rec.field = group.id();
    rec.group_order = group.order();
    rec.seed = seed;
    rec.n_true = trial_exponent(seed, group.order());
    const auto target = group.pow(group.generator(), rec.n_true);

    config.seed = seed;
    config.scripted.reset();
    config.trace = false;
    const auto start = std::chrono::steady_clock::now();
    const auto result = run_dlog(group, target, config, &table);
    const auto stop = std::chrono::steady_clock::now();

    rec.steps = result.steps_taken;
    rec.restarts = result.restarts;
    rec.success = result.solved && mod_floor(result.n - rec.n_true, group.order()) == 0;
    if (measure_time)
        rec.nanos = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
    return rec;
}

/**
 * Run trial_count independent solves. Failures are recorded, never thrown.
 * Records come back in trial order whatever the worker count.
 */
template <class Group>
std::vector<TrialRecord> run_trials(const Group& group, const WalkConfig& config, std::uint64_t trial_count,
                                    std::uint64_t seed_base, const TrialOptions& options = {}) {
    if (trial_count < 1) throw std::invalid_argument("trial_count must be at least 1");
    const PrecomputedTable<Group> table(group, config.table_size, config.sequence_kind);
    std::vector<TrialRecord> records(trial_count);

    auto work = [&](std::uint64_t i) {
        records[i] = run_one_trial(group, table, config, seed_base + i, options.measure_time);
    };
    if (options.workers <= 1) {
        for (std::uint64_t i = 0; i < trial_count; ++i) work(i);
        return records;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < options.workers; ++w) {
        pool.emplace_back([&] {
            for (std::uint64_t i = next++; i < trial_count; i = next++) work(i);
        });
    }
    pool.clear();
    return records;
}

/// Mean, median and sample standard deviation over successful trials.
inline StepStats summarize(const std::vector<TrialRecord>& records) {
    if (records.empty()) throw std::invalid_argument("summarize: no records");
    StepStats s;
    s.trials = records.size();
    std::vector<std::uint64_t> steps;
    for (const auto& r : records)
        if (r.success) steps.push_back(r.steps);
    s.successes = steps.size();
    s.success_rate = static_cast<double>(s.successes) / static_cast<double>(s.trials);
    if (steps.empty()) return s;

    std::sort(steps.begin(), steps.end());
    const Int total = std::accumulate(steps.begin(), steps.end(), Int(0),
                                      [](const Int& acc, std::uint64_t v) { return acc + v; });
    const auto count = static_cast<double>(steps.size());
    s.mean = total.convert_to<double>() / count;
    const std::size_t mid = steps.size() / 2;
    s.median = steps.size() % 2 ? static_cast<double>(steps[mid])
                                : (static_cast<double>(steps[mid - 1]) + static_cast<double>(steps[mid])) / 2.0;
    if (steps.size() > 1) {
        double sq = 0.0;
        for (auto v : steps) sq += (static_cast<double>(v) - s.mean) * (static_cast<double>(v) - s.mean);
        s.stddev = std::sqrt(sq / (count - 1.0));
    }
    const double order = records.front().group_order.convert_to<double>();
    s.normalized = s.mean / std::sqrt(order);
    return s;
}

inline constexpr const char* kCsvHeader = "variant,prime_or_field,n_true,seed,steps,restarts,success,nanos";

inline void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.variant << ',' << r.field << ',' << r.n_true << ',' << r.seed << ',' << r.steps << ','
            << r.restarts << ',' << (r.success ? 1 : 0) << ',' << r.nanos << '\n';
    }
}

inline nlohmann::json to_json(const StepStats& s) {
    return nlohmann::json{{"trials", s.trials},
                          {"successes", s.successes},
                          {"success_rate", s.success_rate},
                          {"mean_steps", s.mean},
                          {"median_steps", s.median},
                          {"stddev_steps", s.stddev},
                          {"mean_over_sqrt_order", s.normalized}};
}

}  // namespace isqm
