// Command-line front end: solve, solve-gf2m, oracle, bench, selftest.
//
// Exit status: 0 success, 1 solver failure, 2 usage or I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "isqm/bench.hpp"
#include "isqm/oracles.hpp"
#include "isqm/report.hpp"
#include "isqm/selftest.hpp"
#include "isqm/walk.hpp"

namespace {

using namespace isqm;

constexpr int kOk = 0;
constexpr int kSolverFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldFlags {
    std::string p, gen, m, poly;
    std::vector<std::string> factors;
};

struct WalkFlags {
    std::size_t table_size = 16;
    std::string seq = "pow2";
    std::string variant;
    std::uint64_t seed = 1;
    std::string choices;
    std::uint64_t max_steps = 0;
    std::uint64_t max_restarts = 32;
    std::string max_candidates = "65536";
    unsigned workers = 1;
    bool verbose = false;
};

void add_prime_flags(CLI::App* cmd, FieldFlags& f, bool required) {
    auto* p = cmd->add_option("--p", f.p, "odd prime modulus (decimal)");
    auto* g = cmd->add_option("--gen", f.gen, "primitive root mod p (decimal)");
    cmd->add_option("--factors", f.factors, "prime factors of p-1, enables the primitivity check")->delimiter(',');
    if (required) {
        p->required();
        g->required();
    }
}

void add_binary_flags(CLI::App* cmd, FieldFlags& f, bool required) {
    auto* m = cmd->add_option("--m", f.m, "extension degree");
    auto* poly = cmd->add_option("--poly", f.poly, "modulus polynomial in hex, bit m set (x^7+x+1 = 0x83)");
    if (required) {
        m->required();
        poly->required();
    }
}

void add_walk_flags(CLI::App* cmd, WalkFlags& w, bool with_variant) {
    cmd->add_option("--table-size", w.table_size, "number of precomputed generator powers (B)");
    cmd->add_option("--seq", w.seq, "precomputed exponents: pow2 (2^j) or consecutive (j)");
    if (with_variant) cmd->add_option("--variant", w.variant, "inverse or collatz");
    cmd->add_option("--max-steps", w.max_steps, "per-walk step budget (default ceil(20 sqrt N))");
    cmd->add_option("--max-restarts", w.max_restarts, "restart limit before giving up");
    cmd->add_option("--max-candidates", w.max_candidates, "largest candidate set tried per collision");
}

Int parse_int_flag(const std::string& text, const char* name) {
    try {
        return parse_decimal(text);
    } catch (const std::exception&) {
        throw UsageError(std::string("--") + name + ": not a decimal integer: " + text);
    }
}

PrimeGroup make_prime_group(const FieldFlags& f) {
    std::optional<std::vector<Int>> factors;
    if (!f.factors.empty()) {
        factors.emplace();
        for (const auto& q : f.factors) factors->push_back(parse_int_flag(q, "factors"));
    }
    try {
        return PrimeGroup(PrimeGroupParams::make(parse_int_flag(f.p, "p"), parse_int_flag(f.gen, "gen"), factors));
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

BinaryGroup make_binary_group(const FieldFlags& f) {
    const Int m = parse_int_flag(f.m, "m");
    if (m < 1 || m > 4096) throw UsageError("--m must lie in [1, 4096]");
    Int poly;
    try {
        poly = parse_hex(f.poly);
    } catch (const std::exception&) {
        throw UsageError("--poly: not a hex literal: " + f.poly);
    }
    try {
        return BinaryGroup(BinaryFieldParams::make(static_cast<std::size_t>(m), poly));
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

std::vector<int> parse_choices(const std::string& text) {
    std::vector<int> bits;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "0") bits.push_back(0);
        else if (item == "1") bits.push_back(1);
        else throw UsageError("--choices takes a comma-separated list of 0/1 bits");
    }
    if (bits.empty()) throw UsageError("--choices is empty");
    return bits;
}

WalkConfig make_config(const WalkFlags& w, Variant variant) {
    WalkConfig c;
    c.table_size = w.table_size;
    try {
        c.sequence_kind = parse_sequence_kind(w.seq);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    c.variant = variant;
    c.seed = w.seed;
    if (w.max_steps > 0) c.max_steps = w.max_steps;
    c.max_restarts = w.max_restarts;
    c.max_candidates = parse_int_flag(w.max_candidates, "max-candidates");
    if (!w.choices.empty()) c.scripted = parse_choices(w.choices);
    c.trace = w.verbose;
    return c;
}

template <class Group>
int solve_and_report(const Group& group, const std::string& target_text, const WalkFlags& w, Variant variant) {
    typename Group::Element target;
    try {
        target = group.parse(target_text);
    } catch (const std::exception& e) {
        throw UsageError(std::string("--target: ") + e.what());
    }
    if (group.is_zero(target)) throw UsageError("--target must be nonzero");
    WalkConfig config = make_config(w, variant);

    DlogResult<Group> result;
    try {
        result = run_dlog_parallel(group, target, config, w.workers);
    } catch (const UnsupportedGroupError& e) {
        throw UsageError(e.what());
    } catch (const DecisionExhaustedError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kSolverFailure;
    }
    if (!result.solved) {
        std::cerr << "solver failure: no verified logarithm after " << result.restarts << " restarts\n";
        print_summary(std::cerr, result);
        return kSolverFailure;
    }
    if (group.pow(group.generator(), result.n) != target) {
        std::cerr << "internal error: logarithm failed re-verification\n";
        return kSolverFailure;
    }
    std::cout << result.n << '\n';
    print_summary(std::cout, result);
    if (w.verbose) print_trace(std::cout, group, result.trace);
    return kOk;
}

template <class Group>
int run_bench(const Group& group, const WalkFlags& w, Variant variant, std::uint64_t trials,
              const std::string& csv_path, const std::string& json_path, bool timing) {
    WalkConfig config = make_config(w, variant);
    if (config.scripted) throw UsageError("bench draws its own decisions; --choices is not accepted");
    std::ofstream csv, json;
    if (!csv_path.empty()) {
        csv.open(csv_path);
        if (!csv) throw UsageError("cannot write " + csv_path);
    }
    if (!json_path.empty()) {
        json.open(json_path);
        if (!json) throw UsageError("cannot write " + json_path);
    }
    std::vector<TrialRecord> records;
    try {
        records = run_trials(group, config, trials, w.seed, TrialOptions{timing, w.workers});
    } catch (const UnsupportedGroupError& e) {
        throw UsageError(e.what());
    }
    const StepStats stats = summarize(records);
    if (csv) write_csv(csv, records);
    nlohmann::json summary = to_json(stats);
    summary["variant"] = to_string(variant);
    summary["field"] = group.id();
    summary["group_order"] = group.order().str();
    summary["seed_base"] = w.seed;
    if (json) json << summary.dump(2) << '\n';
    if ((csv_path.size() && !csv) || (json_path.size() && !json)) throw UsageError("write failed");
    std::cout << summary.dump(2) << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete logarithms by randomized inverse square-and-multiply walks"};
    app.require_subcommand(1);

    FieldFlags solve_field;
    WalkFlags solve_walk;
    std::string solve_target;
    auto* solve = app.add_subcommand("solve", "discrete log in (Z/pZ)*");
    add_prime_flags(solve, solve_field, true);
    solve->add_option("--target", solve_target, "element b (decimal)")->required();
    add_walk_flags(solve, solve_walk, true);
    solve->add_option("--seed", solve_walk.seed, "decision seed");
    solve->add_option("--choices", solve_walk.choices, "scripted root choices, e.g. 1,0 (1 = larger root)");
    solve->add_option("--workers", solve_walk.workers, "independent parallel walks");
    solve->add_flag("--verbose,-v", solve_walk.verbose, "print the walk trace");

    FieldFlags gf_field;
    WalkFlags gf_walk;
    std::string gf_target;
    auto* solve_gf = app.add_subcommand("solve-gf2m", "discrete log to base x in GF(2^m)*");
    add_binary_flags(solve_gf, gf_field, true);
    solve_gf->add_option("--target", gf_target, "element b in hex, bit 0 = constant term")->required();
    add_walk_flags(solve_gf, gf_walk, false);
    solve_gf->add_option("--seed", gf_walk.seed, "decision seed");
    solve_gf->add_option("--choices", gf_walk.choices, "scripted branch bits (1 = divide by x, 0 = square root)");
    solve_gf->add_option("--workers", gf_walk.workers, "independent parallel walks");
    solve_gf->add_flag("--verbose,-v", gf_walk.verbose, "print the walk trace");

    FieldFlags oracle_field;
    std::string oracle_target, oracle_method = "bsgs";
    auto* oracle = app.add_subcommand("oracle", "reference solver (brute force or baby-step giant-step)");
    add_prime_flags(oracle, oracle_field, false);
    add_binary_flags(oracle, oracle_field, false);
    oracle->add_option("--target", oracle_target, "element b (decimal for primes, hex for GF(2^m))")->required();
    oracle->add_option("--method", oracle_method, "brute or bsgs");

    FieldFlags bench_field;
    WalkFlags bench_walk;
    std::uint64_t bench_trials = 100;
    std::string bench_csv, bench_json;
    bool bench_timing = false;
    auto* bench = app.add_subcommand("bench", "step-count trials on random targets");
    add_prime_flags(bench, bench_field, false);
    add_binary_flags(bench, bench_field, false);
    add_walk_flags(bench, bench_walk, true);
    bench->add_option("--trials", bench_trials, "number of trials");
    bench->add_option("--seed", bench_walk.seed, "seed base; trial i uses seed + i");
    bench->add_option("--csv", bench_csv, "per-trial CSV output path");
    bench->add_option("--json", bench_json, "summary JSON output path");
    bench->add_option("--workers", bench_walk.workers, "trials run in parallel");
    bench->add_flag("--timing", bench_timing, "record wall time per trial (CSV no longer reproducible)");

    std::string selftest_only;
    bool selftest_fault = false;
    auto* selftest = app.add_subcommand("selftest", "replay the five worked examples");
    selftest->add_option("--only", selftest_only, "prime-1, prime-2, gf2m-1, gf2m-2 or collatz");
    selftest->add_flag("--inject-fault", selftest_fault, "corrupt Table I (negative control)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*solve) {
            const Variant v = solve_walk.variant.empty() ? Variant::inverse : parse_variant(solve_walk.variant);
            if (v == Variant::char2) throw UsageError("use solve-gf2m for binary fields");
            return solve_and_report(make_prime_group(solve_field), solve_target, solve_walk, v);
        }
        if (*solve_gf) {
            return solve_and_report(make_binary_group(gf_field), gf_target, gf_walk, Variant::char2);
        }
        if (*oracle) {
            const OracleMethod method = parse_oracle_method(oracle_method);
            const bool prime = !oracle_field.p.empty();
            if (prime == !oracle_field.m.empty()) throw UsageError("give exactly one of --p/--gen or --m/--poly");
            auto run = [&](const auto& group) {
                const auto target = group.parse(oracle_target);
                if (method == OracleMethod::brute && group.order() > kBruteForceLimit)
                    throw UsageError("brute force is limited to group order <= 10^7");
                std::cout << oracle_dlog(group, target, method).n << '\n';
                return kOk;
            };
            if (prime) {
                if (oracle_field.gen.empty()) throw UsageError("--gen is required with --p");
                return run(make_prime_group(oracle_field));
            }
            if (oracle_field.poly.empty()) throw UsageError("--poly is required with --m");
            return run(make_binary_group(oracle_field));
        }
        if (*bench) {
            const bool prime = !bench_field.p.empty();
            if (prime == !bench_field.m.empty()) throw UsageError("give exactly one of --p/--gen or --m/--poly");
            if (prime) {
                if (bench_field.gen.empty()) throw UsageError("--gen is required with --p");
                const Variant v = bench_walk.variant.empty() ? Variant::inverse : parse_variant(bench_walk.variant);
                return run_bench(make_prime_group(bench_field), bench_walk, v, bench_trials, bench_csv, bench_json,
                                 bench_timing);
            }
            if (!bench_walk.variant.empty() && bench_walk.variant != "char2")
                throw UsageError("binary fields only support the char2 variant");
            return run_bench(make_binary_group(bench_field), bench_walk, Variant::char2, bench_trials, bench_csv,
                             bench_json, bench_timing);
        }
        if (*selftest) {
            std::optional<std::string> only;
            if (!selftest_only.empty()) {
                const auto& names = example_names();
                if (std::find(names.begin(), names.end(), selftest_only) == names.end())
                    throw UsageError("unknown example: " + selftest_only);
                only = selftest_only;
            }
            const auto outcomes = run_paper_examples(only, selftest_fault);
            std::size_t passed = 0;
            for (const auto& o : outcomes) {
                std::cout << (o.passed ? "PASS " : "FAIL ") << o.name << ": " << o.detail << '\n';
                passed += o.passed;
            }
            std::cout << passed << "/" << outcomes.size() << " examples reproduced\n";
            return passed == outcomes.size() ? kOk : kSolverFailure;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSolverFailure;
    }
    return kUsage;
}
