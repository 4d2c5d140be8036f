// Acceptance checks 1-9. One PASS/FAIL line per criterion; exit 1 if any fail.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "isqm/bench.hpp"
#include "isqm/oracles.hpp"
#include "isqm/selftest.hpp"
#include "test_support.hpp"

using namespace isqm;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v, int prec = 3) {
    std::ostringstream s;
    s.precision(prec);
    s << std::fixed << v;
    return s.str();
}

// --- 1 ---
Verdict check_example_one() {
    Verdict v;
    const auto ex = isqm::prime_example_one();
    const auto t0 = Clock::now();
    const auto out = replay(ex);
    const double ms = seconds_since(t0) * 1e3;
    if (!out.passed) v.fail(out.detail);
    if (ms >= 1.0) v.fail("took " + fmt(ms) + " ms");
    if (v.ok) v.detail = "n = 29, 3 trace rows match, " + fmt(ms) + " ms";
    return v;
}

// --- 2 ---
Verdict check_example_two() {
    Verdict v;
    const auto ex = isqm::prime_example_two();
    const auto out = replay(ex);
    if (!out.passed) v.fail(out.detail);
    const auto r = run_dlog(ex.group, ex.target, ex.config);
    if (!r.solution || *r.solution != CongruenceSolution{3, 34, 3}) v.fail("congruence is not n = 3 mod 34");
    if (r.candidates != std::vector<Int>{3, 37, 71}) v.fail("candidate set differs from {3, 37, 71}");
    if (r.n != 37) v.fail("answer " + r.n.str());
    if (v.ok) v.detail = "n = 3 mod 34, candidates {3, 37, 71}, verified 37";
    return v;
}

// --- 3 ---
Verdict check_gf_examples() {
    Verdict v;
    const auto a = replay(isqm::gf2m_example_one());
    const auto b = replay(isqm::gf2m_example_two());
    if (!a.passed) v.fail("0x1D: " + a.detail);
    if (!b.passed) v.fail("0x6B: " + b.detail);
    const auto ex = isqm::gf2m_example_two();
    const auto r = run_dlog(ex.group, ex.target, ex.config);
    if (!r.trace.back().collision || r.trace.back().collision->find("entry 0") == std::string::npos)
        v.fail("0x6B did not close on the starting value");
    if (v.ok) v.detail = "n = 38 and n = 41 (self-collision), traces match";
    return v;
}

// --- 4 ---
Verdict check_collatz_example() {
    Verdict v;
    const auto ex = isqm::collatz_example();
    const auto out = replay(ex);
    if (!out.passed) v.fail(out.detail);
    const auto r = run_dlog(ex.group, ex.target, ex.config);
    // Last expression (3n+1)/16 meets g^64: 3n + 1 = 16 * 64 = 24 (mod 100).
    const auto& e = r.trace.back().expr;
    if (!(e == LinExpr{3, 1, 4})) v.fail("final expression " + to_string(e));
    if (mod_floor(pow2(e.k) * 64, Int(100)) != 24) v.fail("cleared constant is not 24");
    if (mod_floor(3 * r.n + 1, Int(100)) != 24 || r.n != 41) v.fail("answer " + r.n.str());
    if (v.ok) v.detail = "3n+1 = 24 mod 100, n = 41, trace matches";
    return v;
}

// --- 5 ---
Verdict check_oracle_equivalence() {
    Verdict v;
    const auto t0 = Clock::now();
    const std::pair<long, long> primes[] = {{103, 5}, {101, 2}, {499, 7}, {1009, 11}, {2003, 5}};
    std::uint64_t solves = 0;
    for (auto [p, a] : primes) {
        const auto g = PrimeGroup(PrimeGroupParams::make(p, a));
        std::vector<Int> targets;
        if (p <= 499) {
            for (long b = 1; b < p; ++b) targets.emplace_back(b);
        } else {
            for (int i = 0; i < 500; ++i) targets.push_back(uniform_below(ref::rng(), Int(p - 1)) + 1);
        }
        for (const auto& b : targets) {
            WalkConfig cfg;
            cfg.seed = mix_seed(static_cast<std::uint64_t>(p), solves++);
            const auto r = run_dlog(g, ModElem{b}, cfg);
            if (!r.solved) {
                v.fail("p=" + std::to_string(p) + " b=" + b.str() + " unsolved after " + std::to_string(r.restarts) +
                       " restarts");
                continue;
            }
            const auto expect = brute_force_dlog(g, ModElem{b}).n;
            if (mod_floor(r.n - expect, g.order()) != 0 || g.pow(g.generator(), r.n) != ModElem{b})
                v.fail("p=" + std::to_string(p) + " b=" + b.str() + " got " + r.n.str() + " oracle " + expect.str());
        }
    }
    const double s = seconds_since(t0);
    if (s >= 60.0) v.fail("took " + fmt(s) + " s");
    if (v.ok) v.detail = std::to_string(solves) + " solves agree with brute force, " + fmt(s) + " s";
    return v;
}

// --- 6 ---
Verdict check_property_suite() {
    Verdict v;
    const long primes[] = {103, 101, 10007, 100003};
    const long roots[] = {5, 2, 5, 2};
    for (int i = 0; i < 4; ++i) {
        const auto params = PrimeGroupParams::make(primes[i], roots[i]);
        const Int p = primes[i];
        for (int t = 0; t < 1000; ++t) {
            // (a)
            const Int x = uniform_below(ref::rng(), p - 1) + 1;
            const auto [lo, hi] = sqrt_mod_p(ModElem{(x * x) % p}, params);
            if ((lo.value * lo.value) % p != (x * x) % p || (hi.value * hi.value) % p != (x * x) % p ||
                lo.value + hi.value != p)
                v.fail("(a) sqrt roundtrip p=" + p.str() + " x=" + x.str());
            // (b)
            const Int y = uniform_below(ref::rng(), p);
            if (jacobi(y, p) != ref::euler_criterion(y, p)) v.fail("(b) jacobi p=" + p.str() + " y=" + y.str());
        }
    }

    // (c)
    const auto f = BinaryFieldParams::make(7, 0x83);
    std::vector<Gf2mElem> all;
    for (long u = 1; u < 128; ++u) all.push_back(Gf2mElem{u});
    for (const auto& a : all) {
        if (gf_mul(a, f.one(), f) != a) v.fail("(c) identity " + to_hex(a.bits));
        if (gf_mul(a, gf_inverse(a, f), f) != f.one()) v.fail("(c) inverse " + to_hex(a.bits));
        if (gf_sqrt(gf_square(a, f), f) != a || gf_square(gf_sqrt(a, f), f) != a) v.fail("(c) sqrt " + to_hex(a.bits));
        if (gf_mul(f.x(), gf_div_by_x(a, f), f) != a || gf_div_by_x(gf_mul(f.x(), a, f), f) != a)
            v.fail("(c) div-by-x " + to_hex(a.bits));
        for (const auto& b : all) {
            const auto ab = gf_mul(a, b, f);
            if (ab != gf_mul(b, a, f)) v.fail("(c) commutativity");
            if (ab.bits != ref::clmul_mod(static_cast<std::uint64_t>(a.bits), static_cast<std::uint64_t>(b.bits), 0x83, 7))
                v.fail("(c) product vs word oracle");
            for (const auto& c : all) {
                if (gf_mul(ab, c, f) != gf_mul(a, gf_mul(b, c, f), f)) v.fail("(c) associativity");
                if (gf_mul(a, gf_add(b, c), f) != gf_add(ab, gf_mul(a, c, f))) v.fail("(c) distributivity");
            }
        }
    }

    // (d) every (coef, rhs) pair for every modulus up to 500
    std::uint64_t congruences = 0;
    std::vector<std::vector<std::int64_t>> buckets;
    for (std::int64_t N = 1; N <= 500 && v.ok; ++N) {
        for (std::int64_t coef = 0; coef < N; ++coef) {
            buckets.assign(static_cast<std::size_t>(N), {});
            for (std::int64_t n = 0; n < N; ++n) buckets[static_cast<std::size_t>((coef * n) % N)].push_back(n);
            for (std::int64_t rhs = 0; rhs < N; ++rhs) {
                ++congruences;
                const auto& expected = buckets[static_cast<std::size_t>(rhs)];
                try {
                    const auto sol = solve_linear(coef, rhs, N);
                    const auto count = sol.count.convert_to<std::int64_t>();
                    const auto step = sol.modulus.convert_to<std::int64_t>();
                    const auto base = sol.residue.convert_to<std::int64_t>();
                    bool same = count == static_cast<std::int64_t>(expected.size());
                    for (std::int64_t t = 0; same && t < count; ++t) same = expected[t] == base + t * step;
                    if (!same) v.fail("(d) " + std::to_string(coef) + "n = " + std::to_string(rhs) + " mod " +
                                      std::to_string(N));
                } catch (const NoSolutionError&) {
                    if (!expected.empty()) v.fail("(d) spurious no-solution at modulus " + std::to_string(N));
                }
            }
        }
    }
    if (v.ok) v.detail = "(a)-(c) exact, (d) " + std::to_string(congruences) + " congruences exact";
    return v;
}

// --- 7 ---
Verdict check_scaling() {
    Verdict v;
    const auto t0 = Clock::now();
    const std::pair<long, long> primes[] = {{1009, 11}, {10007, 5}, {100003, 2}};
    std::vector<double> means;
    std::string summary;
    for (auto [p, a] : primes) {
        const auto g = PrimeGroup(PrimeGroupParams::make(p, a));
        const auto stats = summarize(run_trials(g, WalkConfig{}, 200, 1));
        means.push_back(stats.mean);
        summary += "S(" + std::to_string(p) + ")=" + fmt(stats.mean, 1) + " ";
        if (stats.success_rate < 0.95)
            v.fail("success rate " + fmt(stats.success_rate) + " at p=" + std::to_string(p));
    }
    const double ratio = means[2] / means[0];
    if (ratio < 2.5 || ratio > 40.0) v.fail("ratio " + fmt(ratio) + " outside [2.5, 40]");
    const double s = seconds_since(t0);
    if (s >= 300.0) v.fail("took " + fmt(s) + " s");
    if (v.ok) v.detail = summary + "ratio " + fmt(ratio, 2) + ", " + fmt(s) + " s";
    return v;
}

// --- 8 ---
Verdict check_determinism() {
    Verdict v;
    const auto g = PrimeGroup(PrimeGroupParams::make(10007, 5));
    std::ostringstream first, second;
    write_csv(first, run_trials(g, WalkConfig{}, 100, 42));
    write_csv(second, run_trials(g, WalkConfig{}, 100, 42));
    if (first.str() != second.str()) v.fail("CSV differs between runs");
    if (v.ok) v.detail = "two 100-trial runs, " + std::to_string(first.str().size()) + " identical bytes";
    return v;
}

// --- 9 ---
Verdict check_char2_random() {
    Verdict v;
    const auto t0 = Clock::now();
    const auto g = BinaryGroup(BinaryFieldParams::make(13, 0x201B));
    for (std::uint64_t i = 0; i < 200; ++i) {
        const Gf2mElem b{uniform_below(ref::rng(), g.order()) + 1};
        WalkConfig cfg;
        cfg.variant = Variant::char2;
        cfg.seed = mix_seed(8191, i);
        const auto r = run_dlog(g, b, cfg);
        if (!r.solved) {
            v.fail("target " + to_hex(b.bits) + " unsolved");
            continue;
        }
        if (g.pow(g.generator(), r.n) != b || r.n != bsgs_dlog(g, b).n)
            v.fail("target " + to_hex(b.bits) + " disagrees with BSGS");
    }
    const double s = seconds_since(t0);
    if (s >= 30.0) v.fail("took " + fmt(s) + " s");
    if (v.ok) v.detail = "200/200 verified against BSGS, " + fmt(s) + " s";
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"example 1 (p=103, b=84)", check_example_one},
        {"example 2 (p=103, b=99)", check_example_two},
        {"GF(2^7) examples", check_gf_examples},
        {"3x+1 example (p=101, b=72)", check_collatz_example},
        {"oracle equivalence", check_oracle_equivalence},
        {"property suite", check_property_suite},
        {"step-count scaling", check_scaling},
        {"bench determinism", check_determinism},
        {"GF(2^13) randomized solves", check_char2_random},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        failures += !v.ok;
        std::cout << (v.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " -- "
                  << v.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
