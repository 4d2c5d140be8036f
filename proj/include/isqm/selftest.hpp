#pragma once

/**
 * @file selftest.hpp
 * @brief Replays the five hand-worked walks (two over p = 103, two over
 *        GF(2^7), one 3x+1 walk over p = 101) with scripted decisions and
 *        compares every row and the final logarithm.
 */

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "isqm/walk.hpp"

namespace isqm {

struct ExampleOutcome {
    std::string name;
    bool passed = false;
    std::string detail;
    std::optional<Int> n;
};

template <class Group>
struct ExpectedRow {
    using Element = typename Group::Element;

    Element input;
    Branch branch;
    Element output;
    std::optional<Element> other_root;
    std::optional<Element> chosen;
    LinExpr expr;
    bool collision = false;
};

template <class Group>
struct PaperExample {
    std::string name;
    Group group;
    typename Group::Element target;
    WalkConfig config;
    std::vector<ExpectedRow<Group>> rows;
    Int n;
    CongruenceSolution solution;
};

namespace detail {

inline LinExpr lin(long a, long b, std::size_t k) { return LinExpr{a, b, k}; }

inline PrimeGroup group_103() { return PrimeGroup(PrimeGroupParams::make(103, 5, std::vector<Int>{2, 3, 17})); }
inline PrimeGroup group_101() { return PrimeGroup(PrimeGroupParams::make(101, 2, std::vector<Int>{2, 5})); }
inline BinaryGroup group_gf128() { return BinaryGroup(BinaryFieldParams::make(7, 0x83)); }

inline WalkConfig scripted_config(Variant v, std::vector<int> bits) {
    WalkConfig c;
    c.table_size = 7;
    c.sequence_kind = SequenceKind::powers_of_two;
    c.variant = v;
    c.scripted = std::move(bits);
    c.trace = true;
    return c;
}

template <class Group>
std::string format_row(const Group& g, const ExpectedRow<Group>& r) {
    std::string s = g.format(r.input) + " " + to_string(r.branch) + " -> " + g.format(r.output);
    if (r.other_root) s += "," + g.format(*r.other_root);
    if (r.chosen) s += " chosen " + g.format(*r.chosen);
    return s + " m=" + to_string(r.expr);
}

template <class Group>
ExpectedRow<Group> as_expected(const TraceRow<Group>& t) {
    return ExpectedRow<Group>{t.input, t.branch, t.output, t.other_root, t.chosen, t.expr, t.collision.has_value()};
}

template <class Group>
bool same_row(const ExpectedRow<Group>& a, const ExpectedRow<Group>& b) {
    return a.input == b.input && a.branch == b.branch && a.output == b.output && a.other_root == b.other_root &&
           a.chosen == b.chosen && a.expr == b.expr && a.collision == b.collision;
}

}  // namespace detail

inline PaperExample<PrimeGroup> prime_example_one() {
    using detail::lin;
    auto g = detail::group_103();
    auto e = [&](long v) { return ModElem{v}; };
    return {"prime-1",
            g,
            e(84),
            detail::scripted_config(Variant::inverse, {1}),
            {
                {e(84), Branch::division, e(58), {}, {}, lin(1, -1, 0), false},
                {e(58), Branch::square_root, e(26), e(77), e(77), lin(1, -1, 1), false},
                {e(77), Branch::division, e(36), {}, {}, lin(1, -3, 1), true},
            },
            29,
            {29, 102, 1}};
}

inline PaperExample<PrimeGroup> prime_example_two() {
    using detail::lin;
    auto g = detail::group_103();
    auto e = [&](long v) { return ModElem{v}; };
    return {"prime-2",
            g,
            e(99),
            detail::scripted_config(Variant::inverse, {0, 1}),
            {
                {e(99), Branch::division, e(61), {}, {}, lin(1, -1, 0), false},
                {e(61), Branch::square_root, e(24), e(79), e(24), lin(1, -1, 1), false},
                {e(24), Branch::division, e(46), {}, {}, lin(1, -3, 1), false},
                {e(46), Branch::square_root, e(47), e(56), e(56), lin(1, -3, 2), false},
                {e(56), Branch::square_root, e(46), e(57), {}, lin(1, -3, 3), true},
            },
            37,
            {3, 34, 3}};
}

inline PaperExample<BinaryGroup> gf2m_example_one() {
    using detail::lin;
    auto g = detail::group_gf128();
    auto e = [&](long v) { return Gf2mElem{v}; };
    // x^4+x^3+x^2+1 -> x^5+x+1 -> x^4(x^2+1) -> x^3(x^2+1) -> x^2(x^2+1) = x^(2^4)
    return {"gf2m-1",
            g,
            e(0x1D),
            detail::scripted_config(Variant::char2, {0, 1, 1, 1}),
            {
                {e(0x1D), Branch::square_root, e(0x23), {}, {}, lin(1, 0, 1), false},
                {e(0x23), Branch::division, e(0x50), {}, {}, lin(1, -2, 1), false},
                {e(0x50), Branch::division, e(0x28), {}, {}, lin(1, -4, 1), false},
                {e(0x28), Branch::division, e(0x14), {}, {}, lin(1, -6, 1), true},
            },
            38,
            {38, 127, 1}};
}

inline PaperExample<BinaryGroup> gf2m_example_two() {
    using detail::lin;
    auto g = detail::group_gf128();
    auto e = [&](long v) { return Gf2mElem{v}; };
    // The fourth square root lands back on the target itself.
    return {"gf2m-2",
            g,
            e(0x6B),
            detail::scripted_config(Variant::char2, {0, 1, 1, 0}),
            {
                {e(0x6B), Branch::square_root, e(0x77), {}, {}, lin(1, 0, 1), false},
                {e(0x77), Branch::division, e(0x7A), {}, {}, lin(1, -2, 1), false},
                {e(0x7A), Branch::division, e(0x3D), {}, {}, lin(1, -4, 1), false},
                {e(0x3D), Branch::square_root, e(0x6B), {}, {}, lin(1, -4, 2), true},
            },
            41,
            {41, 127, 1}};
}

inline PaperExample<PrimeGroup> collatz_example() {
    using detail::lin;
    auto g = detail::group_101();
    auto e = [&](long v) { return ModElem{v}; };
    return {"collatz",
            g,
            e(72),
            detail::scripted_config(Variant::collatz, {1, 0, 1}),
            {
                {e(72), Branch::triple, e(5), {}, {}, lin(3, 1, 0), false},
                {e(5), Branch::square_root, e(45), e(56), e(56), lin(3, 1, 1), false},
                {e(56), Branch::square_root, e(37), e(64), e(37), lin(3, 1, 2), false},
                {e(37), Branch::square_root, e(21), e(80), e(80), lin(3, 1, 3), false},
                {e(80), Branch::square_root, e(22), e(79), {}, lin(3, 1, 4), true},
            },
            41,
            {41, 100, 1}};
}

/**
 * Replay one example. inject_fault shifts the exponent of the last
 * Table I entry, a negative control that must make the replay fail.
 */
template <class Group>
ExampleOutcome replay(const PaperExample<Group>& ex, bool inject_fault = false) {
    ExampleOutcome out{ex.name, false, {}, std::nullopt};
    try {
        PrecomputedTable<Group> table(ex.group, ex.config.table_size, ex.config.sequence_kind);
        if (inject_fault && !table.entries().empty()) {
            const std::size_t last = table.entries().size() - 1;
            table.corrupt_for_testing(last, table.entries()[last].second + 1);
        }
        const auto result = run_dlog(ex.group, ex.target, ex.config, &table);
        for (std::size_t i = 0; i < ex.rows.size(); ++i) {
            if (i >= result.trace.size()) {
                out.detail = "row " + std::to_string(i + 1) + ": walk ended early";
                return out;
            }
            const auto got = detail::as_expected(result.trace[i]);
            if (!detail::same_row(got, ex.rows[i])) {
                out.detail = "row " + std::to_string(i + 1) + ": expected [" + detail::format_row(ex.group, ex.rows[i]) +
                             "] got [" + detail::format_row(ex.group, got) + "]";
                return out;
            }
        }
        if (result.trace.size() != ex.rows.size()) {
            out.detail = "walk ran " + std::to_string(result.trace.size()) + " rows, expected " +
                         std::to_string(ex.rows.size());
            return out;
        }
        if (!result.solved || result.n != ex.n) {
            out.detail = "final logarithm mismatch";
            return out;
        }
        if (!result.solution || *result.solution != ex.solution) {
            out.detail = "collision congruence mismatch";
            return out;
        }
        out.n = result.n;
        out.passed = true;
        out.detail = "n = " + result.n.str();
    } catch (const std::exception& err) {
        out.detail = std::string("error: ") + err.what();
    }
    return out;
}

inline const std::vector<std::string>& example_names() {
    static const std::vector<std::string> names{"prime-1", "prime-2", "gf2m-1", "gf2m-2", "collatz"};
    return names;
}

/// Run every example, or the one named by only.
inline std::vector<ExampleOutcome> run_paper_examples(const std::optional<std::string>& only = {},
                                                      bool inject_fault = false) {
    std::vector<ExampleOutcome> out;
    auto want = [&](const char* name) { return !only || *only == name; };
    if (want("prime-1")) out.push_back(replay(prime_example_one(), inject_fault));
    if (want("prime-2")) out.push_back(replay(prime_example_two(), inject_fault));
    if (want("gf2m-1")) out.push_back(replay(gf2m_example_one(), inject_fault));
    if (want("gf2m-2")) out.push_back(replay(gf2m_example_two(), inject_fault));
    if (want("collatz")) out.push_back(replay(collatz_example(), inject_fault));
    return out;
}

}  // namespace isqm
