#pragma once

/**
 * @file walk.hpp
 * @brief Randomized inverse of square-and-multiply: the discrete-log walk.
 *
 * Starting from the target b = g^n with symbolic exponent m = n, the walk
 * repeatedly either strips a factor of g (m <- m - 1), or, in the 3x+1
 * variant, maps b <- b^3 g (m <- 3m + 1), or takes a square root
 * (m <- m / 2). Over a prime field the quadratic character decides which
 * move applies and a random bit picks one of the two roots; over GF(2^m)
 * the random bit picks the move and the root is unique.
 *
 * Every visited element is remembered with its symbolic exponent. When a
 * new element equals a remembered one, or one of the precomputed powers
 * g^k_j, the two exponents give a linear congruence in n whose solutions
 * are checked against the target.
 *
 * Table I holds the precomputed powers. Division steps go to Table II
 * (control bit 0) and square-root steps to Table III (control bit 1);
 * both live in one entry list behind one hash index.
 */

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "isqm/errors.hpp"
#include "isqm/groups.hpp"
#include "isqm/integer.hpp"
#include "isqm/lin_expr.hpp"

namespace isqm {

enum class Variant { inverse, collatz, char2 };
enum class SequenceKind { powers_of_two, consecutive };

inline std::string to_string(Variant v) {
    switch (v) {
        case Variant::inverse: return "inverse";
        case Variant::collatz: return "collatz";
        case Variant::char2: return "char2";
    }
    return "?";
}

inline Variant parse_variant(std::string_view s) {
    if (s == "inverse") return Variant::inverse;
    if (s == "collatz") return Variant::collatz;
    if (s == "char2") return Variant::char2;
    throw std::invalid_argument("unknown variant: " + std::string(s));
}

inline std::string to_string(SequenceKind k) {
    return k == SequenceKind::powers_of_two ? "pow2" : "consecutive";
}

inline SequenceKind parse_sequence_kind(std::string_view s) {
    if (s == "pow2") return SequenceKind::powers_of_two;
    if (s == "consecutive" || s == "linear") return SequenceKind::consecutive;
    throw std::invalid_argument("unknown table sequence: " + std::string(s));
}

/// SplitMix64 finalizer; derives independent seeds from (seed, index).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * The random decision function: a seeded generator, or a scripted bit list
 * consumed in order (used to replay fixed walks).
 */
class DecisionSource {
public:
    static DecisionSource seeded(std::uint64_t seed) {
        DecisionSource d;
        d.seed_ = seed;
        d.rng_.seed(seed);
        return d;
    }
    static DecisionSource scripted(std::vector<int> bits) {
        for (int b : bits)
            if (b != 0 && b != 1) throw std::invalid_argument("scripted decisions must be bits");
        DecisionSource d;
        d.script_ = std::move(bits);
        return d;
    }

    bool is_scripted() const { return script_.has_value(); }
    std::uint64_t seed() const { return seed_; }

    int next() {
        if (script_) {
            if (pos_ >= script_->size())
                throw DecisionExhaustedError("scripted decisions exhausted after " + std::to_string(pos_) + " bits");
            return (*script_)[pos_++];
        }
        return static_cast<int>(rng_() >> 63);
    }

    std::uint64_t uniform_index(std::uint64_t bound) {
        if (script_) return 0;
        return uniform_below(rng_, bound);
    }

    /// Fresh randomness for a full restart; scripts keep their position.
    void reseed(std::uint64_t salt) {
        if (script_) return;
        seed_ = mix_seed(seed_, salt);
        rng_.seed(seed_);
    }

private:
    DecisionSource() = default;

    std::uint64_t seed_ = 0;
    std::mt19937_64 rng_;
    std::optional<std::vector<int>> script_;
    std::size_t pos_ = 0;
};

template <class Group>
struct WalkEntry {
    using Element = typename Group::Element;

    Element value;
    std::optional<Element> partner;
    LinExpr expr;
    int control_bit = 0;
};

/// Precomputed (g^k_j, k_j) pairs; duplicate elements keep the smaller k_j.
template <class Group>
class PrecomputedTable {
public:
    using Element = typename Group::Element;

    PrecomputedTable() = default;

    PrecomputedTable(const Group& group, std::size_t size, SequenceKind kind) : size_(size), kind_(kind) {
        // pow2: k_j = 2^j for j = 0..B-1; consecutive: k_j = j for j = 1..B.
        Element running = group.generator();
        Int exponent = 1;
        for (std::size_t j = 0; j < size; ++j) {
            if (group.pow(group.generator(), exponent) != running)
                throw std::logic_error("table build: generator power mismatch at j=" + std::to_string(j));
            insert(running, exponent);
            if (kind == SequenceKind::powers_of_two) {
                running = group.mul(running, running);
                exponent *= 2;
            } else {
                running = group.mul(running, group.generator());
                exponent += 1;
            }
        }
    }

    std::size_t size() const { return size_; }
    SequenceKind kind() const { return kind_; }
    const std::vector<std::pair<Element, Int>>& entries() const { return entries_; }

    std::optional<Int> lookup(const Element& e) const {
        auto it = index_.find(e);
        if (it == index_.end()) return std::nullopt;
        return entries_[it->second].second;
    }

    /// Test hook: overwrite the exponent stored for an element.
    void corrupt_for_testing(std::size_t j, Int exponent) { entries_.at(j).second = std::move(exponent); }

private:
    void insert(const Element& e, const Int& k) {
        auto [it, fresh] = index_.try_emplace(e, entries_.size());
        if (fresh) {
            entries_.emplace_back(e, k);
        } else if (k < entries_[it->second].second) {
            entries_[it->second].second = k;
        }
    }

    std::size_t size_ = 0;
    SequenceKind kind_ = SequenceKind::powers_of_two;
    std::vector<std::pair<Element, Int>> entries_;
    std::unordered_map<Element, std::size_t, typename Group::Hash> index_;
};

template <class Group>
PrecomputedTable<Group> build_table_one(const Group& group, std::size_t size, SequenceKind kind) {
    return PrecomputedTable<Group>(group, size, kind);
}

struct WalkConfig {
    std::size_t table_size = 16;
    SequenceKind sequence_kind = SequenceKind::powers_of_two;
    /// Per-walk step budget; unset means ceil(20 * sqrt(N)).
    std::optional<std::uint64_t> max_steps;
    std::uint64_t max_restarts = 32;
    Int max_candidates = kDefaultMaxCandidates;
    std::uint64_t seed = 1;
    /// When set, replaces the seeded generator.
    std::optional<std::vector<int>> scripted;
    Variant variant = Variant::inverse;
    bool trace = false;
};

inline std::uint64_t default_step_budget(const Int& order) {
    return static_cast<std::uint64_t>(ceil_sqrt(400 * order));
}

enum class Branch { division, triple, square_root, restart };

inline std::string to_string(Branch b) {
    switch (b) {
        case Branch::division: return "div";
        case Branch::triple: return "cube*g";
        case Branch::square_root: return "sqrt";
        case Branch::restart: return "restart";
    }
    return "?";
}

/// One walk step as it would appear in a hand-worked table.
template <class Group>
struct TraceRow {
    using Element = typename Group::Element;

    std::uint64_t step = 0;
    Element input;
    Branch branch = Branch::division;
    /// Division result, or the (min, max) root pair.
    Element output;
    std::optional<Element> other_root;
    std::optional<Element> chosen;
    LinExpr expr;
    int control_bit = 0;
    std::optional<std::string> collision;
};

template <class Group>
struct DlogResult {
    bool solved = false;
    Int n;
    std::uint64_t steps_taken = 0;
    std::uint64_t restarts = 0;
    std::uint64_t collisions_tested = 0;
    std::uint64_t candidates_tried = 0;
    /// Collisions whose congruence had no solution or carried no information.
    std::uint64_t spurious_collisions = 0;
    std::optional<CongruenceSolution> solution;
    std::vector<Int> candidates;
    std::vector<TraceRow<Group>> trace;
};

/**
 * One walker. Owns Tables II/III and the decision source; Table I is
 * borrowed read-only so several walkers can share it.
 */
template <class Group>
class Walker {
public:
    using Element = typename Group::Element;
    using Entry = WalkEntry<Group>;

    struct Collision {
        CongruenceSolution solution;
        std::string where;
    };

    Walker(const Group& group, const PrecomputedTable<Group>& table_one, Element target, WalkConfig config)
        : group_(group),
          table_one_(table_one),
          target_(std::move(target)),
          config_(std::move(config)),
          decisions_(config_.scripted ? DecisionSource::scripted(*config_.scripted)
                                      : DecisionSource::seeded(config_.seed)),
          budget_(config_.max_steps.value_or(default_step_budget(group.order()))) {
        if (group_.is_zero(target_)) throw DomainError("target must be nonzero");
        if (budget_ < 1) throw std::invalid_argument("max_steps must be at least 1");
        constexpr bool is_binary = std::is_same_v<Group, BinaryGroup>;
        if (is_binary != (config_.variant == Variant::char2))
            throw UnsupportedGroupError("variant " + to_string(config_.variant) + " does not apply to this field");
        if constexpr (std::is_same_v<Group, PrimeGroup>) {
            if (config_.variant == Variant::collatz && gcd(Int(3), group_.order()) != 1)
                throw UnsupportedGroupError("3x+1 variant requires gcd(3, p-1) = 1");
        } else {
            if (!group_.params().generator_is_x())
                throw UnsupportedGroupError("binary-field walk requires x as the generator");
        }
        reset_to_target();
    }

    const Element& current() const { return current_; }
    const LinExpr& current_expr() const { return expr_; }
    const std::vector<Entry>& entries() const { return entries_; }
    const DlogResult<Group>& result() const { return result_; }
    DlogResult<Group>& result() { return result_; }

    /**
     * Look the element up in Table I, then the walk history. Returns the
     * first collision whose congruence is solvable and informative; the
     * rest are counted as spurious and skipped.
     */
    std::optional<Collision> check_collision(const Element& value, const LinExpr& expr) {
        if (auto k = table_one_.lookup(value)) {
            if (auto sol = try_solve(LinExpr::constant(*k), expr))
                return Collision{*sol, "table I: g^" + k->str()};
        }
        auto it = history_.find(value);
        if (it == history_.end()) return std::nullopt;
        for (std::size_t idx : it->second) {
            const Entry& e = entries_[idx];
            if (auto sol = try_solve(e.expr, expr)) {
                const char* table = e.control_bit == 0 ? "table II" : "table III";
                return Collision{*sol, std::string(table) + " entry " + std::to_string(idx)};
            }
        }
        return std::nullopt;
    }

    /// Advance one step. Returns the collision that ended it, if any.
    std::optional<Collision> step() {
        ++result_.steps_taken;
        ++segment_steps_;
        if constexpr (std::is_same_v<Group, PrimeGroup>) {
            return step_prime();
        } else {
            return step_char2();
        }
    }

    /**
     * Enumerate and test the candidates of a collision. Returns true when
     * one of them maps to the target.
     */
    bool resolve(const Collision& c) {
        ++result_.collisions_tested;
        const auto candidates = enumerate_candidates(c.solution, group_.order(), config_.max_candidates);
        // Walk g^residue, g^(residue + modulus), ... instead of one pow per candidate.
        const Element stride = group_.pow(group_.generator(), c.solution.modulus);
        Element probe = group_.pow(group_.generator(), c.solution.residue);
        Int n = c.solution.residue;
        for (Int t = 0; t < c.solution.count; ++t) {
            ++result_.candidates_tried;
            if (probe == target_) {
                if (group_.pow(group_.generator(), n) != target_)
                    throw std::logic_error("candidate verification disagrees with direct exponentiation");
                result_.solved = true;
                result_.n = mod_floor(n, group_.order());
                result_.solution = c.solution;
                result_.candidates = candidates;
                return true;
            }
            probe = group_.mul(probe, stride);
            n += c.solution.modulus;
        }
        ++result_.spurious_collisions;
        return false;
    }

    bool budget_exhausted() const { return segment_steps_ >= budget_; }

    /**
     * Mid-tree restart: resume from the untaken root of a random Table III
     * pair (the only root, over GF(2^m)) keeping all tables. After
     * max_restarts/2 of these, or with no Table III entry to use, wipe the
     * history and start over from the target with a reseeded source.
     */
    void restart() {
        ++result_.restarts;
        segment_steps_ = 0;
        std::vector<std::size_t> pairs;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i].control_bit == 1) pairs.push_back(i);
        const std::uint64_t mid_tree_limit = config_.max_restarts / 2;
        if (!pairs.empty() && mid_tree_restarts_ < mid_tree_limit) {
            ++mid_tree_restarts_;
            const std::size_t idx = pairs[decisions_.uniform_index(pairs.size())];
            const Entry& e = entries_[idx];
            if (e.partner) {
                current_ = taken_partner_[idx] ? e.value : *e.partner;
                taken_partner_[idx] = !taken_partner_[idx];
            } else {
                current_ = e.value;
            }
            expr_ = e.expr;
            record_restart("mid-tree from entry " + std::to_string(idx));
            return;
        }
        mid_tree_restarts_ = 0;
        decisions_.reseed(result_.restarts);
        reset_to_target();
        record_restart("full");
    }

    bool target_in_table_one() {
        if (auto k = table_one_.lookup(target_)) {
            result_.solved = true;
            result_.n = mod_floor(*k, group_.order());
            result_.solution = CongruenceSolution{result_.n, group_.order(), 1};
            result_.candidates = {result_.n};
            return true;
        }
        return false;
    }

private:
    std::optional<CongruenceSolution> try_solve(const LinExpr& stored, const LinExpr& fresh) {
        try {
            return collision_solve(stored, fresh, group_.order());
        } catch (const NoSolutionError&) {
        } catch (const DegenerateCollisionError&) {
        }
        ++result_.spurious_collisions;
        return std::nullopt;
    }

    void reset_to_target() {
        entries_.clear();
        history_.clear();
        taken_partner_.clear();
        current_ = target_;
        expr_ = LinExpr::unknown();
        store(Entry{target_, std::nullopt, expr_, 0}, false);
    }

    void store(Entry entry, bool took_partner) {
        auto& slot = history_[entry.value];
        for (std::size_t idx : slot)
            if (entries_[idx].expr == entry.expr) return;
        const std::size_t idx = entries_.size();
        slot.push_back(idx);
        if (entry.partner) history_[*entry.partner].push_back(idx);
        entries_.push_back(std::move(entry));
        taken_partner_.push_back(took_partner);
    }

    std::optional<Collision> step_prime() {
        const auto& params = group_.params();
        TraceRow<Group> row;
        row.step = result_.steps_taken;
        row.input = current_;
        if (legendre(current_, params) == -1) {
            Element next;
            LinExpr next_expr;
            if (config_.variant == Variant::collatz) {
                next = group_.mul(mod_pow(current_, Int(3), params), group_.generator());
                next_expr = triple_plus_one(expr_);
                row.branch = Branch::triple;
            } else {
                next = group_.mul(current_, group_.generator_inverse());
                next_expr = dec(expr_);
                row.branch = Branch::division;
            }
            row.output = next;
            row.expr = next_expr;
            row.control_bit = 0;
            auto hit = check_collision(next, next_expr);
            store(Entry{next, std::nullopt, next_expr, 0}, false);
            current_ = std::move(next);
            expr_ = std::move(next_expr);
            return finish(std::move(row), std::move(hit));
        }

        auto [low, high] = sqrt_mod_p(current_, params);
        LinExpr next_expr = halve(expr_);
        row.branch = Branch::square_root;
        row.output = low;
        row.other_root = high;
        row.expr = next_expr;
        row.control_bit = 1;
        auto hit = check_collision(low, next_expr);
        bool hit_high = false;
        if (!hit) {
            hit = check_collision(high, next_expr);
            hit_high = hit.has_value();
        }
        if (hit) {
            // No decision is drawn; should the collision not resolve, the
            // walk carries on from the root that collided.
            store(Entry{low, high, next_expr, 1}, hit_high);
            current_ = hit_high ? high : low;
            expr_ = std::move(next_expr);
            return finish(std::move(row), std::move(hit));
        }
        const bool take_high = decisions_.next() == 1;
        store(Entry{low, high, next_expr, 1}, take_high);
        current_ = take_high ? high : low;
        row.chosen = current_;
        expr_ = std::move(next_expr);
        return finish(std::move(row), std::nullopt);
    }

    std::optional<Collision> step_char2() {
        const auto& params = group_.params();
        TraceRow<Group> row;
        row.step = result_.steps_taken;
        row.input = current_;
        const int bit = decisions_.next();
        Element next;
        LinExpr next_expr;
        if (bit == 1) {
            next = gf_div_by_x(current_, params);
            next_expr = dec(expr_);
            row.branch = Branch::division;
            row.control_bit = 0;
        } else {
            next = gf_sqrt(current_, params);
            next_expr = halve(expr_);
            row.branch = Branch::square_root;
            row.control_bit = 1;
        }
        row.output = next;
        row.expr = next_expr;
        auto hit = check_collision(next, next_expr);
        store(Entry{next, std::nullopt, next_expr, row.control_bit}, false);
        current_ = std::move(next);
        expr_ = std::move(next_expr);
        return finish(std::move(row), std::move(hit));
    }

    std::optional<Collision> finish(TraceRow<Group> row, std::optional<Collision> hit) {
        if (config_.trace) {
            if (hit) row.collision = hit->where;
            result_.trace.push_back(std::move(row));
        }
        return hit;
    }

    void record_restart(std::string what) {
        if (!config_.trace) return;
        TraceRow<Group> row;
        row.step = result_.steps_taken;
        row.input = current_;
        row.output = current_;
        row.branch = Branch::restart;
        row.expr = expr_;
        row.collision = std::move(what);
        result_.trace.push_back(std::move(row));
    }

    const Group& group_;
    const PrecomputedTable<Group>& table_one_;
    Element target_;
    WalkConfig config_;
    DecisionSource decisions_;
    std::uint64_t budget_;

    Element current_;
    LinExpr expr_;
    std::vector<Entry> entries_;
    std::vector<bool> taken_partner_;
    std::unordered_map<Element, std::vector<std::size_t>, typename Group::Hash> history_;
    std::uint64_t segment_steps_ = 0;
    std::uint64_t mid_tree_restarts_ = 0;
    DlogResult<Group> result_;
};

namespace detail {

template <class Group>
DlogResult<Group> drive(Walker<Group>& walker, const WalkConfig& config, const std::atomic<bool>* stop) {
    if (walker.target_in_table_one()) return walker.result();
    for (;;) {
        if (stop && stop->load(std::memory_order_relaxed)) break;
        if (auto hit = walker.step()) {
            try {
                if (walker.resolve(*hit)) return walker.result();
            } catch (const TooManyCandidatesError&) {
                if (walker.result().restarts >= config.max_restarts) break;
                walker.restart();
                continue;
            }
        }
        if (walker.budget_exhausted()) {
            if (walker.result().restarts >= config.max_restarts) break;
            walker.restart();
        }
    }
    return walker.result();
}

}  // namespace detail

/**
 * Solve g^n = target. A returned result with solved set has been checked
 * by direct exponentiation; an unsolved one carries the statistics of the
 * failed attempt.
 */
template <class Group>
DlogResult<Group> run_dlog(const Group& group, const typename Group::Element& target, const WalkConfig& config,
                           const PrecomputedTable<Group>* shared_table = nullptr) {
    std::optional<PrecomputedTable<Group>> own;
    if (!shared_table) own.emplace(group, config.table_size, config.sequence_kind);
    const auto& table = shared_table ? *shared_table : *own;
    Walker<Group> walker(group, table, target, config);
    auto result = detail::drive(walker, config, nullptr);
    if (result.solved && group.pow(group.generator(), result.n) != target)
        throw std::logic_error("run_dlog: returned logarithm does not verify");
    return result;
}

/**
 * Independent walks over one shared Table I, seeds mix_seed(seed, i).
 * The first verified answer stops the rest. Not deterministic for more
 * than one worker.
 */
template <class Group>
DlogResult<Group> run_dlog_parallel(const Group& group, const typename Group::Element& target,
                                    const WalkConfig& config, unsigned workers) {
    if (workers <= 1 || config.scripted) return run_dlog(group, target, config);
    const PrecomputedTable<Group> table(group, config.table_size, config.sequence_kind);

    std::atomic<bool> stop{false};
    std::mutex guard;
    std::optional<DlogResult<Group>> winner;
    std::optional<DlogResult<Group>> fallback;
    std::exception_ptr failure;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    WalkConfig own = config;
                    own.seed = mix_seed(config.seed, w);
                    Walker<Group> walker(group, table, target, own);
                    auto result = detail::drive(walker, own, &stop);
                    std::lock_guard lock(guard);
                    if (result.solved && !winner) {
                        winner = std::move(result);
                        stop.store(true, std::memory_order_relaxed);
                    } else if (!fallback) {
                        fallback = std::move(result);
                    }
                } catch (...) {
                    std::lock_guard lock(guard);
                    if (!failure) failure = std::current_exception();
                    stop.store(true, std::memory_order_relaxed);
                }
            });
        }
    }
    if (winner) {
        if (group.pow(group.generator(), winner->n) != target)
            throw std::logic_error("run_dlog_parallel: returned logarithm does not verify");
        return std::move(*winner);
    }
    if (failure) std::rethrow_exception(failure);
    return std::move(*fallback);
}

}  // namespace isqm
