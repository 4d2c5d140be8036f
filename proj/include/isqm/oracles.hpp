#pragma once

/**
 * @file oracles.hpp
 * @brief Reference discrete-log solvers: exhaustive scan and baby-step
 *        giant-step. They share nothing with the walk but group arithmetic.
 */

#include <string>
#include <unordered_map>

#include "isqm/errors.hpp"
#include "isqm/groups.hpp"
#include "isqm/integer.hpp"

namespace isqm {

enum class OracleMethod { brute, bsgs };

inline std::string to_string(OracleMethod m) { return m == OracleMethod::brute ? "brute" : "bsgs"; }

inline OracleMethod parse_oracle_method(std::string_view s) {
    if (s == "brute") return OracleMethod::brute;
    if (s == "bsgs") return OracleMethod::bsgs;
    throw std::invalid_argument("unknown oracle method: " + std::string(s));
}

struct OracleResult {
    Int n;
    OracleMethod method = OracleMethod::brute;
};

inline const Int kBruteForceLimit = Int(10'000'000);

template <class Group>
OracleResult brute_force_dlog(const Group& group, const typename Group::Element& target) {
    if (group.order() > kBruteForceLimit) throw DomainError("brute force limited to group order <= 10^7");
    if (group.is_zero(target)) throw NoSolutionError("zero has no logarithm");
    auto acc = group.one();
    const auto g = group.generator();
    for (Int e = 0; e < group.order(); ++e) {
        if (acc == target) return {e, OracleMethod::brute};
        acc = group.mul(acc, g);
    }
    throw NoSolutionError("target is not in the subgroup generated by g");
}

/// ceil(sqrt(N)) baby steps g^j in a hash map, giant steps target * g^(-m*i).
template <class Group>
OracleResult bsgs_dlog(const Group& group, const typename Group::Element& target) {
    if (group.is_zero(target)) throw NoSolutionError("zero has no logarithm");
    const Int& N = group.order();
    const Int m = ceil_sqrt(N);
    const auto g = group.generator();

    std::unordered_map<typename Group::Element, Int, typename Group::Hash> baby;
    auto acc = group.one();
    for (Int j = 0; j < m; ++j) {
        baby.try_emplace(acc, j);
        acc = group.mul(acc, g);
    }
    const auto giant = group.inverse(group.pow(g, m));
    auto gamma = target;
    for (Int i = 0; i < m; ++i) {
        if (auto it = baby.find(gamma); it != baby.end())
            return {mod_floor(i * m + it->second, N), OracleMethod::bsgs};
        gamma = group.mul(gamma, giant);
    }
    throw NoSolutionError("target is not in the subgroup generated by g");
}

template <class Group>
OracleResult oracle_dlog(const Group& group, const typename Group::Element& target, OracleMethod method) {
    return method == OracleMethod::brute ? brute_force_dlog(group, target) : bsgs_dlog(group, target);
}

}  // namespace isqm
