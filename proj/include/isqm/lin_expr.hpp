#pragma once

/**
 * @file lin_expr.hpp
 * @brief The walk's exponent as a linear function of the unknown log n,
 *        and the linear congruences a collision produces.
 *
 * A LinExpr (A, B, k) stands for m = (A*n + B) / 2^k. Along a walk the
 * true log e of the current element satisfies 2^k * e = A*n + B (mod N),
 * whichever square root was taken, so equal elements give a congruence
 * in n once both sides are scaled to the same power of two.
 */

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "isqm/errors.hpp"
#include "isqm/integer.hpp"
#include "isqm/prime_field.hpp"

namespace isqm {

struct LinExpr {
    Int A = 1;
    Int B = 0;
    std::size_t k = 0;

    static LinExpr unknown() { return LinExpr{1, 0, 0}; }
    static LinExpr constant(Int c) { return LinExpr{0, std::move(c), 0}; }

    friend bool operator==(const LinExpr&, const LinExpr&) = default;
};

/// m <- m - 1
inline LinExpr dec(LinExpr e) {
    e.B -= pow2(e.k);
    return e;
}

/// m <- m / 2
inline LinExpr halve(LinExpr e) {
    ++e.k;
    return e;
}

/// m <- 3m + 1
inline LinExpr triple_plus_one(LinExpr e) {
    e.A *= 3;
    e.B = 3 * e.B + pow2(e.k);
    return e;
}

/// "(n-3)/2" style rendering for traces.
inline std::string to_string(const LinExpr& e) {
    std::string num;
    if (e.A == 0) {
        num = e.B.str();
    } else {
        num = e.A == 1 ? "n" : (e.A == -1 ? "-n" : e.A.str() + "n");
        if (e.B > 0) num += "+" + e.B.str();
        else if (e.B < 0) num += "-" + Int(-e.B).str();
    }
    if (e.k == 0) return num;
    const bool compound = e.B != 0 && e.A != 0;
    return (compound ? "(" + num + ")" : num) + "/" + pow2(e.k).str();
}

inline std::ostream& operator<<(std::ostream& os, const LinExpr& e) {
    return os << "LinExpr{A=" << e.A << ", B=" << e.B << ", k=" << e.k << "}";
}

/// Solutions of coef*n = rhs (mod N): { residue + t*modulus : 0 <= t < count }.
struct CongruenceSolution {
    Int residue;
    Int modulus;
    Int count;

    friend bool operator==(const CongruenceSolution&, const CongruenceSolution&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const CongruenceSolution& s) {
    return os << "n = " << s.residue << " (mod " << s.modulus << "), d=" << s.count;
}

inline constexpr std::uint64_t kDefaultMaxCandidates = 65536;

inline CongruenceSolution solve_linear(const Int& coef, const Int& rhs, const Int& N) {
    if (N < 1) throw DomainError("solve_linear: modulus must be positive");
    const Int c = mod_floor(coef, N);
    const Int r = mod_floor(rhs, N);
    const Int d = gcd(c, N);  // gcd(0, N) = N
    if (r % d != 0)
        throw NoSolutionError("no solution: gcd " + d.str() + " does not divide " + r.str());
    const Int reduced = N / d;
    const Int residue = reduced == 1 ? Int(0) : mod_floor((r / d) * mod_inverse(c / d, reduced), reduced);
    return CongruenceSolution{residue, reduced, d};
}

/**
 * Equate two symbolic exponents of the same element. Both are scaled to
 * the larger halving count K before subtracting, which also cancels the
 * N/2 ambiguity between the two square roots of a Table III pair.
 */
inline CongruenceSolution collision_solve(const LinExpr& e1, const LinExpr& e2, const Int& N) {
    const std::size_t K = std::max(e1.k, e2.k);
    const Int s1 = pow2(K - e1.k);
    const Int s2 = pow2(K - e2.k);
    const Int coef = s1 * e1.A - s2 * e2.A;
    const Int rhs = s2 * e2.B - s1 * e1.B;
    if (mod_floor(coef, N) == 0 && mod_floor(rhs, N) == 0)
        throw DegenerateCollisionError("collision carries no information about n");
    return solve_linear(coef, rhs, N);
}

/// All count solutions mod N in ascending order.
inline std::vector<Int> enumerate_candidates(const CongruenceSolution& sol, const Int& N,
                                             const Int& max_candidates = kDefaultMaxCandidates) {
    if (sol.count > max_candidates)
        throw TooManyCandidatesError("collision admits " + sol.count.str() + " candidates");
    std::vector<Int> out;
    out.reserve(static_cast<std::size_t>(sol.count));
    for (Int t = 0; t < sol.count; ++t) out.push_back(mod_floor(sol.residue + t * sol.modulus, N));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace isqm
