#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the code paths it is used to check.

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "isqm/integer.hpp"
#include "isqm/lin_expr.hpp"

namespace isqm::ref {

/// Euler's criterion with Boost's powm: +1, -1, or 0.
inline int euler_criterion(const Int& x, const Int& p) {
    const Int v = boost::multiprecision::powm(mod_floor(x, p), (p - 1) / 2, p);
    if (v == 1) return 1;
    if (v == p - 1) return -1;
    return 0;
}

/// Smallest y with y^2 = x (mod p), by scanning; nullopt for non-residues.
inline std::optional<std::int64_t> scan_sqrt(std::int64_t x, std::int64_t p) {
    for (std::int64_t y = 0; y < p; ++y)
        if ((y * y) % p == ((x % p) + p) % p) return y;
    return std::nullopt;
}

/// All n in [0, N) with coef*n = rhs (mod N).
inline std::vector<std::int64_t> scan_congruence(std::int64_t coef, std::int64_t rhs, std::int64_t N) {
    std::vector<std::int64_t> out;
    const auto c = ((coef % N) + N) % N;
    const auto r = ((rhs % N) + N) % N;
    for (std::int64_t n = 0; n < N; ++n)
        if ((c * n) % N == r) out.push_back(n);
    return out;
}

/// (A*n + B) / 2^k over the rationals.
inline boost::multiprecision::cpp_rational evaluate(const LinExpr& e, const Int& n) {
    using boost::multiprecision::cpp_rational;
    return cpp_rational(e.A * n + e.B) / cpp_rational(pow2(e.k));
}

/// Carry-less product then reduction, on 64-bit words (m <= 31).
inline std::uint64_t clmul_mod(std::uint64_t u, std::uint64_t v, std::uint64_t f, unsigned m) {
    std::uint64_t acc = 0;
    for (unsigned i = 0; i < 32; ++i)
        if ((v >> i) & 1) acc ^= u << i;
    for (int d = 63; d >= static_cast<int>(m); --d)
        if ((acc >> d) & 1) acc ^= f << (d - static_cast<int>(m));
    return acc;
}

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20261016);
    return gen;
}

}  // namespace isqm::ref
