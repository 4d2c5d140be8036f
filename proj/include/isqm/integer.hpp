#pragma once

/**
 * @file integer.hpp
 * @brief Arbitrary-precision integer type and the handful of helpers every
 *        other header leans on.
 *
 * Everything in the library computes with `Int`, a signed, unbounded
 * integer. Desk-scale fields fit comfortably in 64 bits, but symbolic
 * exponents grow by one bit per square root taken, so nothing may wrap.
 */

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace isqm {

using Int = boost::multiprecision::cpp_int;

/// Least nonnegative residue of x modulo m (m > 0).
inline Int mod_floor(const Int& x, const Int& m) {
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

inline Int pow2(std::size_t k) {
    Int r = 1;
    r <<= k;
    return r;
}

inline Int gcd(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(a, b);
}

/// Smallest r with r*r >= x, for x >= 0.
inline Int ceil_sqrt(const Int& x) {
    if (x <= 0) return 0;
    Int r = boost::multiprecision::sqrt(x);
    if (r * r < x) ++r;
    return r;
}

/// Number of trailing zero bits of a nonzero value.
inline std::size_t trailing_zeros(const Int& x) {
    return static_cast<std::size_t>(boost::multiprecision::lsb(x));
}

inline std::size_t bit_length(const Int& x) {
    return x == 0 ? 0 : static_cast<std::size_t>(boost::multiprecision::msb(x)) + 1;
}

inline std::string to_decimal(const Int& x) { return x.str(); }

/// Parse a decimal integer; throws std::invalid_argument on malformed text.
inline Int parse_decimal(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t i = text[0] == '-' ? 1 : 0;
    if (i == text.size()) throw std::invalid_argument("malformed integer literal");
    for (std::size_t j = i; j < text.size(); ++j)
        if (text[j] < '0' || text[j] > '9')
            throw std::invalid_argument("malformed integer literal: " + std::string(text));
    return Int(std::string(text));
}

/**
 * Uniform integer in [0, bound) from raw generator output by rejection.
 *
 * std::uniform_int_distribution is implementation-defined; this keeps
 * seeded runs byte-identical across standard libraries.
 */
inline Int uniform_below(std::mt19937_64& rng, const Int& bound) {
    if (bound <= 1) return 0;
    const std::size_t bits = bit_length(bound - 1);
    for (;;) {
        Int candidate = 0;
        std::size_t filled = 0;
        while (filled < bits) {
            candidate <<= 64;
            candidate |= Int(rng());
            filled += 64;
        }
        candidate >>= (filled - bits);
        if (candidate < bound) return candidate;
    }
}

inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    return static_cast<std::uint64_t>(uniform_below(rng, Int(bound)));
}

struct IntHash {
    std::size_t operator()(const Int& x) const { return boost::hash<Int>{}(x); }
};

}  // namespace isqm
