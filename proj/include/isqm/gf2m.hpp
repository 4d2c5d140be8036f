#pragma once

/**
 * @file gf2m.hpp
 * @brief Polynomial-basis arithmetic in GF(2^m).
 *
 * Elements are packed bitvectors with the coefficient of x^i at bit i.
 * The modulus f carries bit m, so x^7 + x + 1 is 0x83. Squaring is a
 * bijection in characteristic 2; the unique square root of u is
 * u^(2^(m-1)).
 */

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "isqm/errors.hpp"
#include "isqm/integer.hpp"
#include "isqm/prime_field.hpp"

namespace isqm {

struct Gf2mElem {
    Int bits;

    friend bool operator==(const Gf2mElem&, const Gf2mElem&) = default;
    bool is_zero() const { return bits == 0; }
};

namespace detail {

/// Remainder of a modulo b over GF(2)[x], both packed in 64 bits.
inline std::uint64_t poly_mod_u64(std::uint64_t a, std::uint64_t b) {
    const int db = 63 - __builtin_clzll(b);
    while (a != 0) {
        const int da = 63 - __builtin_clzll(a);
        if (da < db) break;
        a ^= b << (da - db);
    }
    return a;
}

}  // namespace detail

/// True iff f (degree <= 32) has no factor of degree 1..deg/2.
inline bool is_irreducible_small(std::uint64_t f) {
    if (f < 2) return false;
    const int deg = 63 - __builtin_clzll(f);
    if (deg > 32) throw DomainError("exhaustive irreducibility scan limited to degree 32");
    for (int d = 1; d <= deg / 2; ++d) {
        for (std::uint64_t g = std::uint64_t{1} << d; g < (std::uint64_t{2} << d); ++g) {
            if (detail::poly_mod_u64(f, g) == 0) return false;
        }
    }
    return true;
}

/**
 * Extension degree m and modulus f. Built through make(), which checks the
 * shape of f, its irreducibility for m <= 32, and, when 2^m - 1 is prime,
 * that x generates the multiplicative group. For other m the generator
 * flag is the caller's word.
 */
class BinaryFieldParams {
public:
    static BinaryFieldParams make(std::size_t m, Int f, bool generator_is_x = true) {
        if (m < 1) throw DomainError("extension degree must be positive");
        if (f < 0 || bit_length(f) != m + 1)
            throw DomainError("modulus polynomial must have degree exactly m");
        if (!bit_test(f, 0)) throw DomainError("modulus polynomial must have constant term 1");
        if (m <= 32 && !is_irreducible_small(static_cast<std::uint64_t>(f)))
            throw DomainError("modulus polynomial is reducible");

        BinaryFieldParams out;
        out.m_ = m;
        out.f_ = std::move(f);
        out.order_ = pow2(m) - 1;
        out.generator_is_x_ = generator_is_x;
        out.generator_verified_ = m > 1 && is_probable_prime(out.order_);
        return out;
    }

    std::size_t m() const { return m_; }
    const Int& f() const { return f_; }
    /// Group order 2^m - 1.
    const Int& order() const { return order_; }
    bool generator_is_x() const { return generator_is_x_; }
    /// Prime group order: every element other than 1, x included, generates.
    bool generator_verified() const { return generator_verified_; }

    Gf2mElem one() const { return Gf2mElem{1}; }
    Gf2mElem x() const { return Gf2mElem{m_ > 1 ? Int(2) : Int(1)}; }

    Gf2mElem elem(const Int& bits) const {
        if (bits < 0 || bit_length(bits) > m_)
            throw DomainError("element has degree >= m");
        return Gf2mElem{bits};
    }

private:
    BinaryFieldParams() = default;

    std::size_t m_ = 0;
    Int f_, order_;
    bool generator_is_x_ = true;
    bool generator_verified_ = false;
};

inline Gf2mElem gf_add(const Gf2mElem& u, const Gf2mElem& v) { return Gf2mElem{u.bits ^ v.bits}; }

/// Carry-less product followed by reduction mod f.
inline Gf2mElem gf_mul(const Gf2mElem& u, const Gf2mElem& v, const BinaryFieldParams& params) {
    Int acc = 0;
    Int shifted = u.bits;
    Int rest = v.bits;
    while (rest != 0) {
        if (bit_test(rest, 0)) acc ^= shifted;
        rest >>= 1;
        shifted <<= 1;
    }
    const std::size_t m = params.m();
    for (std::size_t deg = bit_length(acc); deg > m; deg = bit_length(acc)) {
        acc ^= params.f() << (deg - 1 - m);
    }
    return Gf2mElem{std::move(acc)};
}

inline Gf2mElem gf_square(const Gf2mElem& u, const BinaryFieldParams& params) { return gf_mul(u, u, params); }

inline Gf2mElem gf_pow(const Gf2mElem& u, Int e, const BinaryFieldParams& params) {
    if (e < 0) throw DomainError("gf_pow: negative exponent");
    if (u.is_zero()) {
        if (e == 0) throw DomainError("gf_pow: 0^0 is undefined");
        return Gf2mElem{0};
    }
    Gf2mElem result = params.one();
    Gf2mElem base = u;
    while (e != 0) {
        if (bit_test(e, 0)) result = gf_mul(result, base, params);
        e >>= 1;
        if (e != 0) base = gf_square(base, params);
    }
    return result;
}

inline Gf2mElem gf_inverse(const Gf2mElem& u, const BinaryFieldParams& params) {
    if (u.is_zero()) throw DomainError("gf_inverse: zero has no inverse");
    return gf_pow(u, params.order() - 1, params);
}

/// The unique square root: m - 1 successive squarings.
inline Gf2mElem gf_sqrt(const Gf2mElem& u, const BinaryFieldParams& params) {
    if (u.is_zero()) throw DomainError("gf_sqrt: zero argument");
    Gf2mElem v = u;
    for (std::size_t i = 1; i < params.m(); ++i) v = gf_square(v, params);
    return v;
}

/// v with x * v = u. Odd u first absorbs f, whose constant term is 1.
inline Gf2mElem gf_div_by_x(const Gf2mElem& u, const BinaryFieldParams& params) {
    if (u.is_zero()) throw DomainError("gf_div_by_x: zero argument");
    if (!params.generator_is_x()) throw DomainError("gf_div_by_x: field is not generated by x");
    Int v = bit_test(u.bits, 0) ? Int(u.bits ^ params.f()) : u.bits;
    v >>= 1;
    return Gf2mElem{std::move(v)};
}

/// Lowercase hex with a 0x prefix; bit 0 is the constant coefficient.
inline std::string to_hex(const Int& bits) {
    if (bits == 0) return "0x0";
    std::string digits;
    Int rest = bits;
    constexpr char kDigits[] = "0123456789abcdef";
    while (rest != 0) {
        digits.push_back(kDigits[static_cast<unsigned>(rest & 15)]);
        rest >>= 4;
    }
    return "0x" + std::string(digits.rbegin(), digits.rend());
}

inline std::string to_hex(const Gf2mElem& u) { return to_hex(u.bits); }

/// Accepts an optional 0x/0X prefix and either digit case.
inline Int parse_hex(std::string_view text) {
    if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) text.remove_prefix(2);
    if (text.empty()) throw std::invalid_argument("empty hex literal");
    Int out = 0;
    for (char c : text) {
        int digit;
        if (c >= '0' && c <= '9') digit = c - '0';
        else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
        else throw std::invalid_argument("malformed hex literal: " + std::string(text));
        out <<= 4;
        out |= digit;
    }
    return out;
}

/// Human-readable polynomial form, e.g. "x^4+x^3+x^2+1".
inline std::string to_poly_string(const Gf2mElem& u) {
    if (u.is_zero()) return "0";
    std::string out;
    for (std::size_t i = bit_length(u.bits); i-- > 0;) {
        if (!bit_test(u.bits, i)) continue;
        if (!out.empty()) out += '+';
        if (i == 0) out += '1';
        else if (i == 1) out += 'x';
        else out += "x^" + std::to_string(i);
    }
    return out;
}

}  // namespace isqm
