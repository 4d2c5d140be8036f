#pragma once

/**
 * @file prime_field.hpp
 * @brief Exact arithmetic in (Z/pZ)*: exponentiation, the quadratic
 *        character, square roots and inverses.
 *
 * A primitive root a is a quadratic non-residue, so it doubles as the
 * non-residue Tonelli-Shanks needs. Every function here is pure.
 */

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/miller_rabin.hpp>

#include "isqm/errors.hpp"
#include "isqm/integer.hpp"

namespace isqm {

/// Residue class mod p, held as its least nonnegative representative.
struct ModElem {
    Int value;

    friend bool operator==(const ModElem&, const ModElem&) = default;
    friend bool operator<(const ModElem& l, const ModElem& r) { return l.value < r.value; }
};

inline bool is_probable_prime(const Int& n) {
    if (n < 2) return false;
    // Fixed seed: same verdict every run.
    boost::random::mt19937 gen(0x5eedu);
    return boost::multiprecision::miller_rabin_test(n, 25, gen);
}

/**
 * Prime modulus p, primitive root a, and p - 1 = 2^r * s with s odd.
 *
 * Use make(); it rejects composite p, out-of-range a, and an a that is a
 * quadratic residue. Full primitivity is checked only when the prime
 * factors of p - 1 are supplied.
 */
class PrimeGroupParams {
public:
    static PrimeGroupParams make(Int p, Int a, std::optional<std::vector<Int>> factors_of_order = {}) {
        if (p < 3 || !is_probable_prime(p))
            throw DomainError("modulus " + p.str() + " is not an odd prime");
        if (a < 1 || a >= p)
            throw DomainError("generator must lie in [1, p-1]");

        PrimeGroupParams g;
        g.p_ = std::move(p);
        g.a_ = std::move(a);
        g.order_ = g.p_ - 1;
        g.r_ = trailing_zeros(g.order_);
        g.s_ = g.order_ >> g.r_;

        if (boost::multiprecision::powm(g.a_, g.order_ / 2, g.p_) != g.order_)
            throw DomainError("generator " + g.a_.str() + " is a quadratic residue, not a primitive root");
        if (factors_of_order) {
            for (const Int& q : *factors_of_order) {
                if (q < 2 || g.order_ % q != 0)
                    throw DomainError("listed factor " + q.str() + " does not divide p-1");
                if (boost::multiprecision::powm(g.a_, g.order_ / q, g.p_) == 1)
                    throw DomainError("generator fails primitivity check at factor " + q.str());
            }
            g.factors_ = std::move(factors_of_order);
        }
        return g;
    }

    const Int& p() const { return p_; }
    const Int& a() const { return a_; }
    /// Group order p - 1.
    const Int& order() const { return order_; }
    std::size_t r() const { return r_; }
    const Int& s() const { return s_; }
    const std::optional<std::vector<Int>>& factors_of_order() const { return factors_; }

    ModElem elem(const Int& v) const { return ModElem{mod_floor(v, p_)}; }
    ModElem generator() const { return ModElem{a_}; }

private:
    PrimeGroupParams() = default;

    Int p_, a_, order_, s_;
    std::size_t r_ = 0;
    std::optional<std::vector<Int>> factors_;
};

/**
 * Binary exponentiation, least significant bit first: the running square
 * a_j = a_{j-1}^2 is folded into the product whenever bit j of the
 * exponent is set.
 */
inline Int mod_pow(Int base, Int exponent, const Int& modulus) {
    if (exponent < 0) throw DomainError("negative exponent");
    Int result = 1 % modulus;
    base = mod_floor(base, modulus);
    while (exponent != 0) {
        if (bit_test(exponent, 0)) result = (result * base) % modulus;
        exponent >>= 1;
        if (exponent != 0) base = (base * base) % modulus;
    }
    return result;
}

inline ModElem mod_pow(const ModElem& base, const Int& exponent, const PrimeGroupParams& params) {
    if (base.value % params.p() == 0) throw DomainError("mod_pow: base is zero mod p");
    return ModElem{mod_pow(base.value, exponent, params.p())};
}

inline ModElem mod_mul(const ModElem& x, const ModElem& y, const PrimeGroupParams& params) {
    return ModElem{(x.value * y.value) % params.p()};
}

/**
 * Jacobi symbol (x/n) for odd n > 0 by the binary algorithm: strip factors
 * of two using (2/n) = (-1)^((n^2-1)/8), then flip via reciprocity.
 * Returns 0 when gcd(x, n) > 1.
 */
inline int jacobi(Int x, Int n) {
    if (n <= 0 || !bit_test(n, 0)) throw DomainError("jacobi: modulus must be odd and positive");
    x = mod_floor(x, n);
    int sign = 1;
    while (x != 0) {
        const std::size_t twos = trailing_zeros(x);
        x >>= twos;
        if (twos & 1) {
            const unsigned n8 = static_cast<unsigned>(n & 7);
            if (n8 == 3 || n8 == 5) sign = -sign;
        }
        if ((x & 3) == 3 && (n & 3) == 3) sign = -sign;
        std::swap(x, n);
        x %= n;
    }
    return n == 1 ? sign : 0;
}

/// +1 for quadratic residues, -1 for non-residues.
inline int legendre(const ModElem& x, const PrimeGroupParams& params) {
    if (x.value % params.p() == 0) throw DomainError("legendre: argument is zero mod p");
    return jacobi(x.value, params.p());
}

/**
 * Both square roots of a quadratic residue, ordered (min, max).
 *
 * p = 3 (mod 4) takes the direct x^((s+1)/2) route; otherwise
 * Tonelli-Shanks with the primitive root as the non-residue.
 */
inline std::pair<ModElem, ModElem> sqrt_mod_p(const ModElem& x, const PrimeGroupParams& params) {
    const Int& p = params.p();
    const Int v = mod_floor(x.value, p);
    if (v == 0) throw DomainError("sqrt_mod_p: argument is zero mod p");
    if (jacobi(v, p) != 1) throw NotResidueError("sqrt_mod_p: " + v.str() + " is not a quadratic residue");

    Int root = mod_pow(v, (params.s() + 1) / 2, p);
    if (params.r() > 1) {
        // Invariant: root^2 = v * t, t has order dividing 2^(m-1).
        Int c = mod_pow(params.a(), params.s(), p);
        Int t = mod_pow(v, params.s(), p);
        std::size_t m = params.r();
        while (t != 1) {
            std::size_t i = 0;
            Int t2 = t;
            while (t2 != 1) {
                t2 = (t2 * t2) % p;
                ++i;
            }
            Int b = c;
            for (std::size_t j = 0; j + i + 1 < m; ++j) b = (b * b) % p;
            root = (root * b) % p;
            c = (b * b) % p;
            t = (t * c) % p;
            m = i;
        }
    }
    Int other = p - root;
    if (other < root) std::swap(root, other);
    return {ModElem{std::move(root)}, ModElem{std::move(other)}};
}

/// y in [0, modulus) with x*y = 1 (mod modulus), by extended Euclid.
inline Int mod_inverse(const Int& x, const Int& modulus) {
    if (modulus < 1) throw DomainError("mod_inverse: modulus must be positive");
    Int old_r = mod_floor(x, modulus), r = modulus;
    Int old_s = 1, s = 0;
    while (r != 0) {
        const Int q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
    }
    if (old_r != 1 && modulus != 1)
        throw NotInvertibleError("mod_inverse: " + x.str() + " is not invertible mod " + modulus.str());
    return mod_floor(old_s, modulus);
}

inline Int mod_inverse(const ModElem& x, const Int& modulus) { return mod_inverse(x.value, modulus); }

}  // namespace isqm
