#pragma once

/**
 * @file groups.hpp
 * @brief Uniform cyclic-group view over (Z/pZ)* and GF(2^m)*.
 *
 * The walk engine, the oracles and the bench harness are written against
 * this small surface so one template serves both field kinds.
 */

#include <cstddef>
#include <string>
#include <string_view>

#include "isqm/gf2m.hpp"
#include "isqm/integer.hpp"
#include "isqm/prime_field.hpp"

namespace isqm {

struct ModElemHash {
    std::size_t operator()(const ModElem& e) const { return IntHash{}(e.value); }
};

struct Gf2mElemHash {
    std::size_t operator()(const Gf2mElem& e) const { return IntHash{}(e.bits); }
};

/// (Z/pZ)* generated by the primitive root a.
class PrimeGroup {
public:
    using Element = ModElem;
    using Hash = ModElemHash;

    explicit PrimeGroup(PrimeGroupParams params)
        : params_(std::move(params)), generator_inverse_{mod_inverse(params_.a(), params_.p())} {}

    const PrimeGroupParams& params() const { return params_; }
    const Int& order() const { return params_.order(); }
    Element generator() const { return params_.generator(); }
    const Element& generator_inverse() const { return generator_inverse_; }
    Element one() const { return ModElem{1}; }

    Element mul(const Element& x, const Element& y) const { return mod_mul(x, y, params_); }
    Element pow(const Element& x, const Int& e) const { return mod_pow(x, mod_floor(e, order()), params_); }
    Element inverse(const Element& x) const { return ModElem{mod_inverse(x.value, params_.p())}; }
    bool is_zero(const Element& x) const { return x.value % params_.p() == 0; }

    std::string format(const Element& x) const { return x.value.str(); }
    Element parse(std::string_view text) const {
        const Int v = parse_decimal(text);
        if (v < 0 || v >= params_.p()) throw DomainError("element out of range [0, p)");
        return ModElem{v};
    }
    std::string id() const { return params_.p().str(); }

private:
    PrimeGroupParams params_;
    ModElem generator_inverse_;
};

/// GF(2^m)* generated by x.
class BinaryGroup {
public:
    using Element = Gf2mElem;
    using Hash = Gf2mElemHash;

    explicit BinaryGroup(BinaryFieldParams params) : params_(std::move(params)) {}

    const BinaryFieldParams& params() const { return params_; }
    const Int& order() const { return params_.order(); }
    Element generator() const { return params_.x(); }
    Element one() const { return params_.one(); }

    Element mul(const Element& x, const Element& y) const { return gf_mul(x, y, params_); }
    Element pow(const Element& x, const Int& e) const { return gf_pow(x, mod_floor(e, order()), params_); }
    Element inverse(const Element& x) const { return gf_inverse(x, params_); }
    bool is_zero(const Element& x) const { return x.is_zero(); }

    std::string format(const Element& x) const { return to_hex(x); }
    Element parse(std::string_view text) const { return params_.elem(parse_hex(text)); }
    std::string id() const { return "GF(2^" + std::to_string(params_.m()) + ")/" + to_hex(params_.f()); }

private:
    BinaryFieldParams params_;
};

}  // namespace isqm
