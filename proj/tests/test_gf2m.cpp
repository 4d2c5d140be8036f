#include <gtest/gtest.h>

#include <set>

#include "isqm/gf2m.hpp"
#include "test_support.hpp"

using namespace isqm;

namespace {

BinaryFieldParams gf128() { return BinaryFieldParams::make(7, 0x83); }
Gf2mElem el(long bits) { return Gf2mElem{bits}; }

}  // namespace

TEST(BinaryFieldParams, Validation) {
    auto f = gf128();
    EXPECT_EQ(f.order(), 127);
    EXPECT_TRUE(f.generator_verified());
    EXPECT_THROW(BinaryFieldParams::make(7, 0x82), DomainError);   // no constant term
    EXPECT_THROW(BinaryFieldParams::make(7, 0x43), DomainError);   // wrong degree
    EXPECT_THROW(BinaryFieldParams::make(4, 0x15), DomainError);   // x^4+x^2+1 = (x^2+x+1)^2
    EXPECT_NO_THROW(BinaryFieldParams::make(13, 0x201B));
    EXPECT_FALSE(BinaryFieldParams::make(4, 0x13).generator_verified());  // 15 is composite
}

TEST(Irreducibility, CountsMatchNecklaceFormula) {
    // Irreducible polynomials of degree d over GF(2), d = 1..9.
    const int expected[] = {0, 2, 1, 2, 3, 6, 9, 18, 30, 56};
    for (int d = 1; d <= 9; ++d) {
        int count = 0;
        for (std::uint64_t f = std::uint64_t{1} << d; f < (std::uint64_t{2} << d); ++f)
            count += is_irreducible_small(f);
        EXPECT_EQ(count, expected[d]) << "degree " << d;
    }
}

TEST(GfMul, Examples) {
    auto f = gf128();
    EXPECT_EQ(gf_mul(el(0x2), el(0x50), f), el(0x23));   // x * x^4(x^2+1) = x^5+x+1
    EXPECT_EQ(gf_mul(el(0x5B), f.one(), f), el(0x5B));
    EXPECT_EQ(gf_mul(el(0x10), el(0x10), f), el(0x6));   // x^8 = x^2+x
}

TEST(GfMul, AgreesWithWordOracle) {
    auto f = BinaryFieldParams::make(13, 0x201B);
    for (int i = 0; i < 2000; ++i) {
        const auto u = static_cast<std::uint64_t>(ref::rng()() & 0x1FFF);
        const auto v = static_cast<std::uint64_t>(ref::rng()() & 0x1FFF);
        ASSERT_EQ(gf_mul(Gf2mElem{u}, Gf2mElem{v}, f).bits, ref::clmul_mod(u, v, 0x201B, 13));
    }
}

TEST(GfSqrt, Examples) {
    auto f = gf128();
    EXPECT_EQ(gf_sqrt(el(0x1D), f), el(0x23));
    EXPECT_EQ(gf_sqrt(f.one(), f), f.one());
    EXPECT_EQ(gf_sqrt(el(0x3D), f), el(0x6B));
    EXPECT_THROW(gf_sqrt(el(0), f), DomainError);
}

TEST(GfDivByX, Examples) {
    auto f = gf128();
    EXPECT_EQ(gf_div_by_x(el(0x23), f), el(0x50));
    EXPECT_EQ(gf_div_by_x(el(0x2), f), f.one());
    EXPECT_EQ(gf_div_by_x(el(0x77), f), el(0x7A));
    EXPECT_THROW(gf_div_by_x(el(0), f), DomainError);
    auto no_gen = BinaryFieldParams::make(7, 0x83, false);
    EXPECT_THROW(gf_div_by_x(el(0x23), no_gen), DomainError);
}

TEST(GfPow, Examples) {
    auto f = gf128();
    EXPECT_EQ(gf_pow(f.x(), Int(16), f), el(0x14));
    EXPECT_EQ(gf_pow(el(0x5B), Int(1), f), el(0x5B));
    EXPECT_EQ(gf_pow(f.x(), Int(38), f), el(0x1D));
    EXPECT_EQ(gf_pow(el(0), Int(3), f), el(0));
    EXPECT_THROW(gf_pow(el(0), Int(0), f), DomainError);
}

TEST(GfProperties, FieldAxiomsRandomTriples) {
    auto f = BinaryFieldParams::make(13, 0x201B);
    auto draw = [] { return Gf2mElem{Int(ref::rng()() & 0x1FFF)}; };
    for (int i = 0; i < 1000; ++i) {
        const auto a = draw(), b = draw(), c = draw();
        ASSERT_EQ(gf_mul(gf_mul(a, b, f), c, f), gf_mul(a, gf_mul(b, c, f), f));
        ASSERT_EQ(gf_mul(a, b, f), gf_mul(b, a, f));
        ASSERT_EQ(gf_mul(a, gf_add(b, c), f), gf_add(gf_mul(a, b, f), gf_mul(a, c, f)));
        ASSERT_EQ(gf_square(gf_add(a, b), f), gf_add(gf_square(a, f), gf_square(b, f)));
        if (!a.is_zero()) ASSERT_EQ(gf_mul(a, gf_pow(a, f.order() - 1, f), f), f.one());
    }
}

TEST(GfProperties, ExhaustiveSmallField) {
    auto f = gf128();
    std::set<Int> powers;
    for (long u = 1; u < 128; ++u) {
        const auto e = el(u);
        ASSERT_EQ(gf_sqrt(gf_mul(e, e, f), f), e);
        const auto r = gf_sqrt(e, f);
        ASSERT_EQ(gf_mul(r, r, f), e);
        ASSERT_EQ(gf_mul(f.x(), gf_div_by_x(e, f), f), e);
        ASSERT_EQ(gf_mul(e, gf_inverse(e, f), f), f.one());
        for (long v = 1; v < 128; ++v) {
            for (long w : {1L, 0x23L, 0x7FL}) {
                const auto b = el(v), c = el(w);
                ASSERT_EQ(gf_mul(gf_mul(e, b, f), c, f), gf_mul(e, gf_mul(b, c, f), f));
                ASSERT_EQ(gf_mul(e, gf_add(b, c), f), gf_add(gf_mul(e, b, f), gf_mul(e, c, f)));
            }
        }
        powers.insert(gf_pow(f.x(), Int(u - 1), f).bits);
    }
    EXPECT_EQ(powers.size(), 127u);  // x generates
}

TEST(Hex, RoundTripAndFormat) {
    EXPECT_EQ(to_hex(Int(0x83)), "0x83");
    EXPECT_EQ(parse_hex("0x1D"), 0x1D);
    EXPECT_EQ(parse_hex("1d"), 0x1D);
    EXPECT_THROW(parse_hex("0xZZ"), std::invalid_argument);
    EXPECT_THROW(parse_hex("0x"), std::invalid_argument);
    EXPECT_EQ(to_poly_string(el(0x1D)), "x^4+x^3+x^2+1");
    for (int i = 0; i < 500; ++i) {
        Int v = uniform_below(ref::rng(), pow2(200));
        ASSERT_EQ(parse_hex(to_hex(v)), v);
    }
}

TEST(BinaryFieldParams, ElementRangeChecked) {
    auto f = gf128();
    EXPECT_THROW(f.elem(0x80), DomainError);
    EXPECT_EQ(f.elem(0x7F), el(0x7F));
}
