#include <gtest/gtest.h>

#include <set>

#include "espdesign/finite_field.hpp"
#include "oracles.hpp"

using namespace espd;

class FieldByM : public ::testing::TestWithParam<int> {};

TEST_P(FieldByM, LogAntilogRoundTrip) {
    const GaloisField f = GaloisField::build(GetParam());
    EXPECT_EQ(f.size(), 1u << (2 * GetParam()));
    EXPECT_EQ(f.q(), 1u << GetParam());
    std::set<std::uint16_t> seen;
    for (std::uint32_t i = 0; i + 1 < f.size(); ++i) {
        const Elem x = f.exp(i);
        EXPECT_EQ(f.log(x), i);
        seen.insert(x.bits);
    }
    EXPECT_EQ(seen.size(), f.size() - 1);  // alpha is primitive
}

TEST_P(FieldByM, ArithmeticAgainstCarrylessProduct) {
    const GaloisField f = GaloisField::build(GetParam());
    std::mt19937_64 rng(GetParam());
    std::uniform_int_distribution<std::uint32_t> d(0, f.size() - 1);
    const std::uint32_t poly = f.reduction_poly(), top = f.size();
    auto slow = [&](std::uint32_t a, std::uint32_t b) {
        std::uint32_t r = 0;
        for (; b; b >>= 1, a <<= 1) {
            if (a & top) a ^= poly;
            if (b & 1) r ^= a;
        }
        return r;
    };
    for (int i = 0; i < 2000; ++i) {
        const Elem a(static_cast<std::uint16_t>(d(rng))), b(static_cast<std::uint16_t>(d(rng))), c(static_cast<std::uint16_t>(d(rng)));
        EXPECT_EQ(f.mul(a, b).bits, slow(a.bits, b.bits));
        EXPECT_EQ(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
        if (!a.is_zero()) {
            EXPECT_EQ(f.mul(a, f.inv(a)), kOne);
            EXPECT_EQ(f.mul(f.div(b, a), a), b);
        }
        EXPECT_EQ(f.mul(f.sqrt(a), f.sqrt(a)), a);
        EXPECT_TRUE(f.in_subfield(f.trace(a)));
        const auto [x0, x1] = f.split_over_subfield(a);
        EXPECT_TRUE(f.in_subfield(x0));
        EXPECT_TRUE(f.in_subfield(x1));
        EXPECT_EQ(x0 + f.mul(x1, f.alpha()), a);
    }
}

TEST_P(FieldByM, SubfieldHasQElements) {
    const GaloisField f = GaloisField::build(GetParam());
    const auto sub = f.subfield_elements();
    EXPECT_EQ(sub.size(), f.q());
    for (Elem x : sub) EXPECT_EQ(f.frobenius(x), x);
}

TEST_P(FieldByM, UnitCircleStructure) {
    const UnitCircle uc = UnitCircle::build(GetParam());
    const GaloisField& f = uc.field();
    ASSERT_EQ(uc.size(), static_cast<int>(uc.q()) + 1);
    Elem prod = kOne;
    std::set<std::uint16_t> seen;
    for (int i = 0; i < uc.size(); ++i) {
        const Elem u = uc[static_cast<std::size_t>(i)];
        EXPECT_EQ(f.pow(u, uc.q() + 1), kOne);
        EXPECT_EQ(f.frobenius(u), f.inv(u));  // conjugation is inversion on U
        EXPECT_EQ(uc.index_of(u), i);
        EXPECT_EQ(u, f.pow(uc.beta(), static_cast<std::uint64_t>(i)));
        prod = f.mul(prod, u);
        seen.insert(u.bits);
    }
    EXPECT_EQ(prod, kOne);
    EXPECT_EQ(seen.size(), static_cast<std::size_t>(uc.size()));
    EXPECT_FALSE(uc.contains(f.alpha()));
    EXPECT_EQ(uc.index_of(f.alpha()), -1);
    EXPECT_FALSE(uc.contains(kZero));
}

INSTANTIATE_TEST_SUITE_P(AllM, FieldByM, ::testing::Values(4, 5, 6, 7));

TEST(FieldConstruction, RejectsReduciblePolynomial) {
    EXPECT_THROW(GaloisField(4, 0x101), FieldError);  // x^8 + 1
}

TEST(FieldConstruction, RejectsWrongDegree) { EXPECT_THROW(GaloisField(4, 0x1D), FieldError); }

TEST(FieldConstruction, RejectsUnsupportedM) {
    EXPECT_THROW(GaloisField::build(3), std::invalid_argument);
    EXPECT_THROW(GaloisField::build(8), std::invalid_argument);
}

TEST(FieldConstruction, PolynomialString) { EXPECT_EQ(GaloisField::build(4).poly_string(), "x^8 + x^4 + x^3 + x^2 + 1"); }

TEST(FieldConstruction, InverseOfZeroThrows) {
    const GaloisField f = GaloisField::build(4);
    EXPECT_ANY_THROW(static_cast<void>(f.inv(kZero)));
    EXPECT_ANY_THROW(static_cast<void>(f.log(kZero)));
}
