#include <random>

#include <gtest/gtest.h>

#include "moonshine/cyclotomic.hpp"

using namespace moonshine;

namespace {

CycNumber random_cyc(std::mt19937_64& rng, int level) {
    std::uniform_int_distribution<int> d(-5, 5);
    std::vector<Rational> coords;
    for (int i = 0; i < euler_phi(level); ++i) coords.push_back(make_rational(d(rng), 1 + std::abs(d(rng))));
    return CycNumber::from_coords(level, coords);
}

}  // namespace

TEST(Cyclotomic, SmallPolynomials) {
    EXPECT_EQ(cyclotomic_polynomial(1), (IntPoly{-1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(2), (IntPoly{1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(12).size(), 5u);
    EXPECT_EQ(cyclotomic_polynomial(12), (IntPoly{1, 0, -1, 0, 1}));
    for (int n = 1; n <= 60; ++n) EXPECT_EQ(static_cast<int>(cyclotomic_polynomial(n).size()) - 1, euler_phi(n));
}

TEST(Cyclotomic, BasicIdentities) {
    EXPECT_TRUE((CycNumber::zeta(4, 1) + CycNumber::zeta(4, -1)).is_zero());
    const CycNumber w = CycNumber::zeta(3, 1);
    EXPECT_EQ(((1 - w) * (1 - w.conj())).to_rational(), 3);
    for (int n : {1, 5, 12, 24, 30}) EXPECT_EQ(CycNumber::zeta(n, n), CycNumber(1));
    EXPECT_EQ(CycNumber::zeta(2, 1), CycNumber(-1));
}

TEST(Cyclotomic, PairedProductForOrderThree) {
    // twelve eigenvalue pairs (w, w^-1): prod (1 - w^{-1}) times the half-angle root
    CycNumber prod(1);
    for (int i = 0; i < 12; ++i) prod *= (1 - CycNumber::zeta(3, -1)) * CycNumber::zeta(6, 1);
    EXPECT_EQ(prod.to_rational(), 729);
}

TEST(Cyclotomic, NotRational) {
    EXPECT_THROW((void)CycNumber::zeta(8, 1).to_rational(), NotRationalError);
    EXPECT_THROW((void)CycNumber(0).inverse(), NotInvertibleError);
}

TEST(Cyclotomic, FieldAxioms) {
    std::mt19937_64 rng(7);
    for (int level : {3, 4, 5, 8, 12, 24}) {
        for (int trial = 0; trial < 10; ++trial) {
            const CycNumber a = random_cyc(rng, level), b = random_cyc(rng, level), c = random_cyc(rng, level);
            EXPECT_EQ(a + b, b + a);
            EXPECT_EQ(a * b, b * a);
            EXPECT_EQ((a + b) + c, a + (b + c));
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(a * (b + c), a * b + a * c);
            if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), CycNumber(1));
            EXPECT_EQ(a.conj().conj(), a);
        }
    }
}

TEST(Cyclotomic, ConjNormIsNonNegative) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> lv(1, 40), ex(-100, 100), num(-9, 9);
    for (int trial = 0; trial < 50; ++trial) {
        const CycNumber x = CycNumber::zeta(lv(rng), ex(rng)) * Rational(num(rng));
        EXPECT_GE((x * x.conj()).to_rational(), 0);
    }
}

TEST(Cyclotomic, LevelRaising) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> small(1, 12), ex(-50, 50);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = small(rng), n = small(rng);
        const int k = ex(rng);
        EXPECT_EQ(CycNumber::zeta(n, k).raised_to(m * n), CycNumber::zeta(m * n, static_cast<std::int64_t>(m) * k));
    }
}

TEST(Cyclotomic, MixedLevels) {
    const CycNumber i = CycNumber::zeta(4, 1);
    const CycNumber w = CycNumber::zeta(3, 1);
    EXPECT_EQ((i * w).level(), 12);
    EXPECT_EQ(i * w, CycNumber::zeta(12, 7));
    EXPECT_NEAR(std::abs((i + w).to_complex() - (std::complex<double>(0, 1) + std::polar(1.0, 2 * std::numbers::pi / 3))), 0,
                1e-12);
    EXPECT_EQ(CycNumber::zeta(5, 2).norm(), 1);
}
