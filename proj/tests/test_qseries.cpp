#include <random>

#include <gtest/gtest.h>

#include "moonshine/qseries.hpp"

using namespace moonshine;

namespace {

QSeries random_series(std::mt19937_64& rng, std::int64_t denom, const Rational& order, bool unit = false) {
    std::uniform_int_distribution<int> c(-6, 6), lead(-3, 3), len(1, 30);
    std::vector<QSeries::Term> terms;
    const int start = unit ? 0 : lead(rng);
    const int n = len(rng);
    for (int i = 0; i < n; ++i) terms.emplace_back(start + i, make_rational(c(rng), 1 + std::abs(c(rng))));
    if (unit) terms.front().second = make_rational(1 + std::abs(c(rng)), 1);
    return QSeries::from_terms(denom, terms, order);
}

// q^{1/24} prod_{n < N} (1 - q^n) by plain multiplication
QSeries eta_product(int n_max, const Rational& order) {
    QSeries p = QSeries::monomial(1, make_rational(1, 24), order);
    for (int n = 1; n <= n_max && n < order + 1; ++n) p = p * (QSeries::constant(1, order + 1) - QSeries::monomial(1, n, order + 1));
    return p;
}

}  // namespace

TEST(QSeries, Monomial) {
    const auto a = QSeries::monomial(1, make_rational(-1, 2), 10);
    EXPECT_EQ(a.terms().size(), 1u);
    EXPECT_EQ(a.valuation(), make_rational(-1, 2));
    EXPECT_EQ(a.denom(), 2);
    EXPECT_TRUE(QSeries::monomial(0, 0, 5).empty());
    EXPECT_EQ(QSeries::monomial(0, 0, 5).order(), 5);
    EXPECT_EQ(QSeries::monomial(24, 0, 3).coeff(0), 24);
    EXPECT_THROW(QSeries::monomial(1, 3, 3), PrecisionError);
    EXPECT_THROW((void)a.coeff(10), PrecisionError);
}

TEST(QSeries, GeometricInverse) {
    const Rational N = 40;
    const auto one_minus_q = QSeries::constant(1, N) - QSeries::monomial(1, 1, N);
    const auto inv = one_minus_q.inverse();
    for (int k = 0; k < 40; ++k) EXPECT_EQ(inv.coeff(k), 1);
    std::vector<QSeries::Term> geo;
    for (int k = 0; k < 40; ++k) geo.emplace_back(k, Rational(1));
    EXPECT_TRUE(agree(one_minus_q * QSeries::from_terms(1, geo, N), QSeries::constant(1, N)));
    EXPECT_THROW(QSeries::zero(4).inverse(), NotInvertibleError);
}

TEST(QSeries, OrderTracking) {
    const auto a = QSeries::monomial(1, 2, 10) + QSeries::monomial(3, 4, 10);
    const auto b = QSeries::monomial(1, -1, 5);
    EXPECT_EQ((a + b).order(), 5);
    EXPECT_EQ((a * b).order(), 7);  // min(2 + 5, -1 + 10)
    EXPECT_EQ(a.inverse().order(), 6);
    EXPECT_EQ(a.inverse().valuation(), -2);
}

TEST(QSeries, StrictEqualityNeedsEqualOrders) {
    const auto a = QSeries::monomial(1, 1, 10);
    const auto b = QSeries::monomial(1, 1, 11);
    EXPECT_THROW((void)(a == b), OrderMismatchError);
    EXPECT_TRUE(agree(a, b));
    EXPECT_FALSE(agree(a, QSeries::monomial(2, 1, 11)));
}

TEST(QSeries, EtaMatchesProduct) {
    const auto e = eta(10);
    const int expect[] = {1, -1, -1, 0, 0, 1, 0, 1};
    for (int n = 0; n < 8; ++n) EXPECT_EQ(e.coeff(make_rational(1, 24) + n), expect[n]) << n;
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> ord(2, 60);
    for (int trial = 0; trial < 3; ++trial) {
        const Rational o = make_rational(ord(rng), 1 + trial);
        const auto p = eta_product(static_cast<int>(ceil_int(o)) + 1, o);
        EXPECT_TRUE(agree(eta(o), p)) << o;
        EXPECT_EQ(eta(o).order(), o);
    }
    const auto tiny = eta(make_rational(1, 12));
    EXPECT_EQ(tiny.terms().size(), 1u);
    EXPECT_EQ(tiny.valuation(), make_rational(1, 24));
    EXPECT_THROW(eta(make_rational(1, 24)), PrecisionError);
}

TEST(QSeries, EtaInverse) {
    const auto e = eta(20);
    const auto inv = e.inverse();
    EXPECT_EQ(inv.valuation(), make_rational(-1, 24));
    EXPECT_TRUE(agree(e * inv, QSeries::constant(1, 100)));
    // long-division oracle: 1/prod(1-q^n) counts partitions
    const int partitions[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (int n = 0; n <= 10; ++n) EXPECT_EQ(inv.coeff(make_rational(-1, 24) + n), partitions[n]);
}

TEST(QSeries, RingLaws) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = random_series(rng, 2, 12), b = random_series(rng, 3, 10), c = random_series(rng, 4, 15);
        EXPECT_TRUE(agree(a + b, b + a));
        EXPECT_TRUE(agree(a * b, b * a));
        EXPECT_TRUE(agree((a + b) + c, a + (b + c)));
        EXPECT_TRUE(agree((a * b) * c, a * (b * c)));
        EXPECT_TRUE(agree(a * (b + c), a * b + a * c));
        EXPECT_TRUE(agree(a * QSeries::constant(1, 1000), a));
    }
}

TEST(QSeries, InverseIsTwoSided) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_series(rng, 1 + trial % 6, 10, true);
        const auto inv = a.inverse();
        const auto one = QSeries::constant(1, 1000);
        EXPECT_TRUE(agree(a * inv, one));
        EXPECT_TRUE(agree(inv * a, one));
        EXPECT_EQ((a * inv).order(), a.order() - a.valuation());
    }
}

TEST(QSeries, OrderSoundness) {
    auto pipeline = [](const Rational& o) {
        const auto e = eta(o);
        return (e.scale_tau(2) * e.pow(3)).inverse() * e.scale_tau(make_rational(1, 2));
    };
    const auto lo = pipeline(15), hi = pipeline(31);
    EXPECT_TRUE(agree(lo, hi));
    EXPECT_LT(lo.order(), hi.order());
}

TEST(QSeries, ScaleTau) {
    const auto e = eta(20);
    EXPECT_EQ(e.scale_tau(2).valuation(), make_rational(2, 24));
    EXPECT_EQ(e.scale_tau(make_rational(1, 2)).valuation(), make_rational(1, 48));
    EXPECT_TRUE(agree(e.scale_tau(2).scale_tau(make_rational(1, 2)), e));
    EXPECT_EQ(e.scale_tau(2).scale_tau(make_rational(1, 2)).order(), e.order());
    EXPECT_TRUE(agree(e.scale_tau(3).scale_tau(make_rational(5, 7)), e.scale_tau(make_rational(15, 7))));
}

TEST(QSeries, ShiftTau) {
    const auto e24 = eta(10).pow(24);
    EXPECT_TRUE(agree(shift_tau(e24, 1), promote(e24)));
    const auto half = shift_tau(QSeries::monomial(1, make_rational(1, 2), 3), 1);
    EXPECT_EQ(half.coeff(make_rational(1, 2)), CycNumber(-1));
    const auto s = eta(12);
    EXPECT_TRUE(agree(shift_tau(shift_tau(s, make_rational(1, 3)), make_rational(1, 4)),
                      shift_tau(s, make_rational(7, 12))));
    EXPECT_TRUE(agree(demote(shift_tau(s, 24)), s));
}

TEST(QSeries, TextRoundTrip) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_series(rng, 1 + trial % 5, make_rational(37, 3));
        EXPECT_EQ(parse_series_text(to_text(a)), a);
    }
    EXPECT_EQ(parse_series_text("O(q^{5/1})\n"), QSeries::zero(5));
    EXPECT_THROW(parse_series_text("1/2 q^{1/2}\n"), ParseError);
    EXPECT_THROW(parse_series_text("x q^{1/2}\nO(q^{1})"), ParseError);
}
