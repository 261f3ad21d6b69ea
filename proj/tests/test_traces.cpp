#include <gtest/gtest.h>

#include "moonshine/traces.hpp"

using namespace moonshine;

namespace {

const FrameShape kId = FrameShape::parse("1^24");
const FrameShape kMinus = FrameShape::parse("2^24/1^24");

}  // namespace

TEST(Traces, IdentityTTilde) {
    const auto t = t_tilde(kId, 10);
    EXPECT_EQ(t.valuation(), make_rational(-1, 2));
    EXPECT_EQ(t.coeff(make_rational(-1, 2)), 1);
    EXPECT_EQ(t.coeff(0), -24);
    EXPECT_EQ(t.coeff(make_rational(1, 2)), 276);
    EXPECT_EQ(t.order(), 10);
    // q^{-1/2} prod (1 - q^{n - 1/2})^24 by plain multiplication
    QSeries prod = QSeries::monomial(1, make_rational(-1, 2), 10);
    for (int n = 1; n <= 10; ++n) {
        const auto f = QSeries::constant(1, 11) - QSeries::monomial(1, make_rational(2 * n - 1, 2), 11);
        for (int r = 0; r < 24; ++r) prod = prod * f;
    }
    EXPECT_TRUE(agree(prod, t));
}

TEST(Traces, MinusTTildeIsDeltaQuotient) {
    const Rational o = 30;
    const auto d = [&](const Rational& s) { return eta_quotient(kId, s, o + 10); };
    const auto expect = d(1) * d(1) * (d(2) * d(make_rational(1, 2))).inverse();
    EXPECT_TRUE(agree(t_tilde(kMinus, o), expect));
}

TEST(Traces, ConstantTermIsMinusK1) {
    for (const auto& rec : registry()) {
        EXPECT_EQ(t_tilde(rec.frame_shape, 3).coeff(0), -rec.frame_shape.chi()) << rec.co0_name;
        EXPECT_EQ(T_s(rec.frame_shape, 3).coeff(0), 0) << rec.co0_name;
        EXPECT_EQ(T_s(rec.frame_shape.negate(), 3).coeff(0), 0) << rec.co0_name;
    }
}

TEST(Traces, NegationIsAHalfPeriodShift) {
    // eps -> -eps in q^{-1/2} prod (1 - eps q^{n-1/2}) gives T_{-g}(tau) = -T_g(tau + 1):
    // integral exponents change sign, half-odd ones (including q^{-1/2}) do not
    for (const auto& rec : registry()) {
        const auto& pi = rec.frame_shape;
        const auto a = T_s(pi, 12), b = T_s(pi.negate(), 12);
        EXPECT_TRUE(agree(promote(b), -shift_tau(a, 1))) << rec.co0_name;
        EXPECT_EQ(b.coeff(make_rational(-1, 2)), 1) << rec.co0_name;
    }
}

TEST(Traces, TwistedSeries) {
    const auto s = T_s_tw(lookup("2A"), 5);
    EXPECT_EQ(s.coeff(0), 24);
    EXPECT_EQ(s.coeff(1), 4096);
    EXPECT_EQ(s.coeff(2), 4096 * 24);
    // with fixed points C vanishes and only -chi remains
    const auto fixed = FrameShape::parse("1^8.2^8");
    const auto t = T_s_tw(fixed, spinor_trace(fixed), 10);
    EXPECT_EQ(t.terms().size(), 1u);
    EXPECT_EQ(t.coeff(0), -8);
}

TEST(Traces, SolvedPartners) {
    const auto& a3 = lookup("3A");
    const auto [c, rep] = solve_c_neg(a3, 25);
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.max_residual, 0);
    // matches the spinor closed form for the negated eigenvalues up to sign
    EXPECT_EQ(abs(c), spinor_trace(a3.frame_shape.negate()));
    const auto p = derived_partner(lookup("2A"));
    EXPECT_EQ(p.frame_shape, kId);
    EXPECT_EQ(p.c_value, 0);
    // identity class supplied by hand: c for -e is the 2A value
    const auto [c_id, rep_id] = solve_c_neg(kId, 0, 20, "1A");
    EXPECT_TRUE(rep_id.pass);
    EXPECT_EQ(c_id, 4096);
}

TEST(Traces, WrongConstantLeavesResidual) {
    const auto& rec = lookup("3A");
    const auto [c, rep] = solve_c_neg(rec, 10);
    const auto bad = lemma_residual(rec.frame_shape, Rational(rec.c_hat_g), c + 1, 10);
    EXPECT_FALSE(bad.empty());
}

TEST(Traces, DeltaIdentity) {
    const auto rep = verify_delta_identity(50);
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.max_residual, 0);
    EXPECT_FALSE(verify_delta_identity(20, 1024).pass);
    // both sides start 24 + 2^11 q
    const auto lhs = (t_tilde(kMinus, 3) - t_tilde(kId, 3)) * Rational(1, 2);
    const auto rhs = QSeries::constant(24, 3) + eta_quotient(kMinus, 1, 3) * Rational(2048);
    EXPECT_EQ(lhs.coeff(0), 24);
    EXPECT_EQ(lhs.coeff(1), 2048);
    EXPECT_EQ(rhs.coeff(1), 2048);
    EXPECT_THROW(verify_delta_identity(1), PrecisionError);
}

TEST(Traces, Hecke) {
    const auto f = eta_quotient(kMinus, 1, 4);
    EXPECT_EQ(f.coeff(1), 1);
    EXPECT_EQ(f.coeff(2), 24);
    const auto h = verify_hecke(40);
    EXPECT_TRUE(h.report.pass);
    EXPECT_EQ(h.a, 2048);
    EXPECT_EQ(h.b, 24);
    EXPECT_EQ(h.c, 0);
    EXPECT_TRUE(verify_half_shift(30).pass);
}
