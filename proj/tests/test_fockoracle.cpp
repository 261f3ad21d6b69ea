#include <gtest/gtest.h>

#include "moonshine/fockoracle.hpp"
#include "moonshine/traces.hpp"

using namespace moonshine;

namespace {

const FrameShape kId = FrameShape::parse("1^24");
const FrameShape kMinus = FrameShape::parse("2^24/1^24");

ModeSystem untw(const FrameShape& pi, const Rational& d = 6) {
    return ModeSystem::from_frame_shape(pi, Sector::Untwisted, d);
}

ModeSystem tw(const FrameShape& pi, const Rational& d = 6) {
    return ModeSystem::from_frame_shape(pi, Sector::Twisted, d);
}

SectorTraces traces_of(const ConjugacyClassRecord& rec, const Rational& d) {
    return sector_traces(rec.frame_shape, CycNumber(Rational(rec.c_hat_g)), d);
}

SectorTraces partner_traces_of(const ConjugacyClassRecord& rec, const Rational& d) {
    const DerivedPartner p = derived_partner(rec);
    return sector_traces(p.frame_shape, CycNumber(p.c_value), d);
}

}  // namespace

TEST(FockOracle, ModeSystemValidation) {
    EXPECT_THROW(ModeSystem({}, Sector::Untwisted, 3), ValidationError);
    EXPECT_THROW(untw(kId, 0), ValidationError);
    EXPECT_EQ(untw(kId, 6).order(), 6);
    EXPECT_EQ(untw(kId, make_rational(5, 2)).order(), 3);
    EXPECT_EQ(untw(kId, 2).order(), 2);
    EXPECT_EQ(tw(kId, 3).order(), 5);
    EXPECT_THROW(untwisted_supertrace(tw(kId)), ValidationError);
    EXPECT_THROW(twisted_supertrace(untw(kId), CycNumber(1)), ValidationError);
}

TEST(FockOracle, IdentityLowStates) {
    const CycSeries s = untwisted_supertrace(untw(kId));
    EXPECT_EQ(s.coeff(make_rational(-1, 2)), CycNumber(1));
    EXPECT_EQ(s.coeff(0), CycNumber(-24));
    EXPECT_EQ(s.coeff(make_rational(1, 2)), CycNumber(276));
    EXPECT_EQ(s.coeff(1), CycNumber(-2048));
}

TEST(FockOracle, MatchesEtaQuotientFormula) {
    std::vector<FrameShape> shapes = {kId};
    for (const char* name : {"2A", "3A", "4A", "6C"}) shapes.push_back(lookup(name).frame_shape);
    for (const auto& pi : shapes) {
        const CycSeries oracle = untwisted_supertrace(untw(pi));
        const CycSeries formula = promote(t_tilde(pi, 6));
        EXPECT_EQ(oracle, formula) << pi.to_string();
        const CycSeries twisted = twisted_supertrace(tw(pi), CycNumber(7));
        EXPECT_TRUE(agree(twisted, promote(eta_quotient(pi, 1, 8) * Rational(7)))) << pi.to_string();
    }
}

TEST(FockOracle, SubsetEnumerationMatchesModeProduct) {
    for (const char* name : {"2A", "3A", "6C", "12A"}) {
        const FrameShape& pi = lookup(name).frame_shape;
        for (const Sector s : {Sector::Untwisted, Sector::Twisted}) {
            const ModeSystem ms = ModeSystem::from_frame_shape(pi, s, 3);
            const CycSeries product =
                s == Sector::Untwisted ? untwisted_supertrace(ms) : twisted_supertrace(ms, CycNumber(1));
            const CycSeries listed = enumerated_supertrace(ms);
            EXPECT_EQ(listed.order(), product.order()) << name;
            EXPECT_TRUE(agree(listed, product)) << name;
        }
    }
    const SubsetCounts counts = enumerate_subsets(untw(kId, 1));
    // energy 1 in half units: 24 single modes, each odd
    EXPECT_EQ(counts.by_energy[1].at(0), -24);
    EXPECT_EQ(counts.states, 1u + 24u + 276u);
}

TEST(FockOracle, TwistedMinusClass) {
    const CycSeries s = twisted_supertrace(tw(kMinus, 8), CycNumber(4096));
    // 4096 q prod (1 + q^n)^24
    QSeries expect = QSeries::monomial(4096, 1, 10);
    for (int n = 1; n <= 8; ++n)
        for (int r = 0; r < 24; ++r) expect = expect * (QSeries::constant(1, 10) + QSeries::monomial(1, n, 10));
    EXPECT_TRUE(agree(s, promote(expect)));
    EXPECT_EQ(s.valuation(), 1);
    EXPECT_TRUE(twisted_supertrace(tw(kId), CycNumber(0)).empty());
}

TEST(FockOracle, IdentityVsNatural) {
    const auto [c_neg, rep] = solve_c_neg(kId, 0, 10);
    ASSERT_TRUE(rep.pass);
    EXPECT_EQ(c_neg, 4096);
    const SectorTraces g = sector_traces(kId, CycNumber(0), 6);
    const SectorTraces neg = sector_traces(kMinus, CycNumber(c_neg), 6);
    const CycSeries s = assemble_supertrace(SupertraceKind::S, g, neg);
    EXPECT_EQ(s.coeff(make_rational(-1, 2)), CycNumber(1));
    EXPECT_EQ(s.coeff(0), CycNumber(0));
    EXPECT_EQ(s.coeff(make_rational(1, 2)), CycNumber(276));
    EXPECT_EQ(s.coeff(1), CycNumber(-2048));
}

TEST(FockOracle, FourTermFormulaReproducesTs) {
    const Rational d = 4;
    for (const auto& rec : registry()) {
        const SectorTraces g = traces_of(rec, d);
        const SectorTraces neg = partner_traces_of(rec, d);
        const CycSeries s = assemble_supertrace(SupertraceKind::S, g, neg);
        EXPECT_TRUE(agree(s, promote(T_s(rec.frame_shape, 6)))) << rec.co0_name;
        EXPECT_TRUE(s.coeff(0).is_zero()) << rec.co0_name;

        // the two projections recombine to the full super traces
        const CycSeries whole = assemble_supertrace(SupertraceKind::S, g, neg) +
                                assemble_supertrace(SupertraceKind::STw, g, neg);
        EXPECT_TRUE(agree(whole, g.untwisted + g.twisted)) << rec.co0_name;
        const CycSeries f_whole = assemble_supertrace(SupertraceKind::F, g, neg) +
                                  assemble_supertrace(SupertraceKind::FTw, g, neg);
        EXPECT_TRUE(agree(f_whole, g.untwisted + g.twisted)) << rec.co0_name;
    }
}
