#include <random>

#include <gtest/gtest.h>

#include "moonshine/cliffordcm.hpp"

using namespace moonshine;

namespace {

SpinorState random_state(std::mt19937_64& rng, int density = 8) {
    std::uniform_int_distribution<int> coef(-3, 3), pick(0, density - 1);
    SpinorState s;
    for (std::uint32_t b = 0; b < kCmDim; ++b)
        if (pick(rng) == 0) s.coords[b] = CycNumber(coef(rng)) + CycNumber(coef(rng)) * CycNumber::zeta(4, 1);
    return s;
}

std::vector<RootOfUnity> lambdas_of(const char* shape) { return pair_eigenvalues(FrameShape::parse(shape).eigenvalues()); }

}  // namespace

TEST(SpinorTrace, SpotValues) {
    EXPECT_EQ(spinor_supertrace_closed(lambdas_of("2^24/1^24")).to_rational(), 4096);
    EXPECT_EQ(spinor_supertrace_closed(lambdas_of("3^12/1^12")).to_rational(), 729);
    EXPECT_EQ(spinor_supertrace_closed(lambdas_of("2^24/1^24"), -1).to_rational(), -4096);
    EXPECT_TRUE(spinor_supertrace_closed(lambdas_of("1^24")).is_zero());
    EXPECT_TRUE(spinor_supertrace_oracle(lambdas_of("1^24")).is_zero());
    EXPECT_TRUE(spinor_supertrace_closed(lambdas_of("1^8.2^8")).is_zero());
}

TEST(SpinorTrace, PairingErrors) {
    std::vector<RootOfUnity> bad(24, RootOfUnity::make(3, 1));
    EXPECT_THROW(pair_eigenvalues(bad), ValidationError);
    std::vector<RootOfUnity> odd(23, RootOfUnity{});
    odd.push_back(RootOfUnity::make(2, 1));
    EXPECT_THROW(pair_eigenvalues(odd), ValidationError);
}

TEST(SpinorTrace, OracleMatchesClosedFormOnRegistry) {
    for (const auto& rec : registry()) {
        const auto lambdas = pair_eigenvalues(rec.frame_shape.eigenvalues());
        const auto closed = spinor_supertrace_closed(lambdas);
        const auto oracle = spinor_supertrace_oracle(lambdas);
        EXPECT_EQ(closed, oracle) << rec.co0_name;
        ASSERT_TRUE(oracle.is_rational()) << rec.co0_name;
        EXPECT_EQ(abs(oracle.to_rational()), std::abs(rec.c_hat_g)) << rec.co0_name;
        // the parity split is the definition of the super trace
        const auto [even, odd] = spinor_subset_sums(lambdas);
        CycNumber nu(1);
        for (const auto& l : lambdas) nu *= half_angle_root(l);
        EXPECT_EQ(nu * even - nu * odd, oracle) << rec.co0_name;
        const int corr = nu_sign_correction(rec);
        EXPECT_EQ(spinor_trace(rec.frame_shape, corr), rec.c_hat_g) << rec.co0_name;
    }
}

TEST(SpinorTrace, TabulatedMagnitudes) {
    EXPECT_EQ(std::abs(lookup("4A").c_hat_g), spinor_trace(FrameShape::parse("4^12/2^12")));
    EXPECT_EQ(spinor_trace(lookup("6C").frame_shape), 8);
    EXPECT_EQ(nu_sign_correction(lookup("6C")), -1);
    EXPECT_EQ(nu_sign_correction(lookup("2A")), 1);
}

TEST(CliffordModule, AnnihilatorKillsVacuum) {
    const auto v = SpinorState::vacuum();
    for (int k = 0; k < kPairs; ++k) EXPECT_TRUE(apply_annihilator(k, v).is_zero()) << k;
    EXPECT_FALSE(apply_creator(0, v).is_zero());
    EXPECT_EQ(apply_creator(3, v), SpinorState::basis(1u << 3));
}

TEST(CliffordModule, CliffordRelations) {
    std::mt19937_64 rng(5);
    const auto s = random_state(rng, 16);
    for (int i = 0; i < 24; ++i) {
        const auto ei = CliffordWord::generator(i);
        EXPECT_EQ(act(ei, act(ei, s)), CycNumber(-1) * s) << i;
    }
    std::uniform_int_distribution<int> idx(0, 23);
    for (int t = 0; t < 20; ++t) {
        const int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        const auto ei = CliffordWord::generator(i), ej = CliffordWord::generator(j);
        EXPECT_TRUE((act(ei, act(ej, s)) + act(ej, act(ei, s))).is_zero()) << i << "," << j;
    }
}

TEST(CliffordModule, WordProductMatchesAction) {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<std::uint32_t> mask(0, 0xFFFFFFu);
    const auto s = random_state(rng, 32);
    for (int t = 0; t < 10; ++t) {
        const auto a = CliffordWord::from_mask(mask(rng)), b = CliffordWord::from_mask(mask(rng));
        EXPECT_EQ(act(a * b, s), act(a, act(b, s)));
        EXPECT_EQ((a * b).scalar, CycNumber(clifford_product_sign(a.mask(), b.mask())));
    }
}

TEST(CliffordModule, VolumeElementIsParity) {
    const auto z = clifford_volume();
    for (std::uint32_t s : {0u, 1u, 6u, 0x555u, 0xFFFu}) {
        const auto [t, c] = act_on_basis(z, s);
        EXPECT_EQ(t, s);
        EXPECT_EQ(c, CycNumber(std::popcount(s) % 2 ? -1 : 1));
    }
}

TEST(CliffordModule, FormNormalizationAndInvariance) {
    EXPECT_EQ(bilinear_cm(SpinorState::basis(kCmDim - 1), SpinorState::vacuum()), CycNumber(1));
    EXPECT_TRUE(bilinear_cm(SpinorState::vacuum(), SpinorState::vacuum()).is_zero());
    std::mt19937_64 rng(13);
    const auto x = random_state(rng, 4), y = random_state(rng, 4);
    for (int i = 0; i < 24; ++i) {
        const auto ei = CliffordWord::generator(i);
        EXPECT_TRUE((bilinear_cm(act(ei, x), y) + bilinear_cm(x, act(ei, y))).is_zero()) << i;
    }
}

TEST(CliffordModule, FormIsNonDegenerate) {
    // Gram matrix on the full basis: every row and column holds exactly one entry +-1,
    // so it is a signed permutation matrix with determinant +-1.
    std::vector<int> col_hits(kCmDim, 0);
    long det_sign = 1;
    for (std::uint32_t s = 0; s < kCmDim; ++s) {
        int hits = 0;
        for (std::uint32_t t = 0; t < kCmDim; ++t) {
            const int e = cm_form_entry(s, t);
            if (e == 0) continue;
            ++hits;
            ++col_hits[t];
            det_sign *= e;
        }
        ASSERT_EQ(hits, 1) << s;
    }
    for (int h : col_hits) ASSERT_EQ(h, 1);
    EXPECT_NE(det_sign, 0);
}

TEST(GolayLift, SectionIsAGroup) {
    const GolayLift lift;
    EXPECT_EQ(lift.sign(0), 1);
    EXPECT_EQ(lift.sign(0xFFFFFFu), 1);
    EXPECT_EQ(lift.element(lift.code().index_of(0xFFFFFFu)).gens, clifford_volume().gens);
    const auto rep = lift.check_closure();
    EXPECT_TRUE(rep.closed);
    EXPECT_TRUE(rep.squares_trivial);
    EXPECT_EQ(rep.group_order, 8192u);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::uint32_t> pick(0, kCmDim - 1);
    for (int t = 0; t < 1000; ++t) {
        const auto a = pick(rng), b = pick(rng);
        const auto prod = lift.element(a) * lift.element(b);
        const auto expect = lift.element(a ^ b);
        EXPECT_EQ(prod.gens, expect.gens);
        EXPECT_EQ(prod.scalar, expect.scalar);
    }
    for (std::uint32_t i = 0; i < kCmDim; ++i) {
        const auto sq = lift.element(i) * lift.element(i);
        ASSERT_TRUE(sq.gens.empty());
        ASSERT_EQ(sq.scalar, CycNumber(1));
    }
}

TEST(GolayLift, N1Checks) {
    const auto rep = n1_checks(240, 10, 7);
    EXPECT_TRUE(rep.nonzero);
    EXPECT_TRUE(rep.idempotent_vacuum);
    EXPECT_EQ(rep.idempotent_random_states, 10);
    EXPECT_TRUE(rep.invariant);
    EXPECT_TRUE(rep.matches_full_sum);
    EXPECT_EQ(rep.orthogonality_samples, 240);
    EXPECT_EQ(rep.orthogonality_failures, 0);
    EXPECT_FALSE(rep.tau_norm.is_zero());
    EXPECT_TRUE(rep.pass());
    std::cout << "<tau,tau> = " << rep.tau_norm.to_string() << ", alpha^2 = " << rep.alpha_squared.to_string() << "\n";
}
