#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "moonshine/classdata.hpp"
#include "moonshine/cyclotomic.hpp"
#include "moonshine/error.hpp"
#include "moonshine/frameshape.hpp"
#include "moonshine/lattice.hpp"

namespace moonshine {

inline constexpr int kPairs = 12;
inline constexpr std::uint32_t kCmDim = 1u << kPairs;

// ---------------------------------------------------------------------------
// Super traces from eigenvalues

/// Splits 24 eigenvalues into 12 inverse pairs {lambda, lambda^-1} and returns one
/// member of each pair (the one with angle in [0, 1/2], real ones paired with themselves).
inline std::vector<RootOfUnity> pair_eigenvalues(const std::vector<RootOfUnity>& eigenvalues) {
    if (eigenvalues.size() != 24) throw ValidationError("expected 24 eigenvalues");
    std::map<RootOfUnity, int> counts;
    for (const auto& r : eigenvalues) ++counts[r];
    std::vector<RootOfUnity> out;
    for (const auto& [r, c] : counts) {
        const RootOfUnity inv = r.inverse();
        if (inv == r) {
            if (c % 2) throw ValidationError("real eigenvalue with odd multiplicity cannot be paired");
            out.insert(out.end(), static_cast<std::size_t>(c / 2), r);
        } else if (r.angle() < make_rational(1, 2)) {
            auto it = counts.find(inv);
            if (it == counts.end() || it->second != c)
                throw ValidationError("eigenvalue exp(2 pi i " + to_string(r.angle()) + ") has no matching inverse");
            out.insert(out.end(), static_cast<std::size_t>(c), r);
        }
    }
    if (out.size() != kPairs) throw ValidationError("eigenvalues do not split into 12 inverse pairs");
    return out;
}

/// Half-angle root exp(pi i theta) for lambda = exp(2 pi i theta), theta in [0, 1).
inline CycNumber half_angle_root(const RootOfUnity& r) { return CycNumber::zeta(2 * r.order, r.exponent); }

/// nu * prod (1 - lambda_i^{-1}), nu = nu_sign * prod nu_i.
inline CycNumber spinor_supertrace_closed(const std::vector<RootOfUnity>& lambdas, int nu_sign = 1) {
    if (lambdas.size() != kPairs) throw ValidationError("expected 12 paired eigenvalues");
    CycNumber out(nu_sign);
    for (const auto& l : lambdas) out *= half_angle_root(l) * (CycNumber(1) - l.inverse().value());
    return out;
}

/// Even-|S| and odd-|S| parts of sum_S prod_{i in S} lambda_i^{-1}, by explicit
/// summation over all 4096 subsets (counts of each root of unity, then one conversion).
inline std::pair<CycNumber, CycNumber> spinor_subset_sums(const std::vector<RootOfUnity>& lambdas) {
    if (lambdas.size() != kPairs) throw ValidationError("expected 12 paired eigenvalues");
    int level = 1;
    for (const auto& l : lambdas) level = std::lcm(level, l.order);
    std::array<int, kPairs> step{};
    for (int i = 0; i < kPairs; ++i) {
        const int e = static_cast<int>((static_cast<long>(level / lambdas[i].order) * lambdas[i].exponent) % level);
        step[i] = (level - e) % level;  // exponent of lambda_i^{-1} at this level
    }
    std::vector<long> even(level, 0), odd(level, 0);
    for (std::uint32_t s = 0; s < kCmDim; ++s) {
        long e = 0;
        for (int i = 0; i < kPairs; ++i)
            if (s >> i & 1u) e += step[i];
        (std::popcount(s) % 2 ? odd : even)[e % level] += 1;
    }
    CycNumber ev(0), od(0);
    for (int j = 0; j < level; ++j) {
        if (even[j]) ev += CycNumber::zeta(level, j) * CycNumber(even[j]);
        if (odd[j]) od += CycNumber::zeta(level, j) * CycNumber(odd[j]);
    }
    return {ev, od};
}

/// nu * sum_S (-1)^{|S|} prod_{i in S} lambda_i^{-1}.
inline CycNumber spinor_supertrace_oracle(const std::vector<RootOfUnity>& lambdas, int nu_sign = 1) {
    const auto [even, odd] = spinor_subset_sums(lambdas);
    CycNumber nu(nu_sign);
    for (const auto& l : lambdas) nu *= half_angle_root(l);
    return nu * (even - odd);
}

/// Closed-form C for a Frame shape under the default nu convention (always >= 0).
inline Rational spinor_trace(const FrameShape& pi, int nu_sign = 1) {
    return spinor_supertrace_closed(pair_eigenvalues(pi.eigenvalues()), nu_sign).to_rational();
}

/// Sign that turns the convention value into the tabulated C for a registry row.
/// Throws if the magnitudes disagree.
inline int nu_sign_correction(const ConjugacyClassRecord& rec) {
    const Rational c = spinor_trace(rec.frame_shape);
    if (abs(c) != abs(Rational(rec.c_hat_g)))
        throw StructuralError("class " + rec.co0_name + ": |C| = " + to_string(abs(c)) + " but the table has " +
                              std::to_string(rec.c_hat_g));
    return (c > 0) == (rec.c_hat_g > 0) ? 1 : -1;
}

// ---------------------------------------------------------------------------
// The module CM

/// Vector in CM. Basis vector S (bit k = pair k) is a^-_{i1} ... a^-_{ik} v_tw, i1 < ... < ik.
struct SpinorState {
    std::vector<CycNumber> coords = std::vector<CycNumber>(kCmDim);

    static SpinorState basis(std::uint32_t s) {
        SpinorState v;
        v.coords.at(s) = 1;
        return v;
    }
    static SpinorState vacuum() { return basis(0); }

    bool is_zero() const {
        for (const auto& c : coords)
            if (!c.is_zero()) return false;
        return true;
    }

    SpinorState& operator+=(const SpinorState& o) {
        for (std::uint32_t s = 0; s < kCmDim; ++s)
            if (!o.coords[s].is_zero()) coords[s] += o.coords[s];
        return *this;
    }
    SpinorState& operator-=(const SpinorState& o) {
        for (std::uint32_t s = 0; s < kCmDim; ++s)
            if (!o.coords[s].is_zero()) coords[s] -= o.coords[s];
        return *this;
    }
    SpinorState& operator*=(const CycNumber& c) {
        for (auto& x : coords)
            if (!x.is_zero()) x *= c;
        return *this;
    }
    friend SpinorState operator+(SpinorState a, const SpinorState& b) { return a += b; }
    friend SpinorState operator-(SpinorState a, const SpinorState& b) { return a -= b; }
    friend SpinorState operator*(const CycNumber& c, SpinorState a) { return a *= c; }
    friend bool operator==(const SpinorState& a, const SpinorState& b) {
        for (std::uint32_t s = 0; s < kCmDim; ++s)
            if (!(a.coords[s] == b.coords[s])) return false;
        return true;
    }
};

/// scalar * e_{i1} e_{i2} ... e_{ik} in Cliff(24), e_i^2 = -1, e_i e_j = -e_j e_i.
struct CliffordWord {
    CycNumber scalar = 1;
    std::vector<int> gens;

    static CliffordWord generator(int i) { return {CycNumber(1), {i}}; }

    /// e_C with C given by a 24-bit mask, ascending order.
    static CliffordWord from_mask(std::uint32_t mask, CycNumber scalar = 1) {
        CliffordWord w{std::move(scalar), {}};
        for (int i = 0; i < 24; ++i)
            if (mask >> i & 1u) w.gens.push_back(i);
        return w;
    }

    /// Strictly ascending indices with the accumulated sign.
    CliffordWord canonical() const {
        std::vector<int> g = gens;
        int sign = 1;
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = 0; j + 1 < g.size() - i; ++j)
                if (g[j] > g[j + 1]) {
                    std::swap(g[j], g[j + 1]);
                    sign = -sign;
                }
        std::vector<int> out;
        for (int x : g) {
            if (!out.empty() && out.back() == x) {
                out.pop_back();
                sign = -sign;  // e_x e_x = -1
            } else {
                out.push_back(x);
            }
        }
        return {scalar * CycNumber(sign), out};
    }

    std::uint32_t mask() const {
        std::uint32_t m = 0;
        for (int x : gens) m ^= 1u << x;
        return m;
    }

    friend CliffordWord operator*(const CliffordWord& a, const CliffordWord& b) {
        CliffordWord w{a.scalar * b.scalar, a.gens};
        w.gens.insert(w.gens.end(), b.gens.begin(), b.gens.end());
        return w.canonical();
    }
};

namespace detail {

// f_i = sqrt2 e_i on a basis vector. Pair k holds f_{2k}, f_{2k+1};
// a^-_k = (f_{2k} - i f_{2k+1})/2, a^+_k = (f_{2k} + i f_{2k+1})/2, {a^-_k, a^+_k} = -2.
// a^-_k |S> = eps |S+k>,  a^+_k |S> = -2 eps |S-k>,  eps = (-1)^{#{s in S : s < k}}.
// The scalar is accumulated as i^quarter * 2^twos.
inline std::uint32_t apply_f(int idx, std::uint32_t s, int& quarter, int& twos) {
    const int k = idx / 2;
    const std::uint32_t bit = 1u << k;
    if (std::popcount(s & (bit - 1)) % 2) quarter += 2;
    const bool occupied = s & bit;
    if (idx % 2 == 0) {
        // f = a^- + a^+
        if (occupied) {
            quarter += 2;
            ++twos;
        }
    } else {
        // f = i (a^- - a^+)
        quarter += 1;
        if (occupied) ++twos;
    }
    return s ^ bit;
}

inline const CycNumber& i_power(int q) {
    static const std::array<CycNumber, 4> powers = {CycNumber(1), CycNumber::zeta(4, 1), CycNumber(-1),
                                                    CycNumber::zeta(4, 3)};
    return powers[((q % 4) + 4) % 4];
}

inline const CycNumber& inv_sqrt2() {
    static const CycNumber v = (CycNumber::zeta(8, 1) + CycNumber::zeta(8, 7)) * CycNumber(make_rational(1, 2));
    return v;
}

// Parity of #{(a in A, b in B) : a > b}.
inline int inversion_parity(std::uint32_t a, std::uint32_t b) {
    int n = 0;
    for (int j = 0; j < 24; ++j)
        if (b >> j & 1u) n += std::popcount(a >> (j + 1));
    return n & 1;
}

}  // namespace detail

/// e_A e_B = clifford_product_sign(A, B) e_{A xor B} for ascending words.
inline int clifford_product_sign(std::uint32_t a, std::uint32_t b) {
    return (detail::inversion_parity(a, b) + std::popcount(a & b)) % 2 ? -1 : 1;
}

/// Image of a basis vector under a word: word |S> = coeff * |T>.
inline std::pair<std::uint32_t, CycNumber> act_on_basis(const CliffordWord& word, std::uint32_t s) {
    int quarter = 0, twos = 0;
    for (auto it = word.gens.rbegin(); it != word.gens.rend(); ++it) s = detail::apply_f(*it, s, quarter, twos);
    // e = f / sqrt2
    const auto k = static_cast<int>(word.gens.size());
    const int exp2 = twos - k / 2;
    Rational p2 = exp2 >= 0 ? Rational(Integer(1) << exp2) : Rational(1, Integer(1) << -exp2);
    CycNumber c = word.scalar * detail::i_power(quarter) * CycNumber(p2);
    if (k % 2) c *= detail::inv_sqrt2();
    return {s, c};
}

inline SpinorState act(const CliffordWord& word, const SpinorState& v) {
    SpinorState out;
    for (std::uint32_t s = 0; s < kCmDim; ++s) {
        if (v.coords[s].is_zero()) continue;
        auto [t, c] = act_on_basis(word, s);
        out.coords[t] += c * v.coords[s];
    }
    return out;
}

/// a^-_k (creation) and a^+_k (annihilation) built from the two real generators of pair k.
inline SpinorState apply_creator(int k, const SpinorState& v) {
    const CycNumber half = CycNumber(make_rational(1, 2));
    SpinorState out = act(CliffordWord{CycNumber(1), {2 * k}}, v);
    out -= act(CliffordWord{CycNumber::zeta(4, 1), {2 * k + 1}}, v);
    // generators above are e; a^- = (e_{2k} - i e_{2k+1}) / sqrt2
    return CycNumber(detail::inv_sqrt2()) * out;
}

inline SpinorState apply_annihilator(int k, const SpinorState& v) {
    SpinorState out = act(CliffordWord{CycNumber(1), {2 * k}}, v);
    out += act(CliffordWord{CycNumber::zeta(4, 1), {2 * k + 1}}, v);
    return CycNumber(detail::inv_sqrt2()) * out;
}

/// Form on basis vectors: zero unless T is the complement of S. Determined by
/// <a^-_1 ... a^-_12 v_tw, v_tw> = 1 and <u x, y> = -<x, u y>: move every creator
/// of S onto |T> (first one first), each move costing a sign.
inline int cm_form_entry(std::uint32_t s, std::uint32_t t) {
    if ((s ^ t) != kCmDim - 1 || (s & t) != 0) return 0;
    int sign = std::popcount(s) % 2 ? -1 : 1;
    std::uint32_t cur = t;
    for (int k = 0; k < kPairs; ++k) {
        if (!(s >> k & 1u)) continue;
        if (std::popcount(cur & ((1u << k) - 1)) % 2) sign = -sign;
        cur |= 1u << k;
    }
    return sign;
}

inline CycNumber bilinear_cm(const SpinorState& a, const SpinorState& b) {
    CycNumber sum(0);
    for (std::uint32_t s = 0; s < kCmDim; ++s) {
        if (a.coords[s].is_zero()) continue;
        const std::uint32_t t = (kCmDim - 1) ^ s;
        if (b.coords[t].is_zero()) continue;
        sum += a.coords[s] * b.coords[t] * CycNumber(cm_form_entry(s, t));
    }
    return sum;
}

/// The element zeta = e_1 e_2 ... e_24 (ascending product of all generators).
inline CliffordWord clifford_volume() { return CliffordWord::from_mask(0xFFFFFFu); }

// ---------------------------------------------------------------------------
// Lift of the sign-change group E ~ Golay code

/// Signs s(C) making C -> s(C) e_C a homomorphism from the code into Spin(24),
/// generated by signed e_{g_j} for the 12 code generators, with s(Omega) e_Omega = zeta.
class GolayLift {
public:
    explicit GolayLift(const BinaryCode& code = golay_code()) : code_(&code) {
        gen_signs_.fill(1);
        const std::uint32_t omega = code.index_of(0xFFFFFFu);
        if (sign_of_index(omega) < 0) gen_signs_[std::countr_zero(omega)] = -1;
        signs_.resize(kCmDim);
        for (std::uint32_t i = 0; i < kCmDim; ++i) signs_[i] = sign_of_index(i);
        if (sign(0xFFFFFFu) != 1) throw StructuralError("could not align the lift of Omega with zeta");
    }

    const BinaryCode& code() const { return *code_; }
    const std::array<int, 12>& generator_signs() const { return gen_signs_; }

    /// s(C) for a codeword C (mask).
    int sign(std::uint32_t codeword) const { return signs_[code_->index_of(codeword)]; }
    int sign_by_index(std::uint32_t index) const { return signs_[index]; }

    CliffordWord element(std::uint32_t index) const {
        return CliffordWord::from_mask(code_->word(index), CycNumber(signs_[index]));
    }
    CliffordWord generator(int j) const { return CliffordWord::from_mask(code_->generators()[j], CycNumber(gen_signs_[j])); }

    struct ClosureReport {
        std::size_t group_order = 0;  // |{+-s(C) e_C}|
        bool closed = true;
        bool squares_trivial = true;
        std::uint32_t bad_a = 0, bad_b = 0;
        bool pass() const { return closed && squares_trivial && group_order == 2 * kCmDim; }
    };

    /// Exhaustive check on all 4096^2 products using the sign rule for e_A e_B.
    ClosureReport check_closure() const {
        ClosureReport rep;
        const auto& words = code_->words();
        // distinct words give distinct e_C, and -1 = -e_0 is present, so the set {+-s(C)e_C} has 2*4096 elements
        rep.group_order = 2 * words.size();
        for (std::uint32_t a = 0; a < kCmDim && rep.closed; ++a) {
            if (clifford_product_sign(words[a], words[a]) != 1) {
                rep.squares_trivial = false;
                rep.bad_a = rep.bad_b = a;
            }
            for (std::uint32_t b = 0; b < kCmDim; ++b) {
                const int lhs = signs_[a] * signs_[b] * clifford_product_sign(words[a], words[b]);
                if (lhs != signs_[a ^ b]) {
                    rep.closed = false;
                    rep.bad_a = a;
                    rep.bad_b = b;
                    break;
                }
            }
        }
        return rep;
    }

    /// t = prod_j (1 + g_j)/2, which equals (1/4096) sum over the lifted group.
    SpinorState apply_t(SpinorState v) const {
        const CycNumber half(make_rational(1, 2));
        for (int j = 0; j < 12; ++j) {
            SpinorState gv = act(generator(j), v);
            v += gv;
            v *= half;
        }
        return v;
    }

    /// (1/4096) sum_C s(C) e_C v, term by term.
    SpinorState apply_t_by_sum(const SpinorState& v) const {
        SpinorState out;
        for (std::uint32_t i = 0; i < kCmDim; ++i) out += act(element(i), v);
        out *= CycNumber(make_rational(1, static_cast<long>(kCmDim)));
        return out;
    }

private:
    int sign_of_index(std::uint32_t index) const {
        const auto& gens = code_->generators();
        std::uint32_t m = 0;
        int s = 1;
        for (int j = 0; j < 12; ++j) {
            if (!(index >> j & 1u)) continue;
            s *= gen_signs_[j] * clifford_product_sign(m, gens[j]);
            m ^= gens[j];
        }
        return s;
    }

    const BinaryCode* code_;
    std::array<int, 12> gen_signs_{};
    std::vector<int> signs_;
};

struct N1Report {
    bool idempotent_vacuum = false;
    int idempotent_random_states = 0;  // how many of the random states passed
    int random_states = 0;
    bool nonzero = false;
    bool invariant = false;        // g tau = tau for the 12 lifted generators
    bool matches_full_sum = false;  // product form of t agrees with the 4096-term sum on v_tw
    int orthogonality_samples = 0;
    int orthogonality_failures = 0;
    std::vector<std::uint32_t> failing_subsets;
    CycNumber tau_norm = 0;       // <t v_tw, t v_tw>
    CycNumber alpha_squared = 0;  // <alpha tau, alpha tau> = 8
    GolayLift::ClosureReport closure;
    std::uint64_t seed = 0;

    bool pass() const {
        return idempotent_vacuum && idempotent_random_states == random_states && nonzero && invariant &&
               matches_full_sum && orthogonality_failures == 0 && orthogonality_samples > 0 && !tau_norm.is_zero() &&
               closure.pass();
    }
};

/// Checks on tau = t v_tw: idempotence, invariance, orthogonality <e_C tau, tau> = 0
/// for random C of size 2 and 4, non-zero norm, and closure of the lifted group.
inline N1Report n1_checks(int orthogonality_samples = 240, int random_states = 10, std::uint64_t seed = 1,
                          const GolayLift& lift = GolayLift()) {
    N1Report rep;
    rep.seed = seed;
    rep.random_states = random_states;
    std::mt19937_64 rng(seed);

    const SpinorState v = SpinorState::vacuum();
    const SpinorState tau = lift.apply_t(v);
    rep.nonzero = !tau.is_zero();
    rep.idempotent_vacuum = lift.apply_t(tau) == tau;
    rep.matches_full_sum = lift.apply_t_by_sum(v) == tau;
    rep.invariant = true;
    for (int j = 0; j < 12; ++j) rep.invariant = rep.invariant && act(lift.generator(j), tau) == tau;

    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> sparse(0, 7);
    for (int r = 0; r < random_states; ++r) {
        SpinorState s;
        for (std::uint32_t b = 0; b < kCmDim; ++b)
            if (sparse(rng) == 0) s.coords[b] = CycNumber(coef(rng)) + CycNumber(coef(rng)) * CycNumber::zeta(4, 1);
        const SpinorState ts = lift.apply_t(s);
        if (lift.apply_t(ts) == ts) ++rep.idempotent_random_states;
    }

    std::uniform_int_distribution<int> index(0, 23);
    for (int n = 0; n < orthogonality_samples; ++n) {
        const int size = n % 2 == 0 ? 2 : 4;
        std::uint32_t c = 0;
        while (std::popcount(c) < size) c |= 1u << index(rng);
        ++rep.orthogonality_samples;
        if (!bilinear_cm(act(CliffordWord::from_mask(c), tau), tau).is_zero()) {
            ++rep.orthogonality_failures;
            rep.failing_subsets.push_back(c);
        }
    }

    rep.tau_norm = bilinear_cm(tau, tau);
    if (!rep.tau_norm.is_zero()) rep.alpha_squared = CycNumber(8) / rep.tau_norm;
    rep.closure = lift.check_closure();
    return rep;
}

}  // namespace moonshine
