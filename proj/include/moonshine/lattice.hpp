#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moonshine/error.hpp"
#include "moonshine/frameshape.hpp"
#include "moonshine/parallel.hpp"
#include "moonshine/rational.hpp"

namespace moonshine {

/// Binary code of length 24, words as bitmasks (bit i = coordinate i).
class BinaryCode {
public:
    explicit BinaryCode(std::array<std::uint32_t, 12> generators) : gens_(generators) {
        words_.reserve(4096);
        for (std::uint32_t idx = 0; idx < 4096; ++idx) words_.push_back(word(idx));
        sorted_ = words_;
        std::sort(sorted_.begin(), sorted_.end());
        if (std::adjacent_find(sorted_.begin(), sorted_.end()) != sorted_.end())
            throw StructuralError("code generators are linearly dependent");
    }

    const std::array<std::uint32_t, 12>& generators() const noexcept { return gens_; }

    /// Codeword with generator coefficients given by the bits of `index`.
    std::uint32_t word(std::uint32_t index) const {
        std::uint32_t w = 0;
        for (int j = 0; j < 12; ++j)
            if (index >> j & 1u) w ^= gens_[j];
        return w;
    }

    /// All 4096 words, word(i) at position i.
    const std::vector<std::uint32_t>& words() const noexcept { return words_; }

    bool contains(std::uint32_t w) const { return std::binary_search(sorted_.begin(), sorted_.end(), w); }

    /// Generator coefficients of a codeword (inverse of word()).
    std::uint32_t index_of(std::uint32_t w) const {
        // words_ is small; a direct map keeps this exact and simple
        auto it = std::find(words_.begin(), words_.end(), w);
        if (it == words_.end()) throw ValidationError("word is not in the code");
        return static_cast<std::uint32_t>(it - words_.begin());
    }

    /// count[w] = number of codewords of weight w, w = 0..24.
    std::array<int, 25> weight_distribution() const {
        std::array<int, 25> count{};
        for (auto w : words_) ++count[std::popcount(w)];
        return count;
    }

private:
    std::array<std::uint32_t, 12> gens_;
    std::vector<std::uint32_t> words_;
    std::vector<std::uint32_t> sorted_;
};

/// Extended binary Golay code: the cyclic (23,12) quadratic-residue code with
/// generator polynomial x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1, plus an overall
/// parity bit in coordinate 23. Checks weights and self-duality before returning.
inline const BinaryCode& golay_code() {
    static const BinaryCode code = [] {
        constexpr std::uint32_t g = (1u << 11) | (1u << 10) | (1u << 6) | (1u << 5) | (1u << 4) | (1u << 2) | 1u;
        std::array<std::uint32_t, 12> gens{};
        for (int i = 0; i < 12; ++i) {
            std::uint32_t w = g << i;
            if (std::popcount(w) % 2) w |= 1u << 23;
            gens[i] = w;
        }
        BinaryCode c(gens);
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j)
                if (std::popcount(gens[i] & gens[j]) % 2) throw StructuralError("Golay generators not self-orthogonal");
        const auto dist = c.weight_distribution();
        for (int w = 0; w <= 24; ++w) {
            if (w % 4 != 0 && dist[w] != 0) throw StructuralError("Golay code not doubly even");
            if (w > 0 && w < 8 && dist[w] != 0) throw StructuralError("Golay code has a word of weight < 8");
        }
        return c;
    }();
    return code;
}

using IntVec = std::vector<std::int64_t>;

/// Leech lattice membership in coordinates scaled by sqrt 8: all x_i = m mod 2,
/// sum x_i = 4m mod 8, and for each residue k mod 4 the set {i : x_i = k mod 4}
/// is a Golay codeword.
inline bool in_leech(const IntVec& x, const BinaryCode& code = golay_code()) {
    if (x.size() != 24) return false;
    const std::int64_t m = ((x[0] % 2) + 2) % 2;
    std::int64_t sum = 0;
    std::array<std::uint32_t, 4> sets{};
    for (int i = 0; i < 24; ++i) {
        if ((((x[i] % 2) + 2) % 2) != m) return false;
        sum += x[i];
        sets[((x[i] % 4) + 4) % 4] |= 1u << i;
    }
    if ((((sum - 4 * m) % 8) + 8) % 8 != 0) return false;
    for (auto s : sets)
        if (!code.contains(s)) return false;
    return true;
}

/// <x, y> = x . y / 8 in scaled coordinates (exact when both lie in the lattice).
inline Rational leech_inner(const IntVec& x, const IntVec& y) {
    std::int64_t dot = 0;
    for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
    return make_rational(dot, 8);
}

namespace detail {

inline Integer bareiss_det(std::vector<std::vector<Integer>> a) {
    const std::size_t n = a.size();
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// Row-style Hermite reduction of an integer generating set to a basis of its span.
inline std::vector<std::vector<Integer>> hermite_basis(std::vector<std::vector<Integer>> rows) {
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    std::size_t pivot = 0;
    for (std::size_t c = 0; c < cols && pivot < rows.size(); ++c) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t r = pivot; r < rows.size(); ++r)
                if (rows[r][c] != 0 && (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c]))) best = r;
            if (best == rows.size()) break;
            std::swap(rows[pivot], rows[best]);
            bool done = true;
            for (std::size_t r = pivot + 1; r < rows.size(); ++r) {
                if (rows[r][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[pivot][c].get_mpz_t());
                for (std::size_t j = c; j < cols; ++j) rows[r][j] -= q * rows[pivot][j];
                if (rows[r][c] != 0) done = false;
            }
            if (done) break;
        }
        bool found = false;
        for (std::size_t r = pivot; r < rows.size(); ++r) found = found || rows[r][c] != 0;
        if (found) {
            if (rows[pivot][c] < 0)
                for (auto& v : rows[pivot]) v = -v;
            ++pivot;
        }
    }
    rows.resize(pivot);
    return rows;
}

}  // namespace detail

/// Exact determinant of an integer matrix (fraction-free elimination).
inline Integer integer_det(const std::vector<std::vector<Integer>>& a) { return detail::bareiss_det(a); }

/// Full-rank lattice in R^24 given by integer rows in sqrt 8 scaled coordinates.
class IntegerLattice {
public:
    explicit IntegerLattice(std::vector<IntVec> basis) : basis_(std::move(basis)) {
        const std::size_t n = basis_.size();
        gram_.assign(n, IntVec(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::int64_t dot = 0;
                for (std::size_t k = 0; k < basis_[i].size(); ++k) dot += basis_[i][k] * basis_[j][k];
                if (dot % 8 != 0) throw StructuralError("Gram entry not integral");
                gram_[i][j] = dot / 8;
            }
        compute_inverse();
    }

    std::size_t rank() const { return basis_.size(); }
    const std::vector<IntVec>& basis() const noexcept { return basis_; }
    /// Gram matrix of the basis under <x, y> = x . y / 8.
    const std::vector<IntVec>& gram() const noexcept { return gram_; }

    Integer gram_determinant() const {
        std::vector<std::vector<Integer>> g(rank(), std::vector<Integer>(rank()));
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j) g[i][j] = static_cast<long>(gram_[i][j]);
        return integer_det(g);
    }

    bool is_even() const {
        for (std::size_t i = 0; i < rank(); ++i)
            if (gram_[i][i] % 2 != 0) return false;
        return true;
    }

    /// Integer coordinates of v with respect to the basis, if v lies in the lattice.
    std::optional<std::vector<Integer>> coordinates(const IntVec& v) const {
        const std::size_t n = rank();
        std::vector<Integer> out(n);
        for (std::size_t j = 0; j < n; ++j) {
            Rational s = 0;
            for (std::size_t k = 0; k < n; ++k)
                if (v[k] != 0) s += static_cast<long>(v[k]) * inverse_[k][j];
            if (s.get_den() != 1) return std::nullopt;
            out[j] = s.get_num();
        }
        return out;
    }

private:
    // v = c B, so c = v B^{-1}; B^{-1} by exact Gauss-Jordan.
    void compute_inverse() {
        {
            const std::size_t n = rank();
            std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(basis_[i][j]);
                a[i][n + i] = 1;
            }
            for (std::size_t c = 0; c < n; ++c) {
                std::size_t p = c;
                while (p < n && a[p][c] == 0) ++p;
                if (p == n) throw StructuralError("lattice basis is singular");
                std::swap(a[c], a[p]);
                const Rational inv = 1 / a[c][c];
                for (auto& x : a[c]) x *= inv;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == c || a[r][c] == 0) continue;
                    const Rational f = a[r][c];
                    for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
                }
            }
            inverse_.assign(n, std::vector<Rational>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) inverse_[i][j] = a[i][n + j];
        }
    }

    std::vector<IntVec> basis_;
    std::vector<IntVec> gram_;
    std::vector<std::vector<Rational>> inverse_;
};

/// Leech lattice from the Golay code. The spanning set is 2c (c a code generator),
/// 4e_0 + 4e_i, 8e_0 and (-3, 1^23); a Hermite reduction turns it into a basis.
/// Throws StructuralError unless the result is even, unimodular and every basis
/// vector satisfies the membership rule.
inline IntegerLattice build_leech(const BinaryCode& code = golay_code()) {
    std::vector<std::vector<Integer>> span;
    auto push = [&](const IntVec& v) {
        if (!in_leech(v, code)) throw StructuralError("spanning vector outside the lattice");
        std::vector<Integer> row;
        for (auto x : v) row.emplace_back(static_cast<long>(x));
        span.push_back(std::move(row));
    };
    for (auto g : code.generators()) {
        IntVec v(24, 0);
        for (int i = 0; i < 24; ++i)
            if (g >> i & 1u) v[i] = 2;
        push(v);
    }
    for (int i = 1; i < 24; ++i) {
        IntVec v(24, 0);
        v[0] = 4;
        v[i] = 4;
        push(v);
    }
    {
        IntVec v(24, 0);
        v[0] = 8;
        push(v);
    }
    {
        IntVec v(24, 1);
        v[0] = -3;
        push(v);
    }
    const auto rows = detail::hermite_basis(std::move(span));
    if (rows.size() != 24) throw StructuralError("Leech spanning set has rank " + std::to_string(rows.size()));
    std::vector<IntVec> basis;
    for (const auto& r : rows) {
        IntVec v;
        for (const auto& x : r) v.push_back(to_int64(x));
        if (!in_leech(v, code)) throw StructuralError("basis vector outside the lattice");
        basis.push_back(std::move(v));
    }
    IntegerLattice lat(std::move(basis));
    if (!lat.is_even()) throw StructuralError("Leech Gram matrix is not even");
    if (lat.gram_determinant() != 1) throw StructuralError("Leech Gram determinant is not 1");
    return lat;
}

/// LLL reduction (delta = 0.99) of integer rows under the standard dot product.
/// Floating Gram-Schmidt; the row operations themselves are exact.
inline std::vector<IntVec> lll_reduce(std::vector<IntVec> b, double delta = 0.99) {
    const std::size_t n = b.size();
    const std::size_t dim = n ? b[0].size() : 0;
    std::vector<std::vector<double>> mu(n, std::vector<double>(n));
    std::vector<double> bstar_norm(n);
    std::vector<std::vector<double>> bstar(n, std::vector<double>(dim));
    auto gso = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < dim; ++k) bstar[i][k] = static_cast<double>(b[i][k]);
            for (std::size_t j = 0; j < i; ++j) {
                double dot = 0;
                for (std::size_t k = 0; k < dim; ++k) dot += static_cast<double>(b[i][k]) * bstar[j][k];
                mu[i][j] = dot / bstar_norm[j];
                for (std::size_t k = 0; k < dim; ++k) bstar[i][k] -= mu[i][j] * bstar[j][k];
            }
            double s = 0;
            for (double x : bstar[i]) s += x * x;
            bstar_norm[i] = s;
        }
    };
    gso();
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            const double q = std::round(mu[k][j]);
            if (q != 0) {
                const auto qi = static_cast<std::int64_t>(q);
                for (std::size_t t = 0; t < dim; ++t) b[k][t] -= qi * b[j][t];
                for (std::size_t t = 0; t <= j; ++t) mu[k][t] -= q * (t == j ? 1.0 : mu[j][t]);
            }
        }
        if (bstar_norm[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar_norm[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gso();
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return b;
}

/// Counts of lattice vectors by norm <x, x> up to `max_norm` (the zero vector excluded).
/// Fincke-Pohst enumeration over an LLL-reduced basis; bounds come from an exact
/// LDL^T factorization of the Gram matrix, each candidate's norm is re-checked exactly.
inline std::map<std::int64_t, std::int64_t> shell_counts(const IntegerLattice& lattice, std::int64_t max_norm,
                                                         unsigned threads = default_threads()) {
    const IntegerLattice reduced(lll_reduce(lattice.basis()));
    const auto& g = reduced.gram();
    const std::size_t n = reduced.rank();

    // G = L D L^T exactly; Q(x) = sum_i D_i (x_i + sum_{j>i} L_ji x_j)^2
    std::vector<std::vector<Rational>> l(n, std::vector<Rational>(n));
    std::vector<Rational> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            Rational s = static_cast<long>(g[i][j]);
            for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k] * d[k];
            if (i == j) {
                d[i] = s;
                l[i][i] = 1;
            } else {
                l[i][j] = s / d[j];
            }
        }
        if (d[i] <= 0) throw StructuralError("Gram matrix is not positive definite");
    }
    std::vector<double> qd(n);
    std::vector<std::vector<double>> ql(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        qd[i] = d[i].get_d();
        for (std::size_t j = 0; j < n; ++j) ql[i][j] = l[i][j].get_d();
    }
    const double bound = static_cast<double>(max_norm) + 1e-6;

    auto exact_norm = [&](const IntVec& x) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            std::int64_t row = 0;
            for (std::size_t j = 0; j < n; ++j) row += g[i][j] * x[j];
            s += x[i] * row;
        }
        return s;
    };

    const std::size_t top = n - 1;
    const auto radius_top = static_cast<std::int64_t>(std::floor(std::sqrt(bound / qd[top])));
    std::vector<std::int64_t> top_values;
    for (std::int64_t v = -radius_top; v <= radius_top; ++v) top_values.push_back(v);

    std::vector<std::map<std::int64_t, std::int64_t>> partial(top_values.size());
    parallel_for(
        top_values.size(),
        [&](std::size_t branch) {
            IntVec x(n, 0);
            std::vector<double> rem(n + 1, 0.0);
            auto& counts = partial[branch];
            x[top] = top_values[branch];
            rem[top] = bound - qd[top] * static_cast<double>(x[top] * x[top]);
            if (rem[top] < 0) return;
            // iterative depth-first search over coordinates top-1 .. 0
            auto recurse = [&](auto&& self, std::size_t i) -> void {
                double c = 0;
                for (std::size_t j = i + 1; j < n; ++j) c -= ql[j][i] * static_cast<double>(x[j]);
                const double r = std::sqrt(std::max(0.0, rem[i + 1] / qd[i]));
                const auto lo = static_cast<std::int64_t>(std::ceil(c - r - 1e-9));
                const auto hi = static_cast<std::int64_t>(std::floor(c + r + 1e-9));
                for (std::int64_t v = lo; v <= hi; ++v) {
                    const double t = static_cast<double>(v) - c;
                    const double left = rem[i + 1] - qd[i] * t * t;
                    if (left < -1e-9) continue;
                    x[i] = v;
                    rem[i] = left;
                    if (i == 0) {
                        const std::int64_t nrm = exact_norm(x);
                        if (nrm > 0 && nrm <= max_norm) ++counts[nrm];
                    } else {
                        self(self, i - 1);
                    }
                }
                x[i] = 0;
            };
            recurse(recurse, top - 1);
        },
        threads);

    std::map<std::int64_t, std::int64_t> total;
    for (const auto& p : partial)
        for (const auto& [k, v] : p) total[k] += v;
    return total;
}

/// The standard frame: lambda_i = 8 e_i in scaled coordinates, <lambda_i, lambda_i> = 8.
inline std::vector<IntVec> coordinate_frame() {
    std::vector<IntVec> frame(24, IntVec(24, 0));
    for (int i = 0; i < 24; ++i) frame[i][i] = 8;
    return frame;
}

struct FrameCheckReport {
    bool in_lattice = true;
    bool norms = true;
    bool orthogonal = true;
    bool congruent = true;  // lambda_i - lambda_j in 2 Lambda for all i, j
    std::string first_failure;
    bool pass() const { return in_lattice && norms && orthogonal && congruent; }
};

inline FrameCheckReport check_frame(const IntegerLattice& lattice, const std::vector<IntVec>& frame) {
    FrameCheckReport rep;
    auto fail = [&](bool& flag, const std::string& what) {
        flag = false;
        if (rep.first_failure.empty()) rep.first_failure = what;
    };
    for (std::size_t i = 0; i < frame.size(); ++i) {
        if (!lattice.coordinates(frame[i])) fail(rep.in_lattice, "lambda_" + std::to_string(i) + " not in lattice");
        if (leech_inner(frame[i], frame[i]) != 8) fail(rep.norms, "lambda_" + std::to_string(i) + " norm != 8");
        for (std::size_t j = i + 1; j < frame.size(); ++j) {
            if (leech_inner(frame[i], frame[j]) != 0)
                fail(rep.orthogonal, "lambda_" + std::to_string(i) + ", lambda_" + std::to_string(j) + " not orthogonal");
            IntVec diff(24);
            for (int k = 0; k < 24; ++k) diff[k] = frame[i][k] - frame[j][k];
            const auto c = lattice.coordinates(diff);
            bool even = c.has_value();
            if (c)
                for (const auto& z : *c) even = even && mpz_even_p(z.get_mpz_t());
            if (!even)
                fail(rep.congruent,
                     "lambda_" + std::to_string(i) + " - lambda_" + std::to_string(j) + " not in 2*Lambda");
        }
    }
    return rep;
}

/// Sign change on the frame coordinates in `mask`.
inline IntVec apply_sign_change(std::uint32_t mask, IntVec v) {
    for (int i = 0; i < 24; ++i)
        if (mask >> i & 1u) v[i] = -v[i];
    return v;
}

/// Frame shape and trace of the sign change on the coordinates of a codeword:
/// (1-x)^{24-w} (1+x)^w = (1-x)^{24-2w} (1-x^2)^w.
inline std::pair<FrameShape, int> sign_change_frameshape(std::uint32_t codeword, const BinaryCode& code = golay_code()) {
    if (!code.contains(codeword)) throw ValidationError("sign-change mask is not a Golay codeword");
    const int w = std::popcount(codeword);
    return {FrameShape(std::map<int, int>{{1, 24 - 2 * w}, {2, w}}), 24 - 2 * w};
}

}  // namespace moonshine
