#pragma once

#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "moonshine/cyclotomic.hpp"
#include "moonshine/error.hpp"
#include "moonshine/qseries.hpp"
#include "moonshine/rational.hpp"

namespace moonshine {

/// exp(2 pi i exponent / order), kept reduced: gcd(exponent, order) = 1, 0 <= exponent < order.
struct RootOfUnity {
    int order = 1;
    int exponent = 0;

    static RootOfUnity make(std::int64_t order, std::int64_t exponent) {
        if (order < 1) throw std::domain_error("root of unity with non-positive order");
        std::int64_t e = exponent % order;
        if (e < 0) e += order;
        const std::int64_t g = std::gcd(e, order);
        if (e == 0) return {1, 0};
        return {static_cast<int>(order / g), static_cast<int>(e / g)};
    }

    RootOfUnity inverse() const { return make(order, -exponent); }
    RootOfUnity negated() const { return make(2 * static_cast<std::int64_t>(order), 2 * exponent + order); }
    bool is_one() const { return order == 1; }
    CycNumber value() const { return CycNumber::zeta(order, exponent); }
    /// The angle theta in [0, 1) with value exp(2 pi i theta).
    Rational angle() const { return make_rational(exponent, order); }

    auto operator<=>(const RootOfUnity&) const = default;
};

/// Frame shape prod m^{k_m}: the characteristic polynomial prod (1 - x^m)^{k_m}
/// of an automorphism of a 24-dimensional space.
class FrameShape {
public:
    FrameShape() = default;

    /// Builds and validates. Zero exponents are dropped.
    explicit FrameShape(std::map<int, int> exps) : exps_(std::move(exps)) {
        std::erase_if(exps_, [](const auto& kv) { return kv.second == 0; });
        validate();
    }

    /// Grammar: factors ['/' factors], factor = INT ['^' ['{'] INT ['}']],
    /// factors separated by '.' or whitespace.
    static FrameShape parse(std::string_view text);

    const std::map<int, int>& exponents() const noexcept { return exps_; }

    int k(int m) const {
        auto it = exps_.find(m);
        return it == exps_.end() ? 0 : it->second;
    }

    int degree() const {
        int d = 0;
        for (const auto& [m, k] : exps_) d += m * k;
        return d;
    }

    /// Trace on the 24-dimensional space, which is k_1.
    int chi() const { return k(1); }

    /// Multiplicity of the eigenvalue 1.
    int fixed_points() const {
        int s = 0;
        for (const auto& [m, k] : exps_) s += k;
        return s;
    }

    bool fixed_point_free() const { return fixed_points() == 0; }

    /// Frame shape of -g. Uses 1 + x^m = (1 - x^{2m}) / (1 - x^m) for odd m;
    /// for even m, -1 is already an m-th root of unity so the factor is unchanged.
    FrameShape negate() const {
        std::map<int, int> out;
        for (const auto& [m, k] : exps_) {
            if (m % 2 == 1) {
                out[m] -= k;
                out[2 * m] += k;
            } else {
                out[m] += k;
            }
        }
        return FrameShape(std::move(out));
    }

    /// Eigenvalue multiset, root -> multiplicity.
    std::map<RootOfUnity, int> eigenvalue_counts() const {
        std::map<RootOfUnity, int> counts;
        for (const auto& [m, k] : exps_)
            for (int j = 0; j < m; ++j) counts[RootOfUnity::make(m, j)] += k;
        std::erase_if(counts, [](const auto& kv) { return kv.second == 0; });
        return counts;
    }

    /// The 24 eigenvalues with multiplicity, sorted.
    std::vector<RootOfUnity> eigenvalues() const {
        std::vector<RootOfUnity> out;
        for (const auto& [r, c] : eigenvalue_counts()) out.insert(out.end(), static_cast<std::size_t>(c), r);
        return out;
    }

    int max_cycle() const { return exps_.empty() ? 1 : exps_.rbegin()->first; }

    /// Canonical text: ascending m, "." separators, one "/".
    std::string to_string() const {
        std::string num, den;
        for (const auto& [m, k] : exps_) {
            std::string& side = k > 0 ? num : den;
            if (!side.empty()) side += '.';
            side += std::to_string(m) + "^" + std::to_string(k > 0 ? k : -k);
        }
        if (num.empty()) num = "1^0";
        return den.empty() ? num : num + "/" + den;
    }

    friend bool operator==(const FrameShape&, const FrameShape&) = default;

private:
    void validate() const {
        for (const auto& [m, k] : exps_)
            if (m < 1) throw ValidationError("cycle length must be positive, got " + std::to_string(m));
        if (degree() != 24)
            throw ValidationError("Frame shape " + to_string() + " has degree " + std::to_string(degree()) + ", expected 24");
        std::map<RootOfUnity, int> counts;
        for (const auto& [m, k] : exps_)
            for (int j = 0; j < m; ++j) counts[RootOfUnity::make(m, j)] += k;
        for (const auto& [r, c] : counts)
            if (c < 0)
                throw ValidationError("Frame shape " + to_string() + " gives eigenvalue exp(2 pi i " +
                                      std::to_string(r.exponent) + "/" + std::to_string(r.order) +
                                      ") negative multiplicity " + std::to_string(c));
    }

    std::map<int, int> exps_;
};

inline FrameShape FrameShape::parse(std::string_view text) {
    std::size_t pos = 0;
    auto skip_sep = [&] {
        while (pos < text.size() && (text[pos] == '.' || std::isspace(static_cast<unsigned char>(text[pos])))) ++pos;
    };
    auto read_int = [&]() -> int {
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected an integer in Frame shape '" + std::string(text) + "'", start);
        if (pos - start > 6) throw ParseError("integer too large in Frame shape", start);
        return std::stoi(std::string(text.substr(start, pos - start)));
    };
    std::map<int, int> exps;
    int sign = 1;
    bool any = false;
    skip_sep();
    while (pos < text.size()) {
        if (text[pos] == '/') {
            if (sign < 0) throw ParseError("second '/' in Frame shape", pos);
            if (!any) throw ParseError("empty numerator in Frame shape", pos);
            sign = -1;
            ++pos;
            skip_sep();
            if (pos >= text.size()) throw ParseError("empty denominator in Frame shape", pos);
            continue;
        }
        const std::size_t at = pos;
        const int m = read_int();
        if (m == 0) throw ParseError("cycle length 0 in Frame shape", at);
        int k = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            const bool brace = pos < text.size() && text[pos] == '{';
            if (brace) ++pos;
            k = read_int();
            if (brace) {
                if (pos >= text.size() || text[pos] != '}') throw ParseError("missing '}'", pos);
                ++pos;
            }
        }
        exps[m] += sign * k;
        any = true;
        // "1^{12}6^{12}": a closing brace is itself a separator
        const bool after_brace = pos > 0 && text[pos - 1] == '}';
        if (pos < text.size() && text[pos] != '.' && text[pos] != '/' &&
            !std::isspace(static_cast<unsigned char>(text[pos])) &&
            !(after_brace && std::isdigit(static_cast<unsigned char>(text[pos]))))
            throw ParseError(std::string("unexpected character '") + text[pos] + "' in Frame shape", pos);
        skip_sep();
    }
    if (!any) throw ParseError("empty Frame shape", 0);
    return FrameShape(std::move(exps));
}

/// prod_m eta(m s tau)^{k_m}, truncated at `order`.
///
/// With y = q^s this is q^s prod_j (1 - y^j)^{c_j}, c_j = sum_{m | j} k_m,
/// expanded through the recurrence t a_t = -sum_{N=1}^t sigma_N a_{t-N},
/// sigma_N = sum_{j | N} j c_j (logarithmic derivative).
inline QSeries eta_quotient(const FrameShape& pi, const Rational& s, const Rational& order) {
    if (s <= 0) throw std::invalid_argument("eta_quotient needs s > 0");
    // number of terms: t with s (t + 1) < order
    const Rational ratio = order / s;
    const std::int64_t count = std::max<std::int64_t>(0, ceil_int(ratio) - 1);
    if (count == 0) return QSeries::zero(order);
    std::vector<std::int64_t> c(static_cast<std::size_t>(count) + 1, 0);
    for (const auto& [m, k] : pi.exponents())
        for (std::int64_t j = m; j <= count; j += m) c[j] += k;
    std::vector<Integer> sigma(static_cast<std::size_t>(count) + 1);
    for (std::int64_t j = 1; j <= count; ++j) {
        if (c[j] == 0) continue;
        for (std::int64_t n = j; n <= count; n += j) sigma[n] += static_cast<long>(j * c[j]);
    }
    std::vector<Integer> a(static_cast<std::size_t>(count));
    a[0] = 1;
    for (std::int64_t t = 1; t < count; ++t) {
        Integer acc = 0;
        for (std::int64_t n = 1; n <= t; ++n)
            if (sigma[n] != 0 && a[t - n] != 0) acc += sigma[n] * a[t - n];
        Integer q;
        mpz_divexact_ui(q.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(t));
        a[t] = -q;
    }
    const std::int64_t p = to_int64(s.get_num());
    const std::int64_t den = to_int64(s.get_den());
    std::vector<QSeries::Term> terms;
    for (std::int64_t t = 0; t < count; ++t)
        if (a[t] != 0) terms.emplace_back(p * (t + 1), Rational(a[t]));
    return QSeries::from_terms(den, std::move(terms), order);
}

}  // namespace moonshine
