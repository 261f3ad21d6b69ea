#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "moonshine/cyclotomic.hpp"
#include "moonshine/error.hpp"
#include "moonshine/rational.hpp"

namespace moonshine {

/// Truncated Laurent series in fractional powers of q.
///
/// Exponents are stored as integer numerators over a per-series denominator K,
/// so a term (e, c) means c * q^{e/K}. Coefficients below `order()` are exact;
/// everything at or above it is unknown. The representation is canonical:
/// terms are sorted, no stored coefficient is zero, every stored exponent is
/// below the order, and K is the smallest denominator the exponents need.
template <class Coeff>
class FracPowerSeries {
public:
    using Term = std::pair<std::int64_t, Coeff>;

    FracPowerSeries() = default;

    static FracPowerSeries zero(const Rational& order) {
        FracPowerSeries s;
        s.order_ = order;
        return s;
    }

    static FracPowerSeries monomial(const Coeff& coeff, const Rational& expo, const Rational& order) {
        if (expo >= order)
            throw PrecisionError("monomial exponent " + to_string(expo) + " is not below order " + to_string(order));
        FracPowerSeries s;
        s.order_ = order;
        s.denom_ = to_int64(expo.get_den());
        if (!is_zero(coeff)) s.terms_.emplace_back(to_int64(expo.get_num()), coeff);
        s.normalize();
        return s;
    }

    static FracPowerSeries constant(const Coeff& coeff, const Rational& order) {
        return monomial(coeff, Rational(0), order);
    }

    /// Builds a series from raw (numerator, coefficient) pairs over denominator K.
    /// Duplicate exponents are summed; zero and out-of-range terms are dropped.
    static FracPowerSeries from_terms(std::int64_t denom, std::vector<Term> terms, const Rational& order) {
        if (denom <= 0) throw std::invalid_argument("series denominator must be positive");
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
        FracPowerSeries s;
        s.denom_ = denom;
        s.order_ = order;
        for (auto& t : terms) {
            if (!s.terms_.empty() && s.terms_.back().first == t.first)
                s.terms_.back().second += t.second;
            else
                s.terms_.push_back(std::move(t));
        }
        s.normalize();
        return s;
    }

    std::int64_t denom() const noexcept { return denom_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    const Rational& order() const noexcept { return order_; }
    bool empty() const noexcept { return terms_.empty(); }

    /// Lowest stored exponent, or the order for a series with no known non-zero term.
    Rational valuation() const {
        if (terms_.empty()) return order_;
        return make_rational(terms_.front().first, denom_);
    }

    Coeff coeff(const Rational& expo) const {
        if (expo >= order_)
            throw PrecisionError("coefficient of q^" + to_string(expo) + " requested beyond order " + to_string(order_));
        const Rational scaled = expo * static_cast<long>(denom_);
        if (scaled.get_den() != 1) return Coeff(0);
        const std::int64_t e = to_int64(scaled.get_num());
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, std::int64_t v) { return t.first < v; });
        if (it != terms_.end() && it->first == e) return it->second;
        return Coeff(0);
    }

    Rational exponent(const Term& t) const { return make_rational(t.first, denom_); }

    FracPowerSeries truncated(const Rational& order) const {
        if (order > order_)
            throw PrecisionError("cannot extend series from order " + to_string(order_) + " to " + to_string(order));
        FracPowerSeries s = *this;
        s.order_ = order;
        s.normalize();
        return s;
    }

    FracPowerSeries operator-() const {
        FracPowerSeries s = *this;
        for (auto& t : s.terms_) t.second = -t.second;
        return s;
    }

    friend FracPowerSeries operator+(const FracPowerSeries& a, const FracPowerSeries& b) {
        return combine(a, b, false);
    }
    friend FracPowerSeries operator-(const FracPowerSeries& a, const FracPowerSeries& b) {
        return combine(a, b, true);
    }

    friend FracPowerSeries operator*(const FracPowerSeries& a, const Coeff& c) {
        FracPowerSeries s = a;
        for (auto& t : s.terms_) t.second *= c;
        s.normalize();
        return s;
    }
    friend FracPowerSeries operator*(const Coeff& c, const FracPowerSeries& a) { return a * c; }

    friend FracPowerSeries operator*(const FracPowerSeries& a, const FracPowerSeries& b) {
        const Rational order = std::min(a.valuation() + b.order_, b.valuation() + a.order_);
        const std::int64_t k = std::lcm(a.denom_, b.denom_);
        FracPowerSeries out;
        out.order_ = order;
        out.denom_ = k;
        if (a.terms_.empty() || b.terms_.empty()) return out;
        const std::int64_t ma = k / a.denom_;
        const std::int64_t mb = k / b.denom_;
        const std::int64_t base = a.terms_.front().first * ma + b.terms_.front().first * mb;
        const std::int64_t limit = ceil_int(order * static_cast<long>(k));
        if (limit <= base) return out;
        std::vector<Coeff> acc(static_cast<std::size_t>(limit - base));
        std::vector<char> touched(acc.size(), 0);
        for (const auto& [ea, ca] : a.terms_) {
            const std::int64_t sa = ea * ma;
            for (const auto& [eb, cb] : b.terms_) {
                const std::int64_t e = sa + eb * mb;
                if (e >= limit) break;
                const auto idx = static_cast<std::size_t>(e - base);
                if (touched[idx])
                    acc[idx] += ca * cb;
                else {
                    acc[idx] = ca * cb;
                    touched[idx] = 1;
                }
            }
        }
        for (std::size_t i = 0; i < acc.size(); ++i)
            if (touched[i] && !is_zero(acc[i])) out.terms_.emplace_back(base + static_cast<std::int64_t>(i), std::move(acc[i]));
        out.normalize();
        return out;
    }

    FracPowerSeries& operator+=(const FracPowerSeries& o) { return *this = *this + o; }
    FracPowerSeries& operator-=(const FracPowerSeries& o) { return *this = *this - o; }
    FracPowerSeries& operator*=(const FracPowerSeries& o) { return *this = *this * o; }

    /// Multiplicative inverse. With valuation v and order O the result has
    /// valuation -v and order O - 2v, so that a * a.inverse() = 1 + O(q^{O-v}).
    FracPowerSeries inverse() const {
        if (terms_.empty()) throw NotInvertibleError("series has no known non-zero term");
        const std::int64_t v = terms_.front().first;
        const std::int64_t limit = ceil_int(order_ * static_cast<long>(denom_));
        const std::int64_t len = limit - v;
        std::vector<std::pair<std::int64_t, const Coeff*>> tail;  // (offset, coeff) for offset >= 1
        for (std::size_t i = 1; i < terms_.size(); ++i) tail.emplace_back(terms_[i].first - v, &terms_[i].second);
        const Coeff lead_inv = Coeff(1) / terms_.front().second;
        std::vector<Coeff> b(static_cast<std::size_t>(len));
        b[0] = lead_inv;
        for (std::int64_t n = 1; n < len; ++n) {
            Coeff sum(0);
            for (const auto& [off, c] : tail) {
                if (off > n) break;
                const Coeff& prev = b[static_cast<std::size_t>(n - off)];
                if (!is_zero(prev)) sum += *c * prev;
            }
            if (!is_zero(sum)) b[static_cast<std::size_t>(n)] = -(sum * lead_inv);
        }
        FracPowerSeries out;
        out.denom_ = denom_;
        out.order_ = order_ - 2 * valuation();
        for (std::int64_t n = 0; n < len; ++n)
            if (!is_zero(b[static_cast<std::size_t>(n)])) out.terms_.emplace_back(n - v, std::move(b[static_cast<std::size_t>(n)]));
        out.normalize();
        return out;
    }

    FracPowerSeries pow(int n) const {
        if (n < 0) return inverse().pow(-n);
        if (n == 0) return constant(Coeff(1), order_ - valuation());  // same relative precision as *this
        FracPowerSeries result;
        bool have = false;
        FracPowerSeries base = *this;
        while (true) {
            if (n & 1) {
                result = have ? result * base : base;
                have = true;
            }
            n >>= 1;
            if (n == 0) break;
            base = base * base;
        }
        return result;
    }

    /// tau -> s*tau: every exponent r becomes r*s and the order becomes O*s.
    FracPowerSeries scale_tau(const Rational& s) const {
        if (s <= 0) throw std::invalid_argument("scale_tau needs a positive factor");
        const std::int64_t p = to_int64(s.get_num());
        const std::int64_t q = to_int64(s.get_den());
        FracPowerSeries out;
        out.denom_ = denom_ * q;
        out.order_ = order_ * s;
        out.terms_.reserve(terms_.size());
        for (const auto& [e, c] : terms_) out.terms_.emplace_back(e * p, c);
        out.normalize();
        return out;
    }

    /// Coefficient-wise map to another coefficient ring.
    template <class F>
    auto map_coeffs(F f) const -> FracPowerSeries<decltype(f(std::declval<const Coeff&>()))> {
        using Out = decltype(f(std::declval<const Coeff&>()));
        std::vector<typename FracPowerSeries<Out>::Term> terms;
        terms.reserve(terms_.size());
        for (const auto& [e, c] : terms_) terms.emplace_back(e, f(c));
        return FracPowerSeries<Out>::from_terms(denom_, std::move(terms), order_);
    }

    /// Strict equality: both the orders and all known coefficients must match.
    friend bool operator==(const FracPowerSeries& a, const FracPowerSeries& b) {
        if (a.order_ != b.order_)
            throw OrderMismatchError("strict comparison of series with orders " + to_string(a.order_) + " and " +
                                     to_string(b.order_));
        return a.denom_ == b.denom_ && a.terms_ == b.terms_;
    }

private:
    static FracPowerSeries combine(const FracPowerSeries& a, const FracPowerSeries& b, bool subtract) {
        const std::int64_t k = std::lcm(a.denom_, b.denom_);
        const std::int64_t ma = k / a.denom_;
        const std::int64_t mb = k / b.denom_;
        FracPowerSeries out;
        out.denom_ = k;
        out.order_ = std::min(a.order_, b.order_);
        const std::int64_t limit = ceil_int(out.order_ * static_cast<long>(k));
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            const std::int64_t ea = i < a.terms_.size() ? a.terms_[i].first * ma : INT64_MAX;
            const std::int64_t eb = j < b.terms_.size() ? b.terms_[j].first * mb : INT64_MAX;
            const std::int64_t e = std::min(ea, eb);
            if (e >= limit) break;
            Coeff c(0);
            if (ea == e) c += a.terms_[i++].second;
            if (eb == e) {
                if (subtract)
                    c -= b.terms_[j++].second;
                else
                    c += b.terms_[j++].second;
            }
            if (!is_zero(c)) out.terms_.emplace_back(e, std::move(c));
        }
        out.normalize();
        return out;
    }

    void normalize() {
        const std::int64_t limit = ceil_int(order_ * static_cast<long>(denom_));
        std::erase_if(terms_, [limit](const Term& t) { return t.first >= limit || is_zero(t.second); });
        std::int64_t g = denom_;
        for (const auto& t : terms_) {
            g = std::gcd(g, t.first);
            if (g == 1) break;
        }
        if (terms_.empty()) g = denom_;
        if (g > 1) {
            denom_ /= g;
            for (auto& t : terms_) t.first /= g;
        }
    }

    std::int64_t denom_ = 1;
    std::vector<Term> terms_;
    Rational order_ = Rational(0);
};

using QSeries = FracPowerSeries<Rational>;
using CycSeries = FracPowerSeries<CycNumber>;

/// Equality up to the smaller of the two validity orders.
template <class Coeff>
bool agree(const FracPowerSeries<Coeff>& a, const FracPowerSeries<Coeff>& b) {
    const Rational o = std::min(a.order(), b.order());
    return a.truncated(o) == b.truncated(o);
}

inline CycSeries promote(const QSeries& s) {
    return s.map_coeffs([](const Rational& c) { return CycNumber(c); });
}

/// Inverse of promote; fails if some coefficient is irrational.
inline QSeries demote(const CycSeries& s) {
    return s.map_coeffs([](const CycNumber& c) { return c.to_rational(); });
}

/// tau -> tau + t: the coefficient of q^r is multiplied by exp(2 pi i r t).
template <class Coeff>
CycSeries shift_tau(const FracPowerSeries<Coeff>& s, const Rational& t) {
    std::vector<CycSeries::Term> terms;
    terms.reserve(s.terms().size());
    for (const auto& [e, c] : s.terms()) {
        Rational rt = make_rational(e, s.denom()) * t;
        const std::int64_t num = to_int64(rt.get_num());
        const std::int64_t den = to_int64(rt.get_den());
        CycNumber root = CycNumber::zeta(static_cast<int>(den), num);
        terms.emplace_back(e, CycNumber(c) * root);
    }
    return CycSeries::from_terms(s.denom(), std::move(terms), s.order());
}

/// Dedekind eta, q^{1/24} prod_{n>=1} (1 - q^n), truncated at `order`.
/// Expanded through Euler's pentagonal number theorem.
inline QSeries eta(const Rational& order) {
    if (order <= make_rational(1, 24)) throw PrecisionError("eta needs order > 1/24");
    // exponents in units of 1/24: 1 + 12 k (3k - 1), sign (-1)^k
    const std::int64_t limit = ceil_int(order * 24);
    std::vector<QSeries::Term> terms;
    terms.emplace_back(1, Rational(1));
    for (std::int64_t k = 1;; ++k) {
        bool any = false;
        for (std::int64_t kk : {k, -k}) {
            const std::int64_t e = 1 + 12 * kk * (3 * kk - 1);
            if (e >= limit) continue;
            any = true;
            terms.emplace_back(e, Rational(k % 2 == 0 ? 1 : -1));
        }
        if (!any) break;
    }
    return QSeries::from_terms(24, std::move(terms), order);
}

template <class Coeff>
std::string coeff_text(const Coeff& c);

template <>
inline std::string coeff_text<Rational>(const Rational& c) {
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

template <>
inline std::string coeff_text<CycNumber>(const CycNumber& c) {
    return "(" + c.to_string() + ")";
}

/// Line-based text form: one "num/den q^{p/K}" line per term, then "O(q^{p/K})".
template <class Coeff>
std::string to_text(const FracPowerSeries<Coeff>& s) {
    std::ostringstream out;
    const std::int64_t k = s.denom();
    for (const auto& [e, c] : s.terms()) out << coeff_text(c) << " q^{" << e << "/" << k << "}\n";
    const Rational scaled = s.order() * static_cast<long>(k);
    if (scaled.get_den() == 1)
        out << "O(q^{" << scaled.get_num().get_str() << "/" << k << "})\n";
    else
        out << "O(q^{" << s.order().get_num().get_str() << "/" << s.order().get_den().get_str() << "})\n";
    return out.str();
}

/// Parses the text form produced by to_text for rational series.
inline QSeries parse_series_text(std::string_view text) {
    std::vector<std::pair<Rational, Rational>> raw;
    std::size_t pos = 0;
    std::size_t line_start = 0;
    auto read_expo = [&](std::string_view line, std::size_t at, std::size_t base) {
        const auto open = line.find("q^{", at);
        const auto close = line.find('}', open == std::string_view::npos ? at : open);
        if (open == std::string_view::npos || close == std::string_view::npos)
            throw ParseError("expected q^{p/K}", base + at);
        return parse_rational(line.substr(open + 3, close - open - 3));
    };
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto end = nl == std::string_view::npos ? text.size() : nl;
        std::string_view line = text.substr(pos, end - pos);
        line_start = pos;
        pos = end + 1;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
        if (line.empty()) {
            if (nl == std::string_view::npos) break;
            continue;
        }
        if (line.starts_with("O(")) {
            const Rational order = read_expo(line, 0, line_start);
            if (raw.empty()) return QSeries::zero(order);
            std::int64_t k = 1;
            for (const auto& [e, c] : raw) k = std::lcm(k, to_int64(e.get_den()));
            std::vector<QSeries::Term> terms;
            for (const auto& [e, c] : raw) terms.emplace_back(to_int64(Rational(e * static_cast<long>(k)).get_num()), c);
            return QSeries::from_terms(k, std::move(terms), order);
        }
        const auto space = line.find(' ');
        if (space == std::string_view::npos) throw ParseError("expected 'num/den q^{p/K}'", line_start);
        raw.emplace_back(read_expo(line, space, line_start), parse_rational(line.substr(0, space)));
        if (nl == std::string_view::npos) break;
    }
    throw ParseError("missing O(q^{p/K}) trailer", text.size());
}

}  // namespace moonshine
