#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "moonshine/error.hpp"
#include "moonshine/rational.hpp"

namespace moonshine {

/// Integer polynomial, coefficient of x^i at index i.
using IntPoly = std::vector<std::int64_t>;

inline int euler_phi(int n) {
    if (n < 1) throw std::domain_error("euler_phi of non-positive integer");
    int result = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace detail {

// Exact quotient of integer polynomials with monic divisor.
inline IntPoly poly_div_exact(IntPoly num, const IntPoly& den) {
    const std::size_t dn = den.size() - 1;
    if (den.back() != 1) throw StructuralError("poly_div_exact: divisor not monic");
    if (num.size() < den.size()) throw StructuralError("poly_div_exact: degree too small");
    IntPoly quot(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        const std::int64_t c = num[i];
        quot[i - dn] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    for (std::size_t i = 0; i < dn; ++i)
        if (num[i] != 0) throw StructuralError("poly_div_exact: non-zero remainder");
    return quot;
}

}  // namespace detail

/// The n-th cyclotomic polynomial: x^n - 1 divided by every Phi_d, d | n, d < n.
inline IntPoly cyclotomic_polynomial(int n) {
    if (n < 1) throw std::domain_error("cyclotomic_polynomial: n must be positive");
    static std::mutex mutex;
    static std::map<int, IntPoly> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    IntPoly p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = detail::poly_div_exact(std::move(p), cyclotomic_polynomial(d));
    std::lock_guard lock(mutex);
    cache.emplace(n, p);
    return p;
}

namespace detail {

struct LevelData {
    int level = 1;
    int phi = 1;
    // power[j] = coordinates of x^j modulo Phi_level, for 0 <= j < max(level, 2*phi - 1).
    std::vector<std::vector<std::int64_t>> power;
};

inline const LevelData& level_data(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<LevelData>> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return *it->second;

    auto data = std::make_unique<LevelData>();
    data->level = n;
    const IntPoly phi_poly = cyclotomic_polynomial(n);
    const int phi = static_cast<int>(phi_poly.size()) - 1;
    data->phi = phi;
    const int count = std::max(n, 2 * phi - 1);
    data->power.assign(count, std::vector<std::int64_t>(phi, 0));
    std::vector<std::int64_t> cur(phi, 0);
    cur[0] = 1;
    for (int j = 0; j < count; ++j) {
        data->power[j] = cur;
        // multiply by x, then reduce the overflow coefficient using x^phi = -sum_{i<phi} c_i x^i
        const std::int64_t top = cur[phi - 1];
        for (int i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (int i = 0; i < phi; ++i) cur[i] -= top * phi_poly[i];
    }
    const LevelData& ref = *data;
    cache.emplace(n, std::move(data));
    return ref;
}

}  // namespace detail

/// Element of the cyclotomic field Q(zeta_N), stored in the power basis
/// 1, z, ..., z^{phi(N)-1} with z = exp(2 pi i / N), reduced modulo Phi_N.
///
/// Mixed-level arithmetic raises both operands to the lcm of their levels.
class CycNumber {
public:
    CycNumber() : level_(1), coords_(1) {}
    CycNumber(long v) : level_(1), coords_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
    CycNumber(int v) : CycNumber(static_cast<long>(v)) {}   // NOLINT(google-explicit-constructor)
    CycNumber(const Rational& r) : level_(1), coords_{r} {}  // NOLINT(google-explicit-constructor)

    /// exp(2 pi i k / n).
    static CycNumber zeta(int n, std::int64_t k) {
        if (n < 1) throw std::domain_error("zeta: level must be positive");
        const auto& data = detail::level_data(n);
        std::int64_t e = k % n;
        if (e < 0) e += n;
        CycNumber out;
        out.level_ = n;
        out.coords_.assign(data.phi, Rational(0));
        for (int i = 0; i < data.phi; ++i) out.coords_[i] = Rational(static_cast<long>(data.power[e][i]));
        return out;
    }

    static CycNumber from_coords(int level, std::vector<Rational> coords) {
        if (level < 1) throw std::domain_error("from_coords: level must be positive");
        if (static_cast<int>(coords.size()) != euler_phi(level))
            throw std::invalid_argument("from_coords: expected phi(level) coordinates");
        CycNumber out;
        out.level_ = level;
        out.coords_ = std::move(coords);
        return out;
    }

    int level() const noexcept { return level_; }
    const std::vector<Rational>& coords() const noexcept { return coords_; }

    /// Same value expressed at level m, a multiple of level().
    CycNumber raised_to(int m) const {
        if (m == level_) return *this;
        if (m % level_ != 0) throw std::invalid_argument("raised_to: target level must be a multiple");
        const auto& data = detail::level_data(m);
        const int step = m / level_;
        CycNumber out;
        out.level_ = m;
        out.coords_.assign(data.phi, Rational(0));
        for (std::size_t j = 0; j < coords_.size(); ++j) {
            if (coords_[j] == 0) continue;
            const auto& row = data.power[j * step];
            for (int i = 0; i < data.phi; ++i)
                if (row[i] != 0) out.coords_[i] += coords_[j] * static_cast<long>(row[i]);
        }
        return out;
    }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (c != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < coords_.size(); ++i)
            if (coords_[i] != 0) return false;
        // At level 1 and 2 the single coordinate is the value; otherwise 1 is the first basis vector.
        return true;
    }

    Rational to_rational() const {
        if (!is_rational()) throw NotRationalError("cyclotomic number is not rational: " + to_string());
        return coords_[0];
    }

    /// Image under the automorphism z -> z^k, gcd(k, level) = 1.
    CycNumber galois(std::int64_t k) const {
        std::int64_t e = k % level_;
        if (e < 0) e += level_;
        if (std::gcd(e, static_cast<std::int64_t>(level_)) != 1)
            throw std::invalid_argument("galois: exponent not coprime to level");
        const auto& data = detail::level_data(level_);
        CycNumber out;
        out.level_ = level_;
        out.coords_.assign(data.phi, Rational(0));
        for (std::size_t j = 0; j < coords_.size(); ++j) {
            if (coords_[j] == 0) continue;
            const auto& row = data.power[(static_cast<std::int64_t>(j) * e) % level_];
            for (int i = 0; i < data.phi; ++i)
                if (row[i] != 0) out.coords_[i] += coords_[j] * static_cast<long>(row[i]);
        }
        return out;
    }

    /// Complex conjugate (z -> z^{-1}).
    CycNumber conj() const { return galois(-1); }

    /// Field norm to Q: product of all Galois conjugates.
    Rational norm() const {
        CycNumber prod = *this;
        for (int k = 2; k < level_; ++k)
            if (std::gcd(k, level_) == 1) prod *= galois(k);
        return prod.to_rational();
    }

    CycNumber inverse() const {
        if (is_zero()) throw NotInvertibleError("inverse of zero cyclotomic number");
        CycNumber others(1);
        for (int k = 2; k < level_; ++k)
            if (std::gcd(k, level_) == 1) others *= galois(k);
        const Rational n = (*this * others).to_rational();
        return others * Rational(1 / n);
    }

    std::complex<double> to_complex() const {
        std::complex<double> sum = 0;
        for (std::size_t j = 0; j < coords_.size(); ++j) {
            if (coords_[j] == 0) continue;
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / level_;
            sum += coords_[j].get_d() * std::polar(1.0, angle);
        }
        return sum;
    }

    /// Text form "c_0 + c_1*z^1 + ... @ level N".
    std::string to_string() const {
        std::string out;
        for (std::size_t j = 0; j < coords_.size(); ++j) {
            if (coords_[j] == 0) continue;
            if (!out.empty()) out += " + ";
            out += coords_[j].get_str();
            if (j > 0) out += "*z^" + std::to_string(j);
        }
        if (out.empty()) out = "0";
        return out + " @ level " + std::to_string(level_);
    }

    CycNumber operator-() const {
        CycNumber out = *this;
        for (auto& c : out.coords_) c = -c;
        return out;
    }

    CycNumber& operator+=(const CycNumber& o) {
        if (o.level_ == level_) {
            for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
            return *this;
        }
        const int l = std::lcm(level_, o.level_);
        *this = raised_to(l);
        const CycNumber r = o.raised_to(l);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += r.coords_[i];
        return *this;
    }

    CycNumber& operator-=(const CycNumber& o) { return *this += -o; }

    CycNumber& operator*=(const CycNumber& o) {
        if (o.level_ == 1) {
            for (auto& c : coords_) c *= o.coords_[0];
            return *this;
        }
        if (level_ == 1) {
            const Rational s = coords_[0];
            *this = o;
            for (auto& c : coords_) c *= s;
            return *this;
        }
        const int l = std::lcm(level_, o.level_);
        const CycNumber a = raised_to(l);
        const CycNumber b = o.raised_to(l);
        const auto& data = detail::level_data(l);
        std::vector<Rational> conv(2 * data.phi - 1);
        for (int i = 0; i < data.phi; ++i) {
            if (a.coords_[i] == 0) continue;
            for (int j = 0; j < data.phi; ++j)
                if (b.coords_[j] != 0) conv[i + j] += a.coords_[i] * b.coords_[j];
        }
        level_ = l;
        coords_.assign(data.phi, Rational(0));
        for (std::size_t k = 0; k < conv.size(); ++k) {
            if (conv[k] == 0) continue;
            const auto& row = data.power[k];
            for (int i = 0; i < data.phi; ++i)
                if (row[i] != 0) coords_[i] += conv[k] * static_cast<long>(row[i]);
        }
        return *this;
    }

    CycNumber& operator/=(const CycNumber& o) { return *this *= o.inverse(); }

    friend CycNumber operator+(CycNumber a, const CycNumber& b) { return a += b; }
    friend CycNumber operator-(CycNumber a, const CycNumber& b) { return a -= b; }
    friend CycNumber operator*(CycNumber a, const CycNumber& b) { return a *= b; }
    friend CycNumber operator/(CycNumber a, const CycNumber& b) { return a /= b; }

    friend bool operator==(const CycNumber& a, const CycNumber& b) {
        if (a.level_ == b.level_) return a.coords_ == b.coords_;
        const int l = std::lcm(a.level_, b.level_);
        return a.raised_to(l).coords_ == b.raised_to(l).coords_;
    }

private:
    int level_;
    std::vector<Rational> coords_;
};

inline bool is_zero(const Rational& r) { return r == 0; }
inline bool is_zero(const CycNumber& c) { return c.is_zero(); }

}  // namespace moonshine
