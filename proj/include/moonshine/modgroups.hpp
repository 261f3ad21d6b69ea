#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <tuple>
#include <type_traits>
#include <vector>

#include "moonshine/error.hpp"
#include "moonshine/frameshape.hpp"
#include "moonshine/qseries.hpp"
#include "moonshine/rational.hpp"

namespace moonshine {

using Complex = std::complex<double>;

/// A group label n|h+e,f,... or n|h-. With h = 1 the "|h" is omitted.
struct GroupLabel {
    int n = 1;
    int h = 1;
    std::vector<int> al_set;  // exact divisors of n/h with adjoined Atkin-Lehner involutions
    bool minus = true;

    int level() const { return n / h; }

    std::string to_string() const {
        std::string s = std::to_string(n);
        if (h != 1) s += "|" + std::to_string(h);
        if (minus) return s + "-";
        s += "+";
        for (std::size_t i = 0; i < al_set.size(); ++i) s += (i ? "," : "") + std::to_string(al_set[i]);
        return s;
    }

    friend bool operator==(const GroupLabel&, const GroupLabel&) = default;
};

inline GroupLabel parse_label(std::string_view text) {
    std::size_t pos = 0;
    auto read_int = [&]() {
        const std::size_t start = pos;
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            if (v > 1'000'000) throw ParseError("number too large in label", start);
            ++pos;
        }
        if (pos == start) throw ParseError("expected a number in label '" + std::string(text) + "'", start);
        if (v == 0) throw ParseError("zero in label", start);
        return static_cast<int>(v);
    };
    GroupLabel gl;
    gl.n = read_int();
    if (pos < text.size() && text[pos] == '|') {
        ++pos;
        gl.h = read_int();
    }
    const std::string_view rest = text.substr(pos);
    if (rest == "-" || rest == "−") {
        gl.minus = true;
    } else if (!rest.empty() && rest[0] == '+') {
        gl.minus = false;
        ++pos;
        while (pos < text.size()) {
            gl.al_set.push_back(read_int());
            if (pos < text.size()) {
                if (text[pos] != ',') throw ParseError("expected ',' in label", pos);
                ++pos;
                if (pos == text.size()) throw ParseError("trailing ',' in label", pos);
            }
        }
    } else {
        throw ParseError("expected '-' or '+' in label '" + std::string(text) + "'", pos);
    }

    if (gl.n % gl.h != 0 || 24 % gl.h != 0)
        throw ParseError("h = " + std::to_string(gl.h) + " must divide both n and 24", 0);
    const int nh = gl.level();
    for (int e : gl.al_set) {
        if (e == 1 || nh % e != 0 || std::gcd(e, nh / e) != 1)
            throw ParseError(std::to_string(e) + " is not an exact divisor of " + std::to_string(nh), 0);
    }
    return gl;
}

/// Moebius transformation (a b; c d) with exact rational entries; det is the positive
/// number the matrix must be divided by (as its square root) to have determinant 1.
struct TestMatrix {
    Rational a, b, c, d;
    Rational det = 1;
    std::string provenance;

    Complex apply(const Complex& tau) const {
        const double ad = a.get_d(), bd = b.get_d(), cd = c.get_d(), dd = d.get_d();
        return (ad * tau + bd) / (cd * tau + dd);
    }
    bool det_ok() const { return det > 0 && a * d - b * c == det; }

    TestMatrix operator*(const TestMatrix& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d, det * o.det,
                provenance + "*" + o.provenance};
    }

    std::string to_string() const {
        return "(" + moonshine::to_string(a) + "," + moonshine::to_string(b) + ";" + moonshine::to_string(c) + "," +
               moonshine::to_string(d) + ")";
    }
};

namespace detail {

// Returns (g, x, y) with a x + b y = g.
inline std::array<std::int64_t, 3> ext_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        const std::int64_t q = a / b;
        std::tie(a, b) = std::make_tuple(b, a - q * b);
        std::tie(x0, x1) = std::make_tuple(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_tuple(y1, y0 - q * y1);
    }
    if (a < 0) return {-a, -x0, -y0};
    return {a, x0, y0};
}

}  // namespace detail

/// W_e for the label: (a e, b/h; c n, d e) with determinant e.
inline TestMatrix atkin_lehner(const GroupLabel& gl, int e) {
    const int nh = gl.level();
    if (nh % e != 0 || std::gcd(e, nh / e) != 1)
        throw StructuralError(std::to_string(e) + " is not an exact divisor of " + std::to_string(nh));
    if (e == nh) return {0, Rational(-1, gl.h), gl.n, 0, Rational(e), "fricke"};
    // c = d = 1 leaves a e - b (nh/e) = 1
    const auto [g, x, y] = detail::ext_gcd(e, nh / e);
    if (g != 1) throw StructuralError("Atkin-Lehner solve failed for e = " + std::to_string(e));
    TestMatrix m{Rational(x * e), Rational(-y, gl.h), gl.n, e, Rational(e), "atkin-lehner-" + std::to_string(e)};
    if (!m.det_ok()) throw StructuralError("Atkin-Lehner determinant mismatch for e = " + std::to_string(e));
    return m;
}

/// Random elements of Gamma_0(n h), which lies in every group with this label, preceded by
/// the unit translation.
inline std::vector<TestMatrix> gamma0_samples(int level, std::size_t count, std::mt19937_64& rng) {
    std::vector<TestMatrix> out;
    if (count == 0) return out;
    out.push_back({1, 1, 0, 1, 1, "translation-1"});
    std::uniform_int_distribution<int> kdist(1, 3), ddist(-12, 12), tdist(-2, 2);
    while (out.size() < count) {
        const std::int64_t c = static_cast<std::int64_t>(level) * kdist(rng);
        const std::int64_t d = ddist(rng);
        if (d == 0 || std::gcd(c, d) != 1) continue;
        auto [g, x, y] = detail::ext_gcd(d, c);  // x d + y c = 1
        const std::int64_t t = tdist(rng);
        const std::int64_t a = x + t * c, b = -y + t * d;
        out.push_back({Rational(a), Rational(b), Rational(c), Rational(d), 1, "gamma0-sample"});
    }
    return out;
}

/// Dedekind eta: returns log eta(tau) for some branch of the logarithm.
inline Complex log_dedekind_eta(Complex tau) {
    if (!(tau.imag() > 0)) throw EvaluationError("eta needs Im(tau) > 0");
    constexpr double pi = std::numbers::pi;
    const Complex I(0, 1);
    Complex acc = 0;
    for (int step = 0; step < 10000; ++step) {
        const double shift = std::round(tau.real());
        tau -= shift;
        acc += I * pi * shift / 12.0;  // eta(tau + b) = e^{pi i b/12} eta(tau)
        if (std::norm(tau) >= 1.0 - 1e-12) break;
        // eta(tau) = eta(-1/tau) / sqrt(-i tau)
        acc -= 0.5 * std::log(-I * tau);
        tau = -1.0 / tau;
    }
    const Complex q = std::exp(2.0 * pi * I * tau);
    Complex sum = 1;
    for (int k = 1; k < 200; ++k) {
        const double sign = (k % 2) ? -1.0 : 1.0;
        const Complex t1 = std::pow(q, k * (3 * k - 1) / 2), t2 = std::pow(q, k * (3 * k + 1) / 2);
        sum += sign * (t1 + t2);
        if (std::abs(t1) < 1e-20) break;
    }
    return acc + 2.0 * pi * I * tau / 24.0 + std::log(sum);
}

/// scale * prod eta(m tau)^{k_m} + shift, evaluated anywhere in the upper half plane.
struct EtaQuotientFunction {
    FrameShape pi;
    Complex scale = 1;
    Complex shift = 0;

    Complex operator()(const Complex& tau) const {
        Complex log_sum = 0;
        for (const auto& [m, k] : pi.exponents()) log_sum += static_cast<double>(k) * log_dedekind_eta(double(m) * tau);
        return scale * std::exp(log_sum) + shift;
    }
};

struct SeriesValue {
    Complex value;
    double tail_bound = 0;
};

/// Sums the stored terms at tau. The tail bound extrapolates the growth of the last five
/// coefficients geometrically; with fewer than two stored terms it is 0.
template <class Coeff>
SeriesValue eval_series(const FracPowerSeries<Coeff>& s, const Complex& tau, double tail_bound_target) {
    if (!(tau.imag() > 0)) throw EvaluationError("series evaluation needs Im(tau) > 0");
    constexpr double two_pi = 2 * std::numbers::pi;
    auto as_complex = [](const Coeff& c) -> Complex {
        if constexpr (std::is_same_v<Coeff, Rational>) return c.get_d();
        else return c.to_complex();
    };
    SeriesValue out;
    for (const auto& t : s.terms())
        out.value += as_complex(t.second) * std::exp(Complex(0, two_pi) * s.exponent(t).get_d() * tau);
    const auto& terms = s.terms();
    if (terms.size() < 2) return out;

    const double abs_q = std::exp(-two_pi * tau.imag());
    double growth = 1;
    const std::size_t first = terms.size() > 5 ? terms.size() - 5 : 0;
    for (std::size_t j = first; j + 1 < terms.size(); ++j) {
        const double ratio = std::abs(as_complex(terms[j + 1].second)) / std::abs(as_complex(terms[j].second));
        const double step = Rational(s.exponent(terms[j + 1]) - s.exponent(terms[j])).get_d();
        growth = std::max(growth, std::pow(ratio, 1.0 / step));
    }
    const double per_unit = growth * abs_q;
    const double per_step = std::pow(per_unit, 1.0 / static_cast<double>(s.denom()));
    if (per_step >= 1) throw PrecisionError("series does not converge visibly at this tau");
    const double last = std::abs(as_complex(terms.back().second));
    const double gap = Rational(s.order() - s.exponent(terms.back())).get_d();
    out.tail_bound = last * std::pow(growth, gap) * std::pow(abs_q, s.order().get_d()) / (1 - per_step);
    if (out.tail_bound > tail_bound_target)
        throw PrecisionError("tail bound " + std::to_string(out.tail_bound) + " exceeds target " +
                             std::to_string(tail_bound_target) + "; raise the order");
    return out;
}

struct InvarianceReport {
    std::string label;
    std::vector<TestMatrix> matrices;
    std::size_t points = 0;
    std::uint64_t seed = 0;
    double max_dev = 0;         // max |f(gamma tau) - s(tau)|
    double series_dev = 0;      // max |f(tau) - s(tau)|, series against the eta product
    double tol = 0;
    bool pass = false;
};

/// Sample points with Im in [0.8, 2] and |Re| <= 1.
inline std::vector<Complex> sample_points(std::size_t count, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(-1.0, 1.0), im(0.8, 2.0);
    std::vector<Complex> out;
    for (std::size_t i = 0; i < count; ++i) {
        const double x = re(rng);
        out.emplace_back(x, im(rng));
    }
    return out;
}

/// Group elements for a label: Gamma_0(n h) samples plus one W_e per listed divisor. For
/// h > 1 the W_e coset meets the index-h subgroup in one of W_e T^{j/h}, j < h; the
/// representative is picked by matching f at a reference point, and then has to hold at
/// every sample point.
inline std::vector<TestMatrix> sample_matrices(const GroupLabel& gl, std::size_t count, std::mt19937_64& rng,
                                               const EtaQuotientFunction* f = nullptr) {
    std::vector<TestMatrix> al;
    for (int e : gl.al_set) {
        TestMatrix w = atkin_lehner(gl, e);
        if (gl.h > 1 && f != nullptr) {
            const Complex ref(0.123, 1.1);
            double best = INFINITY;
            TestMatrix pick = w;
            for (int j = 0; j < gl.h; ++j) {
                const TestMatrix cand = w * TestMatrix{1, Rational(j, gl.h), 0, 1, 1, "translation-" + std::to_string(j) + "/" + std::to_string(gl.h)};
                const double dev = std::abs((*f)(cand.apply(ref)) - (*f)(ref));
                if (dev < best) best = dev, pick = cand;
            }
            w = pick;
        }
        al.push_back(w);
    }
    const std::size_t n_gamma = count > al.size() ? count - al.size() : 1;
    auto out = gamma0_samples(gl.n * gl.h, n_gamma, rng);
    out.insert(out.end(), al.begin(), al.end());
    return out;
}

/// max over matrices and points of |f(gamma tau) - s(tau)|, with s the truncated series of f.
inline InvarianceReport invariance_check(const QSeries& s, const EtaQuotientFunction& f,
                                         const std::vector<TestMatrix>& matrices, const std::vector<Complex>& points,
                                         double tol) {
    InvarianceReport rep;
    rep.matrices = matrices;
    rep.points = points.size();
    rep.tol = tol;
    for (const auto& tau : points) {
        const Complex here = eval_series(s, tau, tol * 1e-3).value;
        rep.series_dev = std::max(rep.series_dev, std::abs(f(tau) - here));
        for (const auto& g : matrices) rep.max_dev = std::max(rep.max_dev, std::abs(f(g.apply(tau)) - here));
    }
    rep.pass = rep.max_dev <= tol && rep.series_dev <= tol;
    return rep;
}

inline InvarianceReport invariance_check(const QSeries& s, const EtaQuotientFunction& f, const GroupLabel& gl,
                                         std::size_t matrices, std::size_t points, double tol, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto ms = sample_matrices(gl, matrices, rng, &f);
    const auto pts = sample_points(points, rng);
    auto rep = invariance_check(s, f, ms, pts, tol);
    rep.label = gl.to_string();
    rep.seed = seed;
    return rep;
}

}  // namespace moonshine
