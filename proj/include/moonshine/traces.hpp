#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moonshine/classdata.hpp"
#include "moonshine/cliffordcm.hpp"
#include "moonshine/frameshape.hpp"
#include "moonshine/qseries.hpp"

namespace moonshine {

/// Outcome of an exact series identity check.
struct IdentityReport {
    std::string name;
    Rational checked_order = 0;
    Rational max_residual = 0;  // largest |coefficient| of the residual series
    bool pass = false;
    std::vector<std::pair<std::string, Rational>> constants;  // solved or fitted values
    std::string provenance;
};

namespace detail {

inline Rational max_abs_coeff(const QSeries& s) {
    Rational m = 0;
    for (const auto& [e, c] : s.terms()) m = std::max(m, Rational(abs(c)));
    return m;
}

inline IdentityReport residual_report(std::string name, const QSeries& residual, const Rational& order) {
    IdentityReport r;
    r.name = std::move(name);
    if (residual.order() < order)
        throw PrecisionError("residual for " + r.name + " only known to order " + to_string(residual.order()));
    const QSeries cut = residual.truncated(order);
    r.checked_order = order;
    r.max_residual = max_abs_coeff(cut);
    r.pass = cut.empty();
    return r;
}

}  // namespace detail

/// eta_pi(tau/2) / eta_pi(tau), exact below `order`. Valuation -1/2.
inline QSeries t_tilde(const FrameShape& pi, const Rational& order) {
    // num: valuation 1/2; den inverse: valuation -1 and order O_den - 2
    const QSeries num = eta_quotient(pi, make_rational(1, 2), order + 1);
    const QSeries den = eta_quotient(pi, 1, order + make_rational(3, 2)).inverse();
    return (num * den).truncated(order);
}

/// T^s = t_tilde + chi.
inline QSeries T_s(const FrameShape& pi, const Rational& order) {
    return t_tilde(pi, order) + QSeries::constant(Rational(pi.chi()), order);
}

/// T^s_tw = C eta_pi(tau) - chi.
inline QSeries T_s_tw(const FrameShape& pi, const Rational& c, const Rational& order) {
    return eta_quotient(pi, 1, order) * c - QSeries::constant(Rational(pi.chi()), order);
}

inline QSeries T_s_tw(const ConjugacyClassRecord& rec, const Rational& order) {
    return T_s_tw(rec.frame_shape, Rational(rec.c_hat_g), order);
}

/// Left side of 2 chi - t~_{-g} + t~_g + c eta_{-g} - C_g eta_g = 0 with c left as a parameter.
inline QSeries lemma_residual(const FrameShape& pi, const Rational& c_g, const Rational& c_neg, const Rational& order) {
    const FrameShape neg = pi.negate();
    return QSeries::constant(Rational(2 * pi.chi()), order) - t_tilde(neg, order) + t_tilde(pi, order) +
           eta_quotient(neg, 1, order) * c_neg - eta_quotient(pi, 1, order) * c_g;
}

/// Solves the identity above for c = C_{z g}: eta_{-g} = q + O(q^2), so c is fixed by
/// the q^1 coefficient; all remaining coefficients below `order` are then checked.
inline std::pair<Rational, IdentityReport> solve_c_neg(const FrameShape& pi, const Rational& c_g, const Rational& order,
                                                       const std::string& name = "") {
    if (order <= 1) throw PrecisionError("solve_c_neg needs order > 1");
    const QSeries without = lemma_residual(pi, c_g, 0, order);
    const Rational lead = eta_quotient(pi.negate(), 1, order).coeff(1);
    if (lead == 0) throw StructuralError("eta quotient of the negation has no q^1 term");
    const Rational c = -without.coeff(1) / lead;
    auto rep = detail::residual_report("lemma " + (name.empty() ? pi.to_string() : name),
                                       lemma_residual(pi, c_g, c, order), order);
    rep.constants.emplace_back("C_neg", c);
    rep.provenance = "derived";
    return {c, rep};
}

inline std::pair<Rational, IdentityReport> solve_c_neg(const ConjugacyClassRecord& rec, const Rational& order) {
    return solve_c_neg(rec.frame_shape, Rational(rec.c_hat_g), order, rec.co0_name);
}

/// Frame shape of -g and the solved constant for it, cached per class.
struct DerivedPartner {
    FrameShape frame_shape;
    Rational c_value;
    std::string provenance = "derived";
};

inline DerivedPartner derived_partner(const ConjugacyClassRecord& rec, const Rational& order = 25) {
    static std::mutex mutex;
    static std::map<std::string, DerivedPartner> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(rec.co0_name); it != cache.end()) return it->second;
    }
    auto [c, rep] = solve_c_neg(rec, order);
    if (!rep.pass) throw StructuralError("lemma residual non-zero for " + rec.co0_name);
    DerivedPartner p{rec.frame_shape.negate(), c};
    std::lock_guard lock(mutex);
    cache.emplace(rec.co0_name, p);
    return p;
}

/// 1/2 (D(t)^2/(D(2t) D(t/2)) - D(t/2)/D(t)) = 24 + coeff * D(2t)/D(t), D = eta^24.
/// coeff is 2^11; other values serve as negative controls.
inline IdentityReport verify_delta_identity(const Rational& order, const Rational& coeff = 2048) {
    if (order < 2) throw PrecisionError("delta identity needs order >= 2");
    const FrameShape id = FrameShape::parse("1^24");
    const FrameShape minus = FrameShape::parse("2^24/1^24");
    const Rational half(1, 2);
    const QSeries lhs = (t_tilde(minus, order) - t_tilde(id, order)) * half;
    const QSeries rhs = QSeries::constant(24, order) + eta_quotient(minus, 1, order) * coeff;
    auto rep = detail::residual_report("delta", lhs - rhs, order);
    rep.constants.emplace_back("coefficient", coeff);
    return rep;
}

struct HeckeResult {
    IdentityReport report;
    Rational a, b, c;
};

/// f = D(2t)/D(t); T_2 f(t) = 1/2 (f(t/2) + f((t+1)/2)) keeps the integral exponents of f(t/2).
/// Fits T_2 f = a f^2 + b f + c from the q^0, q^1, q^2 coefficients and checks the rest.
inline HeckeResult verify_hecke(const Rational& order) {
    if (order < 4) throw PrecisionError("hecke check needs order >= 4");
    const FrameShape minus = FrameShape::parse("2^24/1^24");
    const QSeries f = eta_quotient(minus, 1, 2 * order + 2);
    const QSeries f_half = f.scale_tau(make_rational(1, 2));
    const CycSeries shifted = shift_tau(f_half, 1);
    const QSeries t2 = demote(promote(f_half) + shifted) * Rational(1, 2);
    const QSeries f2 = f * f;

    // f = q + ..., f^2 = q^2 + ...: the system is triangular in (c, b, a)
    HeckeResult r;
    r.c = t2.coeff(0);
    r.b = t2.coeff(1) / f.coeff(1);
    r.a = (t2.coeff(2) - r.b * f.coeff(2)) / f2.coeff(2);
    const QSeries fit = f2 * r.a + f * r.b + QSeries::constant(r.c, order + 10);
    r.report = detail::residual_report("hecke", t2 - fit, order);
    r.report.constants = {{"a", r.a}, {"b", r.b}, {"c", r.c}};
    return r;
}

/// f((t+1)/2) = -f(t)/f(t/2) for f = D(2t)/D(t), checked below `order`.
inline IdentityReport verify_half_shift(const Rational& order) {
    const FrameShape minus = FrameShape::parse("2^24/1^24");
    const QSeries f = eta_quotient(minus, 1, 2 * order + 4);
    const QSeries f_half = f.scale_tau(make_rational(1, 2));
    const QSeries lhs = demote(shift_tau(f_half, 1));
    const QSeries rhs = -(f * f_half.inverse());
    return detail::residual_report("half-shift", lhs - rhs, order);
}

}  // namespace moonshine
