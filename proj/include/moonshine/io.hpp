#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "moonshine/classdata.hpp"
#include "moonshine/cyclotomic.hpp"
#include "moonshine/frameshape.hpp"
#include "moonshine/modgroups.hpp"
#include "moonshine/qseries.hpp"
#include "moonshine/traces.hpp"

namespace moonshine {

using json = nlohmann::json;

// Big integers are written as decimal strings so nothing is lost through doubles.

inline json rational_to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw ParseError("expected a rational string", 0);
    return parse_rational(j.get<std::string>());
}

/// {"level": N, "coords": ["p/q", ...]} in the power basis of Q(zeta_N).
inline json cyc_to_json(const CycNumber& c) {
    json coords = json::array();
    for (const auto& x : c.coords()) coords.push_back(rational_to_json(x));
    return {{"level", c.level()}, {"coords", coords}};
}

inline CycNumber cyc_from_json(const json& j) {
    std::vector<Rational> coords;
    for (const auto& x : j.at("coords")) coords.push_back(rational_from_json(x));
    try {
        return CycNumber::from_coords(j.at("level").get<int>(), std::move(coords));
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad cyclotomic number: ") + e.what(), 0);
    }
}

/// {"terms": [[e, K, "num", "den"], ...], "order": [p, K]}; a term means num/den q^{e/K}.
inline json series_to_json(const QSeries& s) {
    json terms = json::array();
    for (const auto& [e, c] : s.terms())
        terms.push_back({e, s.denom(), c.get_num().get_str(), c.get_den().get_str()});
    const Rational o = s.order();
    return {{"terms", terms}, {"order", {o.get_num().get_str(), o.get_den().get_str()}}};
}

inline QSeries series_from_json(const json& j) {
    try {
        const auto& ord = j.at("order");
        const Integer order_den(ord.at(1).get<std::string>());
        if (order_den <= 0) throw ParseError("order denominator must be positive", 0);
        Rational order(Integer(ord.at(0).get<std::string>()), order_den);
        order.canonicalize();
        std::int64_t k = 1;
        for (const auto& t : j.at("terms")) k = lcm64(k, t.at(1).get<std::int64_t>());
        std::vector<QSeries::Term> terms;
        for (const auto& t : j.at("terms")) {
            const std::int64_t tk = t.at(1).get<std::int64_t>();
            if (tk <= 0) throw ParseError("non-positive exponent denominator", 0);
            const Integer den(t.at(3).get<std::string>());
            if (den == 0) throw ParseError("zero coefficient denominator", 0);
            Rational c(Integer(t.at(2).get<std::string>()), den);
            c.canonicalize();
            terms.emplace_back(t.at(0).get<std::int64_t>() * (k / tk), c);
        }
        return QSeries::from_terms(k, std::move(terms), order);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad series JSON: ") + e.what(), 0);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad series JSON: ") + e.what(), 0);
    }
}

/// Same layout as series_to_json with a cyclotomic object in place of num/den.
inline json cyc_series_to_json(const CycSeries& s) {
    json terms = json::array();
    for (const auto& [e, c] : s.terms()) terms.push_back({e, s.denom(), cyc_to_json(c)});
    const Rational o = s.order();
    return {{"terms", terms}, {"order", {o.get_num().get_str(), o.get_den().get_str()}}};
}

/// Sorted [m, k_m] pairs.
inline json frameshape_to_json(const FrameShape& pi) {
    json out = json::array();
    for (const auto& [m, k] : pi.exponents()) out.push_back({m, k});
    return out;
}

inline FrameShape frameshape_from_json(const json& j) {
    std::map<int, int> exps;
    try {
        for (const auto& p : j) exps[p.at(0).get<int>()] += p.at(1).get<int>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad frame shape JSON: ") + e.what(), 0);
    }
    return FrameShape(std::move(exps));
}

inline json record_to_json(const ConjugacyClassRecord& r) {
    return {{"co0", r.co0_name},
            {"co1", r.co1_name},
            {"frame_shape", r.frame_shape.to_string()},
            {"c_hat_g", r.c_hat_g},
            {"label", r.gamma_tw_label},
            {"monster", r.monster_class}};
}

inline json report_to_json(const IdentityReport& r) {
    json constants = json::object();
    for (const auto& [k, v] : r.constants) constants[k] = rational_to_json(v);
    return {{"name", r.name},
            {"checked_order", rational_to_json(r.checked_order)},
            {"max_residual", rational_to_json(r.max_residual)},
            {"pass", r.pass},
            {"constants", constants},
            {"provenance", r.provenance}};
}

inline IdentityReport report_from_json(const json& j) {
    IdentityReport r;
    r.name = j.at("name").get<std::string>();
    r.checked_order = rational_from_json(j.at("checked_order"));
    r.max_residual = rational_from_json(j.at("max_residual"));
    r.pass = j.at("pass").get<bool>();
    for (const auto& [k, v] : j.at("constants").items()) r.constants.emplace_back(k, rational_from_json(v));
    r.provenance = j.value("provenance", "");
    return r;
}

inline json matrix_to_json(const TestMatrix& m) {
    return {{"entries", {to_string(m.a), to_string(m.b), to_string(m.c), to_string(m.d)}},
            {"det", to_string(m.det)},
            {"provenance", m.provenance}};
}

inline json invariance_to_json(const std::string& cls, const InvarianceReport& r) {
    json ms = json::array();
    for (const auto& m : r.matrices) ms.push_back(matrix_to_json(m));
    return {{"class", cls},       {"label", r.label},   {"matrices", ms}, {"points", r.points},
            {"max_dev", r.max_dev}, {"series_dev", r.series_dev}, {"tol", r.tol},    {"pass", r.pass},
            {"seed", r.seed}};
}

}  // namespace moonshine
