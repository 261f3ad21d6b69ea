#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "moonshine/moonshine.hpp"

using namespace moonshine;

namespace {

struct RunConfig {
    std::string format = "text";
    unsigned threads = 0;
    std::string selector = "all";
    std::string order_text;
    double tol = 1e-6;
    std::uint64_t seed = 1;
};

// Exit codes: 0 all checks passed, 1 a check failed, 2 usage or input error.
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : Error {
    using Error::Error;
};

unsigned threads_of(const RunConfig& cfg) { return cfg.threads ? cfg.threads : default_threads(); }

Rational order_of(const RunConfig& cfg, const Rational& fallback) {
    if (cfg.order_text.empty()) return fallback;
    Rational o;
    try {
        o = parse_rational(cfg.order_text);
    } catch (const Error&) {
        throw UsageError("bad --order '" + cfg.order_text + "'");
    }
    if (o <= 0) throw UsageError("--order must be positive");
    return o;
}

// A class from the table, or an explicit Frame shape with its closed-form spinor trace.
struct Target {
    std::string name;
    FrameShape pi;
    Rational c;
    std::string label;
    std::optional<ConjugacyClassRecord> rec;
};

std::vector<Target> resolve(const std::string& selector) {
    std::vector<Target> out;
    if (selector == "all") {
        for (const auto& r : registry())
            out.push_back({r.co0_name, r.frame_shape, Rational(r.c_hat_g), r.gamma_tw_label, r});
        return out;
    }
    if (selector.find('^') != std::string::npos || selector.find('.') != std::string::npos) {
        const FrameShape pi = FrameShape::parse(selector);
        out.push_back({pi.to_string(), pi, spinor_trace(pi), "", std::nullopt});
        return out;
    }
    const auto& r = lookup(selector);
    out.push_back({r.co0_name, r.frame_shape, Rational(r.c_hat_g), r.gamma_tw_label, r});
    return out;
}

std::string expo_text(const Rational& e) {
    if (e == 1) return "q";
    if (e.get_den() == 1) return "q^" + to_string(e);
    return "q^(" + to_string(e) + ")";
}

/// 24 + 4096 q + 98304 q^2 + O(q^3)
std::string pretty(const QSeries& s) {
    std::string out;
    for (const auto& t : s.terms()) {
        const Rational e = s.exponent(t);
        Rational c = t.second;
        const bool neg = c < 0;
        if (neg) c = -c;
        out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        if (e == 0) out += to_string(c);
        else if (c == 1) out += expo_text(e);
        else out += to_string(c) + " " + expo_text(e);
    }
    return out + (out.empty() ? "" : " + ") + "O(" + expo_text(s.order()) + ")";
}

std::string coeff_string(const CycNumber& c) { return c.is_rational() ? to_string(c.to_rational()) : c.to_string(); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

int tally(std::size_t passed, std::size_t total, const RunConfig& cfg) {
    if (cfg.format == "text") std::cout << passed << "/" << total << " passed\n";
    return passed == total ? 0 : kFail;
}

// ---------------------------------------------------------------------------

int cmd_table(const RunConfig& cfg) {
    const auto& rows = registry();
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(record_to_json(r));
        std::cout << arr.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "co0,co1,frame_shape,c_hat_g,label,monster\n";
        for (const auto& r : rows)
            std::cout << r.co0_name << "," << r.co1_name << "," << r.frame_shape.to_string() << "," << r.c_hat_g << ","
                      << csv_field(r.gamma_tw_label) << "," << r.monster_class << "\n";
    } else {
        for (const auto& r : rows)
            std::cout << std::left << std::setw(6) << r.co0_name << std::setw(6) << r.co1_name << std::setw(24)
                      << r.frame_shape.to_string() << std::right << std::setw(6) << r.c_hat_g << "  " << std::left
                      << std::setw(16) << r.gamma_tw_label << r.monster_class << "\n";
    }
    return 0;
}

int cmd_series(const RunConfig& cfg, const std::string& which, bool reparam, const std::string& c_override) {
    const Rational order = order_of(cfg, 10);
    json arr = json::array();
    for (const auto& t : resolve(cfg.selector)) {
        QSeries s;
        if (which == "s") {
            s = T_s(t.pi, order);
        } else {
            const Rational c = c_override.empty() ? t.c : parse_rational(c_override);
            s = T_s_tw(t.pi, c, order);
        }
        if (reparam) s = s.scale_tau(2);
        if (cfg.format == "json") {
            arr.push_back({{"class", t.name}, {"which", which}, {"reparam", reparam}, {"series", series_to_json(s)}});
        } else if (cfg.format == "csv") {
            for (const auto& term : s.terms())
                std::cout << t.name << "," << which << "," << to_string(s.exponent(term)) << "," << to_string(term.second)
                          << "\n";
        } else {
            std::cout << t.name << ": " << pretty(s) << "\n";
        }
    }
    if (cfg.format == "json") std::cout << arr.dump(2) << "\n";
    return 0;
}

void print_report(const std::string& cls, const IdentityReport& r, const RunConfig& cfg, json& arr) {
    if (cfg.format == "json") {
        json j = report_to_json(r);
        j["class"] = cls;
        arr.push_back(j);
    } else if (cfg.format == "csv") {
        std::string constants;
        for (const auto& [k, v] : r.constants) constants += (constants.empty() ? "" : ";") + k + "=" + to_string(v);
        std::cout << csv_field(cls) << "," << to_string(r.checked_order) << "," << to_string(r.max_residual) << ","
                  << (r.pass ? "pass" : "FAIL") << "," << constants << "\n";
    } else {
        std::cout << std::left << std::setw(22) << cls << (r.pass ? "pass" : "FAIL") << "  order " << to_string(r.checked_order)
                  << "  max residual " << to_string(r.max_residual);
        for (const auto& [k, v] : r.constants) std::cout << "  " << k << "=" << to_string(v);
        std::cout << "\n";
    }
}

int cmd_verify_lemma(const RunConfig& cfg) {
    const Rational order = order_of(cfg, 25);
    const auto targets = resolve(cfg.selector);
    std::vector<IdentityReport> reps(targets.size());
    parallel_for(
        targets.size(), [&](std::size_t i) { reps[i] = solve_c_neg(targets[i].pi, targets[i].c, order, targets[i].name).second; },
        threads_of(cfg));
    json arr = json::array();
    std::size_t passed = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        print_report(targets[i].name, reps[i], cfg, arr);
        passed += reps[i].pass;
    }
    if (cfg.format == "json") std::cout << arr.dump(2) << "\n";
    return tally(passed, targets.size(), cfg);
}

int cmd_verify_single(const RunConfig& cfg, const IdentityReport& rep) {
    json arr = json::array();
    print_report(rep.name, rep, cfg, arr);
    if (cfg.format == "json") std::cout << arr[0].dump(2) << "\n";
    return rep.pass ? 0 : kFail;
}

int cmd_verify_normalization(const RunConfig& cfg) {
    const Rational order = order_of(cfg, 3);
    const auto targets = resolve(cfg.selector);
    json arr = json::array();
    std::size_t passed = 0, total = 0;
    for (const auto& t : targets) {
        for (const FrameShape& pi : {t.pi, t.pi.negate()}) {
            const QSeries s = T_s(pi, order);
            IdentityReport r;
            r.name = "constant term";
            r.checked_order = 1;
            r.max_residual = abs(s.coeff(0));
            r.pass = r.max_residual == 0;
            r.provenance = "exact";
            print_report(t.name + (pi == t.pi ? "" : " (-g)"), r, cfg, arr);
            passed += r.pass;
            ++total;
        }
    }
    if (cfg.format == "json") std::cout << arr.dump(2) << "\n";
    return tally(passed, total, cfg);
}

int cmd_oracle_fock(const RunConfig& cfg, const Rational& max_degree) {
    if (max_degree <= 0) throw UsageError("--max-degree must be positive");
    json arr = json::array();
    std::size_t passed = 0, total = 0;
    for (const auto& t : resolve(cfg.selector)) {
        const ModeSystem untw = ModeSystem::from_frame_shape(t.pi, Sector::Untwisted, max_degree);
        const ModeSystem tw = ModeSystem::from_frame_shape(t.pi, Sector::Twisted, max_degree);
        const CycSeries oracle_u = untwisted_supertrace(untw);
        const CycSeries formula_u = promote(t_tilde(t.pi, untw.order()));
        const CycSeries oracle_t = twisted_supertrace(tw, CycNumber(t.c));
        const CycSeries formula_t = promote(eta_quotient(t.pi, 1, tw.order()) * t.c);
        const bool ok_u = oracle_u == formula_u, ok_t = oracle_t == formula_t;
        passed += ok_u + ok_t;
        total += 2;
        if (cfg.format == "json") {
            arr.push_back({{"class", t.name},
                           {"max_degree", to_string(max_degree)},
                           {"untwisted", {{"oracle", cyc_series_to_json(oracle_u)}, {"formula", cyc_series_to_json(formula_u)}, {"match", ok_u}}},
                           {"twisted", {{"oracle", cyc_series_to_json(oracle_t)}, {"formula", cyc_series_to_json(formula_t)}, {"match", ok_t}}}});
            continue;
        }
        for (const auto& [sector, oracle, formula] :
             {std::tuple{"untwisted", &oracle_u, &formula_u}, std::tuple{"twisted", &oracle_t, &formula_t}}) {
            std::vector<Rational> expos;
            for (const auto& term : oracle->terms()) expos.push_back(oracle->exponent(term));
            for (const auto& term : formula->terms()) expos.push_back(formula->exponent(term));
            std::sort(expos.begin(), expos.end());
            expos.erase(std::unique(expos.begin(), expos.end()), expos.end());
            if (cfg.format == "csv") {
                for (const auto& e : expos)
                    std::cout << csv_field(t.name) << "," << sector << "," << to_string(e) << ","
                              << csv_field(coeff_string(oracle->coeff(e))) << ","
                              << csv_field(coeff_string(formula->coeff(e))) << ","
                              << csv_field(coeff_string(oracle->coeff(e) - formula->coeff(e))) << "\n";
                continue;
            }
            std::cout << t.name << " " << sector << " (exact below " << expo_text(oracle->order()) << ")\n";
            std::cout << "  " << std::left << std::setw(10) << "exponent" << std::setw(22) << "oracle" << std::setw(22)
                      << "formula" << "diff\n";
            for (const auto& e : expos)
                std::cout << "  " << std::setw(10) << to_string(e) << std::setw(22) << coeff_string(oracle->coeff(e))
                          << std::setw(22) << coeff_string(formula->coeff(e))
                          << coeff_string(oracle->coeff(e) - formula->coeff(e)) << "\n";
        }
    }
    if (cfg.format == "json") std::cout << arr.dump(2) << "\n";
    return tally(passed, total, cfg);
}

int cmd_oracle_spinor(const RunConfig& cfg) {
    const auto targets = resolve(cfg.selector);
    struct Row {
        CycNumber closed, oracle;
        int nu = 1;
        bool pass = false;
    };
    std::vector<Row> rows(targets.size());
    parallel_for(
        targets.size(),
        [&](std::size_t i) {
            const auto lambdas = pair_eigenvalues(targets[i].pi.eigenvalues());
            Row& r = rows[i];
            r.closed = spinor_supertrace_closed(lambdas);
            r.oracle = spinor_supertrace_oracle(lambdas);
            r.pass = r.closed == r.oracle;
            if (targets[i].rec) {
                r.nu = nu_sign_correction(*targets[i].rec);
                r.pass = r.pass && r.closed * CycNumber(r.nu) == CycNumber(targets[i].c);
            }
        },
        threads_of(cfg));
    json arr = json::array();
    std::size_t passed = 0;
    if (cfg.format == "csv") std::cout << "class,closed_form,subset_oracle,table,nu_sign,pass\n";
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const auto& t = targets[i];
        const Row& r = rows[i];
        passed += r.pass;
        const std::string table = t.rec ? std::to_string(t.rec->c_hat_g) : "";
        if (cfg.format == "json") {
            arr.push_back({{"class", t.name}, {"closed_form", coeff_string(r.closed)}, {"subset_oracle", coeff_string(r.oracle)},
                           {"table", table}, {"nu_sign", r.nu}, {"pass", r.pass}});
        } else if (cfg.format == "csv") {
            std::cout << csv_field(t.name) << "," << coeff_string(r.closed) << "," << coeff_string(r.oracle) << "," << table
                      << "," << r.nu << "," << (r.pass ? "pass" : "FAIL") << "\n";
        } else {
            std::cout << std::left << std::setw(22) << t.name << (r.pass ? "pass" : "FAIL") << "  closed " << coeff_string(r.closed)
                      << "  oracle " << coeff_string(r.oracle);
            if (t.rec) std::cout << "  table " << table << "  nu " << (r.nu > 0 ? "+1" : "-1");
            std::cout << "\n";
        }
    }
    if (cfg.format == "json") std::cout << arr.dump(2) << "\n";
    return tally(passed, targets.size(), cfg);
}

int cmd_golay_weights(const RunConfig& cfg) {
    const auto dist = golay_code().weight_distribution();
    const bool ok = dist[0] == 1 && dist[8] == 759 && dist[12] == 2576 && dist[16] == 759 && dist[24] == 1;
    if (cfg.format == "json") {
        json w = json::object();
        for (int i = 0; i <= 24; ++i)
            if (dist[i]) w[std::to_string(i)] = dist[i];
        std::cout << json{{"weights", w}, {"pass", ok}}.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "weight,count\n";
        for (int i = 0; i <= 24; ++i)
            if (dist[i]) std::cout << i << "," << dist[i] << "\n";
    } else {
        for (int i = 0; i <= 24; ++i)
            if (dist[i]) std::cout << "weight " << std::setw(2) << i << ": " << dist[i] << "\n";
        std::cout << (ok ? "pass" : "FAIL") << "\n";
    }
    return ok ? 0 : kFail;
}

int cmd_leech_shell(const RunConfig& cfg, std::int64_t max_norm) {
    if (max_norm < 1) throw UsageError("--norm must be positive");
    // theta series of the Leech lattice, for the shells this command can check
    const std::map<std::int64_t, std::int64_t> known = {{2, 0}, {4, 196560}, {6, 16773120}, {8, 398034000}};
    const auto start = std::chrono::steady_clock::now();
    const IntegerLattice lat = build_leech();
    const Integer det = lat.gram_determinant();
    const bool even = lat.is_even();
    const auto counts = shell_counts(lat, max_norm, threads_of(cfg));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = det == 1 && even;
    for (const auto& [n, c] : known) {
        if (n > max_norm) continue;
        const auto it = counts.find(n);
        ok = ok && (it == counts.end() ? 0 : it->second) == c;
    }
    if (cfg.format == "json") {
        json shells = json::object();
        for (const auto& [n, c] : counts) shells[std::to_string(n)] = c;
        std::cout << json{{"gram_determinant", det.get_str()}, {"even", even}, {"shells", shells}, {"seconds", secs}, {"pass", ok}}
                         .dump(2)
                  << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "norm,count\n";
        for (const auto& [n, c] : counts) std::cout << n << "," << c << "\n";
    } else {
        std::cout << "gram determinant " << det.get_str() << ", " << (even ? "even" : "odd") << "\n";
        for (std::int64_t n = 1; n <= max_norm; ++n) {
            const auto it = counts.find(n);
            std::cout << "norm " << n << ": " << (it == counts.end() ? 0 : it->second) << "\n";
        }
        std::cout << (ok ? "pass" : "FAIL") << " (" << std::fixed << std::setprecision(2) << secs << " s)\n";
    }
    return ok ? 0 : kFail;
}

int cmd_frame_check(const RunConfig& cfg) {
    const auto rep = check_frame(build_leech(), coordinate_frame());
    if (cfg.format == "json") {
        std::cout << json{{"in_lattice", rep.in_lattice}, {"norms", rep.norms}, {"orthogonal", rep.orthogonal},
                          {"congruent", rep.congruent}, {"pass", rep.pass()}}
                         .dump(2)
                  << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "in_lattice,norms,orthogonal,congruent,pass\n"
                  << rep.in_lattice << "," << rep.norms << "," << rep.orthogonal << "," << rep.congruent << "," << rep.pass() << "\n";
    } else {
        std::cout << "in lattice " << rep.in_lattice << ", norm 8 " << rep.norms << ", orthogonal " << rep.orthogonal
                  << ", congruent mod 2L " << rep.congruent << "\n"
                  << (rep.pass() ? "pass" : "FAIL") << "\n";
    }
    return rep.pass() ? 0 : kFail;
}

int cmd_invariance(const RunConfig& cfg, std::size_t samples, std::size_t points, const std::string& label_override) {
    if (cfg.tol <= 0) throw UsageError("--tol must be positive");
    const Rational order = order_of(cfg, 40);
    const auto targets = resolve(cfg.selector);
    std::vector<InvarianceReport> reps(targets.size());
    std::vector<GroupLabel> labels;
    for (const auto& t : targets) {
        const std::string text = label_override.empty() ? t.label : label_override;
        if (text.empty()) throw UsageError("no group label for " + t.name + "; pass --label");
        labels.push_back(parse_label(text));
    }
    parallel_for(
        targets.size(),
        [&](std::size_t i) {
            const auto& t = targets[i];
            const EtaQuotientFunction f{t.pi, Complex(t.c.get_d()), Complex(-t.pi.chi())};
            reps[i] = invariance_check(T_s_tw(t.pi, t.c, order), f, labels[i], samples, points, cfg.tol, cfg.seed);
        },
        threads_of(cfg));
    json arr = json::array();
    std::size_t passed = 0;
    if (cfg.format == "csv") std::cout << "class,label,matrices,points,max_dev,series_dev,pass,seed\n";
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const auto& r = reps[i];
        passed += r.pass;
        if (cfg.format == "json") {
            arr.push_back(invariance_to_json(targets[i].name, r));
        } else if (cfg.format == "csv") {
            std::cout << csv_field(targets[i].name) << "," << csv_field(r.label) << "," << r.matrices.size() << "," << r.points
                      << "," << r.max_dev << "," << r.series_dev << "," << (r.pass ? "pass" : "FAIL") << "," << r.seed << "\n";
        } else {
            std::cout << std::left << std::setw(22) << targets[i].name << (r.pass ? "pass" : "FAIL") << "  " << std::setw(16)
                      << r.label << " max_dev " << std::scientific << std::setprecision(3) << r.max_dev << "  series_dev "
                      << r.series_dev << std::defaultfloat << "\n";
        }
    }
    if (cfg.format == "json") std::cout << arr.dump(2) << "\n";
    return tally(passed, targets.size(), cfg);
}

int cmd_n1(const RunConfig& cfg, int samples, int states) {
    if (samples < 1 || states < 0) throw UsageError("--samples must be positive and --states non-negative");
    const auto rep = n1_checks(samples, states, cfg.seed);
    if (cfg.format == "json") {
        std::cout << json{{"idempotent_vacuum", rep.idempotent_vacuum},
                          {"idempotent_random_states", rep.idempotent_random_states},
                          {"random_states", rep.random_states},
                          {"invariant", rep.invariant},
                          {"matches_full_sum", rep.matches_full_sum},
                          {"orthogonality_samples", rep.orthogonality_samples},
                          {"orthogonality_failures", rep.orthogonality_failures},
                          {"tau_norm", cyc_to_json(rep.tau_norm)},
                          {"alpha_squared", cyc_to_json(rep.alpha_squared)},
                          {"group_order", rep.closure.group_order},
                          {"closed", rep.closure.closed},
                          {"squares_trivial", rep.closure.squares_trivial},
                          {"seed", rep.seed},
                          {"pass", rep.pass()}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "t v_tw idempotent: " << rep.idempotent_vacuum << "\n"
                  << "random states idempotent: " << rep.idempotent_random_states << "/" << rep.random_states << "\n"
                  << "invariant under lifted generators: " << rep.invariant << "\n"
                  << "product form matches 4096-term sum: " << rep.matches_full_sum << "\n"
                  << "orthogonality: " << rep.orthogonality_samples - rep.orthogonality_failures << "/"
                  << rep.orthogonality_samples << "\n"
                  << "<t v_tw, t v_tw> = " << coeff_string(rep.tau_norm) << "\n"
                  << "lifted group order " << rep.closure.group_order << ", closed " << rep.closure.closed
                  << ", squares trivial " << rep.closure.squares_trivial << "\n"
                  << (rep.pass() ? "pass" : "FAIL") << "\n";
    }
    return rep.pass() ? 0 : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks for the supersymmetric moonshine trace functions"};
    app.require_subcommand(1);
    app.fallthrough();  // global options are also accepted after the subcommand
    RunConfig cfg;
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--threads", cfg.threads, "Worker threads (default: MOONSHINE_THREADS or all cores)");

    auto add_order = [&](CLI::App* sub) { sub->add_option("--order", cfg.order_text, "Truncation order (rational)"); };

    std::string which = "s", c_override;
    bool reparam = false;
    auto* table = app.add_subcommand("table", "Print the embedded class table");
    auto* series = app.add_subcommand("series", "q-expansion of T^s_g or T^s_g,tw");
    series->add_option("--class", cfg.selector, "Class name or Frame shape")->required();
    series->add_option("--which", which, "s or tw")->check(CLI::IsMember({"s", "tw"}));
    series->add_option("--c", c_override, "Override the twisted-sector constant");
    series->add_flag("--reparam", reparam, "Substitute q -> q^2");
    add_order(series);

    auto* verify = app.add_subcommand("verify", "Exact identity checks");
    verify->require_subcommand(1);
    auto* v_lemma = verify->add_subcommand("lemma", "Solve for the partner constant and check the five-term identity");
    auto* v_delta = verify->add_subcommand("delta", "Delta-function identity");
    auto* v_hecke = verify->add_subcommand("hecke", "Hecke operator fit");
    auto* v_norm = verify->add_subcommand("normalization", "Vanishing constant terms");
    std::string coeff_text = "2048";
    v_lemma->add_option("--class", cfg.selector, "Class name, 'all', or a Frame shape");
    v_norm->add_option("--class", cfg.selector, "Class name, 'all', or a Frame shape");
    v_delta->add_option("--coefficient", coeff_text, "Coefficient of D(2t)/D(t); other values are negative controls");
    for (auto* s : {v_lemma, v_delta, v_hecke, v_norm}) add_order(s);

    auto* oracle = app.add_subcommand("oracle", "Brute-force oracles");
    oracle->require_subcommand(1);
    auto* o_fock = oracle->add_subcommand("fock", "Fock-space super traces against the eta formulas");
    std::string max_degree_text = "6";
    o_fock->add_option("--class", cfg.selector, "Class name, 'all', or a Frame shape")->required();
    o_fock->add_option("--max-degree", max_degree_text, "Largest mode energy");
    auto* o_spinor = oracle->add_subcommand("spinor", "Spinor traces: closed form, 4096-subset sum, table");
    o_spinor->add_option("--class", cfg.selector, "Class name, 'all', or a Frame shape");

    auto* lattice = app.add_subcommand("lattice", "Golay code and Leech lattice");
    lattice->require_subcommand(1);
    auto* l_golay = lattice->add_subcommand("golay-weights", "Weight distribution of the Golay code");
    auto* l_shell = lattice->add_subcommand("leech-shell", "Count Leech vectors by norm");
    std::int64_t max_norm = 4;
    l_shell->add_option("--norm", max_norm, "Largest norm to enumerate");
    auto* l_frame = lattice->add_subcommand("frame-check", "Check the coordinate frame");

    auto* inv = app.add_subcommand("invariance", "Numeric invariance of T^s_g,tw under its group");
    std::size_t samples = 12, points = 20;
    std::string label_override;
    inv->add_option("--class", cfg.selector, "Class name, 'all', or a Frame shape");
    inv->add_option("--samples", samples, "Group elements per class");
    inv->add_option("--points", points, "Sample points per class");
    inv->add_option("--tol", cfg.tol, "Tolerance");
    inv->add_option("--seed", cfg.seed, "PRNG seed");
    inv->add_option("--label", label_override, "Group label to test against instead of the table's");
    add_order(inv);

    auto* n1 = app.add_subcommand("n1", "Checks on the spinor module CM");
    n1->require_subcommand(1);
    auto* n1_check = n1->add_subcommand("check", "Idempotence, orthogonality, norm and group closure");
    int orth_samples = 240, states = 10;
    n1_check->add_option("--samples", orth_samples, "Random subsets for the orthogonality check");
    n1_check->add_option("--states", states, "Random states for the idempotence check");
    n1_check->add_option("--seed", cfg.seed, "PRNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*table) return cmd_table(cfg);
        if (*series) return cmd_series(cfg, which, reparam, c_override);
        if (*v_lemma) return cmd_verify_lemma(cfg);
        if (*v_delta) {
            Rational coeff;
            try {
                coeff = parse_rational(coeff_text);
            } catch (const Error&) {
                throw UsageError("bad --coefficient '" + coeff_text + "'");
            }
            return cmd_verify_single(cfg, verify_delta_identity(order_of(cfg, 50), coeff));
        }
        if (*v_hecke) {
            const auto h = verify_hecke(order_of(cfg, 40));
            return cmd_verify_single(cfg, h.report);
        }
        if (*v_norm) return cmd_verify_normalization(cfg);
        if (*o_fock) {
            Rational d;
            try {
                d = parse_rational(max_degree_text);
            } catch (const Error&) {
                throw UsageError("bad --max-degree '" + max_degree_text + "'");
            }
            return cmd_oracle_fock(cfg, d);
        }
        if (*o_spinor) return cmd_oracle_spinor(cfg);
        if (*l_golay) return cmd_golay_weights(cfg);
        if (*l_shell) return cmd_leech_shell(cfg, max_norm);
        if (*l_frame) return cmd_frame_check(cfg);
        if (*inv) return cmd_invariance(cfg, samples, points, label_override);
        if (*n1_check) return cmd_n1(cfg, orth_samples, states);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const NotFoundError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
