#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "moonshine/cyclotomic.hpp"
#include "moonshine/error.hpp"
#include "moonshine/frameshape.hpp"
#include "moonshine/qseries.hpp"

namespace moonshine {

enum class Sector { Untwisted, Twisted };

/// Fermionic modes of one sector: 24 eigenvalues, each carrying modes of energy
/// n+1/2 (untwisted, n >= 0) or n (twisted, n >= 1) up to max_degree.
struct ModeSystem {
    std::vector<RootOfUnity> eigenvalues;
    Sector sector = Sector::Untwisted;
    Rational max_degree = 6;

    ModeSystem(std::vector<RootOfUnity> eig, Sector s, Rational d)
        : eigenvalues(std::move(eig)), sector(s), max_degree(std::move(d)) {
        if (eigenvalues.size() != 24)
            throw ValidationError("mode system needs 24 eigenvalues, got " + std::to_string(eigenvalues.size()));
        if (max_degree <= 0) throw ValidationError("max_degree must be positive");
    }

    static ModeSystem from_frame_shape(const FrameShape& pi, Sector s, const Rational& d) {
        return ModeSystem(pi.eigenvalues(), s, d);
    }

    /// lcm of the eigenvalue orders.
    int level() const {
        int l = 1;
        for (const auto& r : eigenvalues) l = std::lcm(l, static_cast<int>(r.order));
        return l;
    }

    // Energies are counted in units of 1/2 (untwisted) or 1 (twisted).
    std::int64_t unit_den() const { return sector == Sector::Untwisted ? 2 : 1; }
    // Allowed mode energies in units: odd (untwisted) or any positive (twisted).
    std::int64_t first_unit() const { return 1; }
    std::int64_t unit_step() const { return sector == Sector::Untwisted ? 2 : 1; }
    std::int64_t max_units() const { return floor_int(max_degree * unit_den()); }
    Rational prefactor() const { return sector == Sector::Untwisted ? make_rational(-1, 2) : Rational(1); }

    /// Every state with energy below this is produced exactly by the modes up to max_degree.
    std::int64_t exact_units() const {
        if (sector == Sector::Untwisted) {
            std::int64_t last = max_units();
            if (last % 2 == 0) --last;
            return last + 2;
        }
        return max_units() + 1;
    }
    Rational order() const { return prefactor() + make_rational(exact_units(), unit_den()); }
};

namespace detail {

inline CycSeries unit_series(const ModeSystem& ms, const std::vector<CycNumber>& dense, const CycNumber& scale) {
    std::vector<CycSeries::Term> terms;
    const std::int64_t shift = ms.sector == Sector::Untwisted ? -1 : 1;  // prefactor in units
    for (std::size_t t = 0; t < dense.size(); ++t)
        if (!dense[t].is_zero()) terms.emplace_back(static_cast<std::int64_t>(t) + shift, dense[t] * scale);
    return CycSeries::from_terms(ms.unit_den(), std::move(terms), ms.order());
}

inline std::vector<CycNumber> mode_product(const ModeSystem& ms) {
    const int level = ms.level();
    const auto len = static_cast<std::size_t>(ms.exact_units());
    std::vector<CycNumber> a(len, CycNumber(0));
    a[0] = CycNumber(1).raised_to(level);
    for (const auto& ev : ms.eigenvalues) {
        const CycNumber eps = ev.value().raised_to(level);
        for (std::int64_t r = ms.first_unit(); r <= ms.max_units(); r += ms.unit_step()) {
            // multiply by (1 - eps q^r), high degrees first
            for (auto t = static_cast<std::int64_t>(len) - 1; t >= r; --t)
                if (!a[t - r].is_zero()) a[t] = a[t] - eps * a[t - r];
        }
    }
    return a;
}

}  // namespace detail

/// q^{-1/2} prod over modes (1 - eps q^r): the super trace on the untwisted Fock space.
inline CycSeries untwisted_supertrace(const ModeSystem& ms) {
    if (ms.sector != Sector::Untwisted) throw ValidationError("untwisted_supertrace needs an untwisted mode system");
    return detail::unit_series(ms, detail::mode_product(ms), CycNumber(1));
}

/// c q prod over modes (1 - eps q^n): the super trace on the twisted Fock space times the
/// zero-mode factor c.
inline CycSeries twisted_supertrace(const ModeSystem& ms, const CycNumber& c_value) {
    if (ms.sector != Sector::Twisted) throw ValidationError("twisted_supertrace needs a twisted mode system");
    return detail::unit_series(ms, detail::mode_product(ms), c_value);
}

/// Signed state counts by explicit enumeration of mode subsets with total energy at most
/// max_degree: result[energy units][eigenvalue exponent mod level].
struct SubsetCounts {
    int level = 1;
    std::vector<std::map<std::int64_t, std::int64_t>> by_energy;
    std::uint64_t states = 0;
};

inline SubsetCounts enumerate_subsets(const ModeSystem& ms) {
    SubsetCounts out;
    out.level = ms.level();
    const std::int64_t cap = ms.max_units();
    out.by_energy.resize(static_cast<std::size_t>(cap + 1));
    struct Mode {
        std::int64_t energy;
        std::int64_t expo;
    };
    std::vector<Mode> modes;
    for (std::int64_t r = ms.first_unit(); r <= cap; r += ms.unit_step())
        for (const auto& ev : ms.eigenvalues)
            modes.push_back({r, ev.exponent * (out.level / static_cast<std::int64_t>(ev.order))});

    auto dfs = [&](auto&& self, std::size_t start, std::int64_t energy, std::int64_t expo, int sign) -> void {
        out.by_energy[static_cast<std::size_t>(energy)][expo] += sign;
        ++out.states;
        for (std::size_t i = start; i < modes.size(); ++i) {
            // modes are sorted by energy, so nothing later fits either
            if (energy + modes[i].energy > cap) break;
            self(self, i + 1, energy + modes[i].energy, (expo + modes[i].expo) % out.level, -sign);
        }
    };
    dfs(dfs, 0, 0, 0, 1);
    return out;
}

/// The enumeration repackaged as a series, comparable with the mode product.
inline CycSeries enumerated_supertrace(const ModeSystem& ms, const CycNumber& c_value = CycNumber(1)) {
    const SubsetCounts counts = enumerate_subsets(ms);
    const std::int64_t cap = ms.max_units();
    std::vector<CycNumber> dense(static_cast<std::size_t>(ms.exact_units()), CycNumber(0));
    for (std::int64_t e = 0; e <= cap; ++e)
        for (const auto& [k, n] : counts.by_energy[static_cast<std::size_t>(e)])
            if (n != 0) dense[static_cast<std::size_t>(e)] += CycNumber::zeta(counts.level, k) * CycNumber(static_cast<long>(n));
    // the enumeration stops at max_degree, which can fall short of exact_units
    auto s = detail::unit_series(ms, dense, c_value);
    return s.truncated(ms.prefactor() + make_rational(cap + 1, ms.unit_den()));
}

/// Untwisted and twisted super traces of one lifted element.
struct SectorTraces {
    CycSeries untwisted;
    CycSeries twisted;
};

inline SectorTraces sector_traces(const FrameShape& pi, const CycNumber& c_value, const Rational& max_degree) {
    return {untwisted_supertrace(ModeSystem::from_frame_shape(pi, Sector::Untwisted, max_degree)),
            twisted_supertrace(ModeSystem::from_frame_shape(pi, Sector::Twisted, max_degree), c_value)};
}

/// Graded pieces: S = A^0 + A^1_tw, STw = A^1 + A^0_tw, and F, FTw with the twisted parities swapped.
enum class SupertraceKind { S, STw, F, FTw };

/// Projects onto the pieces with 1/2 (tr(g) +- tr(zg)) in each sector; g is the element,
/// neg its product with the central element (eigenvalues negated, partner constant).
inline CycSeries assemble_supertrace(SupertraceKind kind, const SectorTraces& g, const SectorTraces& neg) {
    const bool untw_even = kind == SupertraceKind::S || kind == SupertraceKind::F;
    const bool tw_even = kind == SupertraceKind::STw || kind == SupertraceKind::F;
    const CycNumber half(make_rational(1, 2));
    const CycSeries untw = untw_even ? g.untwisted + neg.untwisted : g.untwisted - neg.untwisted;
    const CycSeries tw = tw_even ? g.twisted + neg.twisted : g.twisted - neg.twisted;
    return (untw + tw) * half;
}

}  // namespace moonshine
