#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "moonshine/error.hpp"
#include "moonshine/frameshape.hpp"
#include "moonshine/table2_data.hpp"

namespace moonshine {

/// One fixed-point-free Conway class together with its twisted-sector data.
struct ConjugacyClassRecord {
    std::string co0_name;
    std::string co1_name;
    FrameShape frame_shape;
    long c_hat_g = 0;            // tabulated super trace on CM
    std::string gamma_tw_label;  // e.g. "12|2+6"
    std::string monster_class;
};

namespace detail {

// Splits one CSV line; double quotes protect commas, "" is a literal quote.
inline std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_offset) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    if (quoted) throw ParseError("unterminated quote in CSV", line_offset + line.size());
    return fields;
}

inline std::size_t edit_distance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            const bool same = std::toupper(static_cast<unsigned char>(a[i - 1])) ==
                              std::toupper(static_cast<unsigned char>(b[j - 1]));
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (same ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

}  // namespace detail

/// Parses the registry CSV: header co0,co1,frame_shape,c_hat_g,label,monster.
inline std::vector<ConjugacyClassRecord> parse_registry_csv(std::string_view text) {
    static constexpr std::string_view kHeader = "co0,co1,frame_shape,c_hat_g,label,monster";
    std::vector<ConjugacyClassRecord> out;
    std::size_t pos = 0;
    bool header = true;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        const std::size_t offset = pos;
        pos = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (header) {
            if (line != kHeader) throw ParseError("unexpected registry header '" + std::string(line) + "'", offset);
            header = false;
            continue;
        }
        const auto f = detail::split_csv_line(line, offset);
        if (f.size() != 6) throw ParseError("expected 6 fields, got " + std::to_string(f.size()), offset);
        ConjugacyClassRecord rec;
        rec.co0_name = f[0];
        rec.co1_name = f[1];
        try {
            rec.frame_shape = FrameShape::parse(f[2]);
        } catch (const ParseError& e) {
            throw ParseError("row " + f[0] + ": " + e.what(), offset);
        } catch (const ValidationError& e) {
            throw ValidationError("row " + f[0] + ": " + e.what());
        }
        try {
            std::size_t used = 0;
            rec.c_hat_g = std::stol(f[3], &used);
            if (used != f[3].size()) throw std::invalid_argument(f[3]);
        } catch (const std::logic_error&) {
            throw ParseError("row " + f[0] + ": bad c_hat_g '" + f[3] + "'", offset);
        }
        rec.gamma_tw_label = f[4];
        rec.monster_class = f[5];
        out.push_back(std::move(rec));
    }
    if (header) throw ParseError("registry CSV is empty", 0);
    return out;
}

/// The embedded table of fixed-point-free classes. Built once.
inline const std::vector<ConjugacyClassRecord>& registry() {
    static const std::vector<ConjugacyClassRecord> rows = parse_registry_csv(detail::kTable2Csv);
    return rows;
}

inline const ConjugacyClassRecord& lookup(std::string_view name) {
    const auto& rows = registry();
    for (const auto& r : rows)
        if (r.co0_name == name) return r;
    std::string near;
    for (const auto& r : rows) {
        if (detail::edit_distance(r.co0_name, name) <= 1) {
            if (!near.empty()) near += ", ";
            near += r.co0_name;
        }
    }
    std::string msg = "unknown class '" + std::string(name) + "'";
    if (!near.empty()) msg += "; did you mean " + near + "?";
    throw NotFoundError(msg);
}

}  // namespace moonshine
