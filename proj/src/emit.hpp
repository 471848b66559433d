// emit.hpp — deterministic CSV/JSON rendering of reports and tables
// Reports are flat ordered key/value sets; tables add uniform columns and an
// optional scalar preamble. CSV uses '.' decimal, 17 significant digits,
// comma delimiter, one header row; JSON preserves insertion order. The same
// config must always yield byte-identical output, so nothing here consults
// clocks, locales, or the environment.

#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qugauge::cli {

// One emitted cell: a double, an integer count, a flag, or a short label
// (e.g. "pass", "undefined").
using Value = std::variant<double, long long, bool, std::string>;

struct Report {
    std::vector<std::pair<std::string, Value>> items;

    void add(std::string key, Value v) { items.emplace_back(std::move(key), std::move(v)); }
};

struct Table {
    std::vector<std::pair<std::string, Value>> preamble;
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;

    void add_meta(std::string key, Value v) {
        preamble.emplace_back(std::move(key), std::move(v));
    }
};

// Scalar rendering shared by both formats' CSV cells; doubles round-trip.
std::string format_value(const Value& v);

// format is "csv" or "json" (validated upstream by the config parser).
std::string emit_report(const Report& r, const std::string& format);
std::string emit_table(const Table& t, const std::string& format);

}  // namespace qugauge::cli
