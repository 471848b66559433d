#include "emit.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace qugauge::cli {

namespace {

// 17 significant digits: enough to reproduce any double bit for bit.
std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

nlohmann::ordered_json to_json_value(const Value& v) {
    return std::visit([](const auto& x) { return nlohmann::ordered_json(x); }, v);
}

}  // namespace

std::string format_value(const Value& v) {
    struct Visitor {
        std::string operator()(double x) const { return fmt17(x); }
        std::string operator()(long long x) const { return std::to_string(x); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, v);
}

std::string emit_report(const Report& r, const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        for (const auto& [key, value] : r.items) j[key] = to_json_value(value);
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    for (std::size_t i = 0; i < r.items.size(); ++i) {
        out << (i ? "," : "") << r.items[i].first;
    }
    out << "\n";
    for (std::size_t i = 0; i < r.items.size(); ++i) {
        out << (i ? "," : "") << format_value(r.items[i].second);
    }
    out << "\n";
    return out.str();
}

std::string emit_table(const Table& t, const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        for (const auto& [key, value] : t.preamble) j[key] = to_json_value(value);
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (std::size_t c = 0; c < t.columns.size(); ++c) {
                obj[t.columns[c]] = to_json_value(row[c]);
            }
            rows.push_back(std::move(obj));
        }
        j["rows"] = std::move(rows);
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    for (const auto& [key, value] : t.preamble) {
        out << "# " << key << "=" << format_value(value) << "\n";
    }
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        out << (c ? "," : "") << t.columns[c];
    }
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << format_value(row[c]);
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace qugauge::cli
