#pragma once
//
// Self-describing reports: '#key=value' header lines followed by a CSV body,
// or a JSON object {config, rows, verdict, max_err}. Floats are written with
// 17 significant digits so output is byte-reproducible.
//

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bgkit/errors.hpp"

namespace bgkit {

inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

using Cell = std::variant<double, long long, std::string>;

struct Report {
    std::vector<std::pair<std::string, std::string>> config;  // kept in insertion order
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::string verdict;
    double max_err = 0.0;

    void set(const std::string& key, const std::string& value) {
        for (auto& kv : config)
            if (kv.first == key) {
                kv.second = value;
                return;
            }
        config.emplace_back(key, value);
    }
    void set(const std::string& key, double value) { set(key, format_double(value)); }
    void set(const std::string& key, int value) { set(key, std::to_string(value)); }

    void add_row(std::vector<Cell> row) {
        if (row.size() != columns.size()) throw DomainError("Report: row width does not match columns");
        rows.push_back(std::move(row));
    }
};

inline std::string cell_text(const Cell& c) {
    if (auto d = std::get_if<double>(&c)) return format_double(*d);
    if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
}

inline std::string to_csv(const Report& rep) {
    std::string out;
    for (const auto& [k, v] : rep.config) out += "#" + k + "=" + v + "\n";
    out += "#verdict=" + rep.verdict + "\n";
    out += "#max_err=" + format_double(rep.max_err) + "\n";
    for (std::size_t i = 0; i < rep.columns.size(); ++i) out += (i ? "," : "") + rep.columns[i];
    out += "\n";
    for (const auto& row : rep.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
        out += "\n";
    }
    return out;
}

namespace detail {
inline nlohmann::ordered_json json_number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}
}  // namespace detail

inline std::string to_json(const Report& rep) {
    nlohmann::ordered_json j;
    j["config"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : rep.config) j["config"][k] = v;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : rep.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& c = row[i];
            if (auto d = std::get_if<double>(&c)) r[rep.columns[i]] = detail::json_number(*d);
            else if (auto n = std::get_if<long long>(&c)) r[rep.columns[i]] = *n;
            else r[rep.columns[i]] = std::get<std::string>(c);
        }
        j["rows"].push_back(std::move(r));
    }
    j["verdict"] = rep.verdict;
    j["max_err"] = detail::json_number(rep.max_err);
    return j.dump(2) + "\n";
}

// "start:stop:step" -> start + i*step for i = 0 .. floor((stop-start)/step + 1/2).
inline std::vector<double> parse_grid(const std::string& spec) {
    const auto c1 = spec.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : spec.find(':', c1 + 1);
    if (c2 == std::string::npos || spec.find(':', c2 + 1) != std::string::npos)
        throw DomainError("grid must have the form start:stop:step, got '" + spec + "'");
    double v[3];
    const std::string parts[3] = {spec.substr(0, c1), spec.substr(c1 + 1, c2 - c1 - 1), spec.substr(c2 + 1)};
    for (int i = 0; i < 3; ++i) {
        std::size_t used = 0;
        try {
            v[i] = std::stod(parts[i], &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != parts[i].size() || !std::isfinite(v[i]))
            throw DomainError("grid: cannot parse number '" + parts[i] + "'");
    }
    const double start = v[0], stop = v[1], step = v[2];
    if (!(step > 0.0)) throw DomainError("grid: step must be > 0");
    if (!(stop >= start)) throw DomainError("grid: stop must be >= start");
    const long long count = static_cast<long long>(std::floor((stop - start) / step + 0.5)) + 1;
    if (count > 10'000'000) throw DomainError("grid: too many points");
    std::vector<double> g(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = start + static_cast<double>(i) * step;
    return g;
}

}  // namespace bgkit
