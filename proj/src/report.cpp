// Copyright 2026 The rqc-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "rqc/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "rqc/error.hpp"

namespace rqc::report {

using Json = nlohmann::ordered_json;

RationalValue rational_value(const Rational& r) { return {to_string(r), to_double(r)}; }

namespace {

const Value* find_field(const std::vector<Field>& fields, std::string_view key) {
    for (const auto& f : fields)
        if (f.key == key) return &f.value;
    return nullptr;
}

std::string quote_csv(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

Json value_to_json(const Value& v) {
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
                if (std::isfinite(x)) return x;
                return Json{{"nonfinite", std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf")}};
            } else if constexpr (std::is_same_v<T, RationalValue>) {
                return Json{{"rational", x.text}, {"float", x.value}};
            } else {
                return x;
            }
        },
        v);
}

Value value_from_json(const Json& j) {
    switch (j.type()) {
        case Json::value_t::null:
            return std::monostate{};
        case Json::value_t::boolean:
            return j.get<bool>();
        case Json::value_t::number_integer:
            return j.get<std::int64_t>();
        case Json::value_t::number_unsigned: {
            const auto u = j.get<std::uint64_t>();
            if (u > static_cast<std::uint64_t>(INT64_MAX)) throw InvalidArgumentError("integer out of range");
            return static_cast<std::int64_t>(u);
        }
        case Json::value_t::number_float:
            return j.get<double>();
        case Json::value_t::string:
            return j.get<std::string>();
        case Json::value_t::object:
            if (j.contains("rational")) return RationalValue{j.at("rational").get<std::string>(), j.at("float").get<double>()};
            if (j.contains("nonfinite")) {
                const auto s = j.at("nonfinite").get<std::string>();
                if (s == "nan") return std::nan("");
                if (s == "inf") return HUGE_VAL;
                if (s == "-inf") return -HUGE_VAL;
            }
            [[fallthrough]];
        default:
            throw InvalidArgumentError("unrecognized report value " + j.dump());
    }
}

Json fields_to_json(const std::vector<Field>& fields) {
    Json out = Json::object();
    for (const auto& f : fields) out[f.key] = value_to_json(f.value);
    return out;
}

std::vector<Field> fields_from_json(const Json& j) {
    std::vector<Field> out;
    for (const auto& [k, v] : j.items()) out.push_back({k, value_from_json(v)});
    return out;
}

}  // namespace

const Value* Report::find_summary(std::string_view key) const { return find_field(summary, key); }
const Value* Report::find_param(std::string_view key) const { return find_field(params, key); }

void Report::add_row(std::vector<Value> row) {
    if (row.size() != columns.size())
        throw DomainError("row has " + std::to_string(row.size()) + " values for " + std::to_string(columns.size()) +
                          " columns");
    rows.push_back(std::move(row));
}

Format parse_format(std::string_view name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw InvalidArgumentError("unknown format '" + std::string(name) + "' (expected csv or json)");
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_value(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, bool>) {
                return x ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                char buf[32];
                const auto res = std::to_chars(buf, buf + sizeof buf, x);
                return std::string(buf, res.ptr);
            } else if constexpr (std::is_same_v<T, double>) {
                return format_double(x);
            } else if constexpr (std::is_same_v<T, RationalValue>) {
                return x.text;
            } else {
                return x;
            }
        },
        v);
}

std::string to_csv(const Report& report) {
    const std::size_t nc = report.columns.size();
    std::vector<bool> rational(nc, false);
    for (const auto& row : report.rows)
        for (std::size_t c = 0; c < nc && c < row.size(); ++c)
            if (std::holds_alternative<RationalValue>(row[c])) rational[c] = true;

    std::string out;
    for (std::size_t c = 0; c < nc; ++c) {
        if (c) out += ',';
        out += quote_csv(report.columns[c]);
        if (rational[c]) out += ',' + quote_csv(report.columns[c] + "_float");
    }
    out += '\n';
    for (const auto& row : report.rows) {
        for (std::size_t c = 0; c < nc; ++c) {
            if (c) out += ',';
            out += quote_csv(format_value(row[c]));
            if (rational[c]) {
                out += ',';
                if (const auto* r = std::get_if<RationalValue>(&row[c])) out += format_double(r->value);
            }
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Report& report) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = report.kind;
    j["params"] = fields_to_json(report.params);
    j["summary"] = fields_to_json(report.summary);
    j["columns"] = report.columns;
    Json rows = Json::array();
    for (const auto& row : report.rows) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(value_to_json(v));
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string summary_json(const Report& report) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = report.kind;
    j["params"] = fields_to_json(report.params);
    j["summary"] = fields_to_json(report.summary);
    return j.dump(2) + "\n";
}

Report from_json(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidArgumentError(std::string("malformed report JSON: ") + e.what());
    }
    try {
        if (j.at("schema").get<std::string>() != kSchemaVersion)
            throw InvalidArgumentError("unsupported report schema " + j.at("schema").dump());
        Report r;
        r.kind = j.at("kind").get<std::string>();
        r.params = fields_from_json(j.at("params"));
        r.summary = fields_from_json(j.at("summary"));
        r.columns = j.at("columns").get<std::vector<std::string>>();
        for (const auto& row : j.at("rows")) {
            std::vector<Value> values;
            for (const auto& v : row) values.push_back(value_from_json(v));
            r.add_row(std::move(values));
        }
        return r;
    } catch (const Json::exception& e) {
        throw InvalidArgumentError(std::string("malformed report JSON: ") + e.what());
    }
}

std::string render(const Report& report, Format format) {
    return format == Format::Csv ? to_csv(report) : to_json(report);
}

void write_text(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw IoError("failed writing to standard output");
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << text;
    f.close();
    if (!f) throw IoError("failed writing '" + path + "'");
}

void emit(const Report& report, Format format, const std::string& path) { write_text(render(report, format), path); }

}  // namespace rqc::report
