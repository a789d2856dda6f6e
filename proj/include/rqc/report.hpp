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


#pragma once

// Tabular reports with a summary block, serialized to CSV or JSON.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rqc/rational.hpp"

namespace rqc::report {

inline constexpr std::string_view kSchemaVersion = "rqc-sim/1";

struct RationalValue {
    std::string text;  // "p/q"
    double value = 0.0;

    bool operator==(const RationalValue&) const = default;
};

RationalValue rational_value(const Rational& r);

using Value = std::variant<std::monostate, bool, std::int64_t, double, std::string, RationalValue>;

struct Field {
    std::string key;
    Value value;

    bool operator==(const Field&) const = default;
};

struct Report {
    std::string kind;
    std::vector<Field> params;
    std::vector<Field> summary;
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;

    bool operator==(const Report&) const = default;

    const Value* find_summary(std::string_view key) const;
    const Value* find_param(std::string_view key) const;
    /// Throws DomainError if the row width differs from columns.
    void add_row(std::vector<Value> row);
};

enum class Format { Csv, Json };

/// "csv" or "json"; InvalidArgumentError otherwise.
Format parse_format(std::string_view name);

/// Shortest round-trip decimal with '.', independent of the locale.
std::string format_double(double x);
std::string format_value(const Value& v);

/// Rows only. Columns holding rationals gain a "<name>_float" companion.
/// An empty report yields the header line alone.
std::string to_csv(const Report& report);
/// Single JSON object: schema, kind, params, summary, columns, rows.
std::string to_json(const Report& report);
/// The params and summary blocks alone, as JSON.
std::string summary_json(const Report& report);
/// Inverse of to_json. Throws InvalidArgumentError on malformed input.
Report from_json(std::string_view text);

std::string render(const Report& report, Format format);

/// Writes text to path; "-" or "" is standard output. IoError on failure.
void write_text(const std::string& text, const std::string& path);
void emit(const Report& report, Format format, const std::string& path);

}  // namespace rqc::report
