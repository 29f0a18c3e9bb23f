/*
 * Copyright (C) 2026 The AutoComply Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef AUTOCOMPLY_REPORT_HPP
#define AUTOCOMPLY_REPORT_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "autocomply/catalog.hpp"
#include "autocomply/checkers.hpp"

namespace autocomply {

/// Wall-clock seconds spent in each stage of one analysis.
struct StageTimings {
    double load = 0;   // unzip, manifest and DEX decoding, or fixture loading
    double graph = 0;  // base graph and host augmentation
    double check = 0;  // checkers
    double total() const noexcept { return load + graph + check; }
    bool operator==(const StageTimings&) const = default;
};

struct AppError {
    std::string code;  // ErrorCode name, or "Internal"
    std::string message;
    bool operator==(const AppError&) const = default;
};

struct AppReport {
    std::string origin;
    StageTimings timing;
    std::vector<Finding> findings;
    std::vector<AppError> errors;
    std::vector<std::string> warnings;

    std::size_t count(Severity s) const;
    bool operator==(const AppReport&) const = default;
};

struct Summary {
    std::size_t apps = 0;
    std::size_t failed_apps = 0;
    std::map<FindingCategory, std::size_t> per_category;
    std::map<Severity, std::size_t> per_severity;
    // Over apps without errors; empty when every app failed.
    std::optional<double> geomean_seconds;
};

struct Report {
    std::string tool_version;
    std::vector<AppReport> apps;

    Summary summary() const;
    bool operator==(const Report&) const = default;
};

enum class ReportFormat { Text, Json, Sarif };

std::optional<ReportFormat> parse_report_format(std::string_view name);

struct EmitOptions {
    // Write every timing as zero, for golden and determinism comparisons.
    bool mask_timing = false;
};

std::string emit(const Report& report, ReportFormat format, const EmitOptions& options = {},
                 const Catalog& catalog = default_catalog());

/// Inverse of emit(..., ReportFormat::Json). Throws Error(SchemaViolation).
Report parse_json_report(std::string_view text);

/// 2 when any app failed, else 1 when any violation was found, else 0.
int exit_status(const Report& report);

/// The library version string.
std::string_view version();

} // namespace autocomply

#endif // AUTOCOMPLY_REPORT_HPP
