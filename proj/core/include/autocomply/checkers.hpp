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

#ifndef AUTOCOMPLY_CHECKERS_HPP
#define AUTOCOMPLY_CHECKERS_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autocomply/app_model.hpp"
#include "autocomply/catalog.hpp"
#include "autocomply/ccfg.hpp"

namespace autocomply {

/// Where a finding points: a code position (class, optional method and
/// offset) or a node in the manifest.
struct Location {
    std::string class_name;
    std::string method;  // name + descriptor
    std::optional<std::uint32_t> offset;
    std::string manifest_path;

    bool is_manifest() const noexcept { return !manifest_path.empty(); }
    std::string display() const;
    auto operator<=>(const Location&) const = default;
};

struct Finding {
    FindingCategory category = FindingCategory::Info;
    std::string rule_id;
    std::string component;
    std::optional<std::string> callback;
    Severity severity = Severity::Info;
    std::vector<Location> evidence;
    std::string message;

    bool operator==(const Finding&) const = default;
};

/// Report order: category, component, rule, callback, message, evidence.
bool finding_less(const Finding& a, const Finding& b);
void sort_findings(std::vector<Finding>& findings);

struct CheckerConfig {
    bool disc = true;
    bool media = true;
    bool ui = true;
    bool voice = true;
    PathLimits limits;
};

/// True when the manifest declares automotive meta-data or a media browser service.
bool is_auto_app(const ManifestModel& manifest);

std::vector<Finding> check_discoverability(const AppModel& model, const Catalog& catalog = default_catalog());
std::vector<Finding> check_media(const Ccfg& ccfg, const AppModel& model, const CheckerConfig& config = {},
                                 const Catalog& catalog = default_catalog());
std::vector<Finding> check_ui(const Ccfg& ccfg, const AppModel& model, const CheckerConfig& config = {},
                              const Catalog& catalog = default_catalog());
std::vector<Finding> check_voice(const Ccfg& ccfg, const AppModel& model, const CheckerConfig& config = {},
                                 const Catalog& catalog = default_catalog());

/// The enabled category checkers over an augmented graph, sorted and
/// without duplicates. Discoverability is not included.
std::vector<Finding> run_checkers(const Ccfg& ccfg, const AppModel& model, const CheckerConfig& config,
                                  const Catalog& catalog = default_catalog());

/// Discoverability (when enabled), then, for Auto apps, graph construction and the
/// enabled checkers. Sorted and without duplicates.
std::vector<Finding> run_all(const AppModel& model, const CheckerConfig& config = {},
                             const Catalog& catalog = default_catalog());

} // namespace autocomply

#endif // AUTOCOMPLY_CHECKERS_HPP
