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

#ifndef AUTOCOMPLY_CATALOG_HPP
#define AUTOCOMPLY_CATALOG_HPP

#include <string>
#include <string_view>
#include <vector>

namespace autocomply {

enum class CallbackCategory { Media, Ui, Voice };
enum class OwnerKind { MediaBrowserService, MediaSessionCallback };
enum class HostSource { UiRequest, HostEvent, Assistant };
enum class ObligationKind { Presence, ReturnNonNull, AllPathsCall, PresenceReach };

enum class Severity { Violation, Warning, Info };
// Declaration order is report order.
enum class FindingCategory { Discoverability, Media, Ui, Voice, Info };

std::string_view to_string(CallbackCategory c);
std::string_view to_string(OwnerKind k);
std::string_view to_string(HostSource s);
std::string_view to_string(ObligationKind k);
std::string_view to_string(Severity s);
std::string_view to_string(FindingCategory c);

/// One platform callback the host may invoke, and what it must do.
struct CallbackSpec {
    std::string name;
    CallbackCategory category = CallbackCategory::Ui;
    OwnerKind owner = OwnerKind::MediaBrowserService;
    HostSource source = HostSource::UiRequest;
    ObligationKind obligation = ObligationKind::Presence;
    // Accepted parameter lists, as simple type names ("String", "int").
    std::vector<std::vector<std::string>> signatures;
    std::string returns;  // simple type name; empty accepts any
    std::vector<std::string> targets;    // AllPathsCall
    std::vector<std::string> deferrals;  // calls that discharge AllPathsCall with a note
    std::string missing_rule;
    std::string obligation_rule;
};

struct RuleInfo {
    std::string id;
    FindingCategory category = FindingCategory::Info;
    Severity severity = Severity::Info;
    std::string title;
    std::string help;
};

struct Catalog {
    std::vector<CallbackSpec> callbacks;
    std::vector<RuleInfo> rules;
    std::vector<std::string> browser_bases;  // MediaBrowserService superclass suffixes
    std::vector<std::string> session_bases;  // session callback superclass suffixes
    std::vector<std::string> reach_prefixes;
    std::vector<std::string> reach_names;

    const RuleInfo* rule(std::string_view id) const;
    /// Position of `id` in `rules`, or rules.size() when unknown.
    std::size_t rule_index(std::string_view id) const;
    const CallbackSpec* callback(std::string_view name) const;
    std::vector<const CallbackSpec*> callbacks_in(CallbackCategory category) const;
};

/// Parses and cross-checks a catalog document. Throws Error(SchemaViolation).
Catalog parse_catalog(std::string_view json_text);

/// The catalog compiled into the library.
const Catalog& default_catalog();

} // namespace autocomply

#endif // AUTOCOMPLY_CATALOG_HPP
