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

#include "autocomply/catalog.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "autocomply/error.hpp"

namespace autocomply {

namespace detail {
extern const char* const kRuleCatalogJson;
}

namespace {

using json = nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& what)
{
    throw Error(ErrorCode::SchemaViolation, "rule catalog " + path + ": " + what);
}

template <typename Enum, std::size_t N>
Enum parse_enum(const json& v, const std::string& path, const Enum (&values)[N])
{
    if (!v.is_string()) {
        bad(path, "expected a string");
    }
    const std::string s = v.get<std::string>();
    for (const Enum e : values) {
        if (to_string(e) == s) {
            return e;
        }
    }
    bad(path, "unknown value '" + s + "'");
}

std::vector<std::string> strings(const json& obj, const char* key, const std::string& path)
{
    std::vector<std::string> out;
    const auto it = obj.find(key);
    if (it == obj.end()) {
        return out;
    }
    if (!it->is_array()) {
        bad(path + "." + key, "expected an array");
    }
    for (const json& v : *it) {
        if (!v.is_string()) {
            bad(path + "." + key, "expected strings");
        }
        out.push_back(v.get<std::string>());
    }
    return out;
}

std::string text(const json& obj, const char* key, const std::string& path)
{
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
        bad(path + "." + key, "missing string");
    }
    return it->get<std::string>();
}

constexpr CallbackCategory kCallbackCategories[] = {CallbackCategory::Media, CallbackCategory::Ui,
                                                    CallbackCategory::Voice};
constexpr OwnerKind kOwnerKinds[] = {OwnerKind::MediaBrowserService, OwnerKind::MediaSessionCallback};
constexpr HostSource kHostSources[] = {HostSource::UiRequest, HostSource::HostEvent, HostSource::Assistant};
constexpr ObligationKind kObligations[] = {ObligationKind::Presence, ObligationKind::ReturnNonNull,
                                           ObligationKind::AllPathsCall, ObligationKind::PresenceReach};
constexpr Severity kSeverities[] = {Severity::Violation, Severity::Warning, Severity::Info};
constexpr FindingCategory kFindingCategories[] = {FindingCategory::Discoverability, FindingCategory::Media,
                                                  FindingCategory::Ui, FindingCategory::Voice,
                                                  FindingCategory::Info};

} // namespace

std::string_view to_string(CallbackCategory c)
{
    switch (c) {
    case CallbackCategory::Media: return "media";
    case CallbackCategory::Ui: return "ui";
    case CallbackCategory::Voice: return "voice";
    }
    return "?";
}

std::string_view to_string(OwnerKind k)
{
    switch (k) {
    case OwnerKind::MediaBrowserService: return "MediaBrowserService";
    case OwnerKind::MediaSessionCallback: return "MediaSessionCallback";
    }
    return "?";
}

std::string_view to_string(HostSource s)
{
    switch (s) {
    case HostSource::UiRequest: return "UI-request";
    case HostSource::HostEvent: return "host-event";
    case HostSource::Assistant: return "assistant";
    }
    return "?";
}

std::string_view to_string(ObligationKind k)
{
    switch (k) {
    case ObligationKind::Presence: return "presence";
    case ObligationKind::ReturnNonNull: return "all-paths-return-nonnull";
    case ObligationKind::AllPathsCall: return "all-paths-call";
    case ObligationKind::PresenceReach: return "presence+reach";
    }
    return "?";
}

std::string_view to_string(Severity s)
{
    switch (s) {
    case Severity::Violation: return "violation";
    case Severity::Warning: return "warning";
    case Severity::Info: return "info";
    }
    return "?";
}

std::string_view to_string(FindingCategory c)
{
    switch (c) {
    case FindingCategory::Discoverability: return "discoverability";
    case FindingCategory::Media: return "T1-media";
    case FindingCategory::Ui: return "T2-ui";
    case FindingCategory::Voice: return "T3-voice";
    case FindingCategory::Info: return "info";
    }
    return "?";
}

const RuleInfo* Catalog::rule(std::string_view id) const
{
    const std::size_t i = rule_index(id);
    return i < rules.size() ? &rules[i] : nullptr;
}

std::size_t Catalog::rule_index(std::string_view id) const
{
    for (std::size_t i = 0; i < rules.size(); ++i) {
        if (rules[i].id == id) {
            return i;
        }
    }
    return rules.size();
}

const CallbackSpec* Catalog::callback(std::string_view name) const
{
    for (const CallbackSpec& c : callbacks) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

std::vector<const CallbackSpec*> Catalog::callbacks_in(CallbackCategory category) const
{
    std::vector<const CallbackSpec*> out;
    for (const CallbackSpec& c : callbacks) {
        if (c.category == category) {
            out.push_back(&c);
        }
    }
    return out;
}

namespace {

Catalog catalog_from(const json& doc)
{
    Catalog cat;
    const json& bases = doc.at("bases");
    cat.browser_bases = strings(bases, "MediaBrowserService", "$.bases");
    cat.session_bases = strings(bases, "MediaSessionCallback", "$.bases");
    cat.reach_prefixes = strings(doc.at("reach"), "word_prefixes", "$.reach");
    cat.reach_names = strings(doc.at("reach"), "names", "$.reach");

    const json& rules = doc.at("rules");
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const std::string path = "$.rules[" + std::to_string(i) + "]";
        RuleInfo r;
        r.id = text(rules[i], "id", path);
        r.category = parse_enum(rules[i].at("category"), path + ".category", kFindingCategories);
        r.severity = parse_enum(rules[i].at("severity"), path + ".severity", kSeverities);
        r.title = text(rules[i], "title", path);
        r.help = text(rules[i], "help", path);
        if (cat.rule(r.id)) {
            bad(path, "duplicate rule id " + r.id);
        }
        cat.rules.push_back(std::move(r));
    }

    std::set<std::string> names;
    const json& callbacks = doc.at("callbacks");
    for (std::size_t i = 0; i < callbacks.size(); ++i) {
        const std::string path = "$.callbacks[" + std::to_string(i) + "]";
        const json& c = callbacks[i];
        CallbackSpec s;
        s.name = text(c, "name", path);
        if (!names.insert(s.name).second) {
            bad(path, "callback " + s.name + " listed in more than one entry");
        }
        s.category = parse_enum(c.at("category"), path + ".category", kCallbackCategories);
        s.owner = parse_enum(c.at("owner"), path + ".owner", kOwnerKinds);
        s.source = parse_enum(c.at("host_source"), path + ".host_source", kHostSources);
        s.obligation = parse_enum(c.at("obligation"), path + ".obligation", kObligations);
        for (const json& sig : c.at("signatures")) {
            std::vector<std::string> params;
            for (const json& p : sig) {
                params.push_back(p.get<std::string>());
            }
            s.signatures.push_back(std::move(params));
        }
        if (c.contains("returns")) {
            s.returns = text(c, "returns", path);
        }
        s.targets = strings(c, "targets", path);
        s.deferrals = strings(c, "deferrals", path);
        s.missing_rule = text(c, "missing_rule", path);
        s.obligation_rule = text(c, "obligation_rule", path);
        for (const std::string* id : {&s.missing_rule, &s.obligation_rule}) {
            if (!cat.rule(*id)) {
                bad(path, "refers to unknown rule " + *id);
            }
        }
        if (s.obligation == ObligationKind::AllPathsCall && s.targets.empty()) {
            bad(path, "all-paths-call needs targets");
        }
        cat.callbacks.push_back(std::move(s));
    }
    return cat;
}

} // namespace

Catalog parse_catalog(std::string_view json_text)
{
    try {
        return catalog_from(json::parse(json_text));
    } catch (const json::exception& e) {
        bad("$", e.what());
    }
}

const Catalog& default_catalog()
{
    static const Catalog catalog = parse_catalog(detail::kRuleCatalogJson);
    return catalog;
}

} // namespace autocomply
