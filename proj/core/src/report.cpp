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

#include "autocomply/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>

#include "autocomply/error.hpp"

#ifndef AUTOCOMPLY_VERSION
#define AUTOCOMPLY_VERSION "0.0.0"
#endif

namespace autocomply {
namespace {

using json = nlohmann::ordered_json;

constexpr Severity kSeverities[] = {Severity::Violation, Severity::Warning, Severity::Info};
constexpr FindingCategory kCategories[] = {FindingCategory::Discoverability, FindingCategory::Media,
                                           FindingCategory::Ui, FindingCategory::Voice, FindingCategory::Info};

constexpr std::string_view kSarifSchema = "https://json.schemastore.org/sarif-2.1.0.json";

[[noreturn]] void bad(const std::string& path, const std::string& why)
{
    throw Error(ErrorCode::SchemaViolation, "report " + path + ": " + why);
}

template <typename E, std::size_t N>
E enum_from(const json& v, const std::string& path, const E (&values)[N])
{
    const std::string s = v.get<std::string>();
    for (const E e : values) {
        if (to_string(e) == s) {
            return e;
        }
    }
    bad(path, "unknown value \"" + s + "\"");
}

std::string fixed3(double seconds)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", seconds);
    return buf;
}

std::string plural(std::size_t n, std::string_view word)
{
    std::string s = std::to_string(n) + " " + std::string(word);
    if (n != 1) {
        s += word.ends_with("y") ? "" : "s";
    }
    return s;
}

std::string severity_counts(const std::map<Severity, std::size_t>& counts)
{
    auto at = [&](Severity s) {
        const auto it = counts.find(s);
        return it == counts.end() ? std::size_t{0} : it->second;
    };
    return plural(at(Severity::Violation), "violation") + ", " + plural(at(Severity::Warning), "warning") + ", " +
           std::to_string(at(Severity::Info)) + " info";
}

std::map<Severity, std::size_t> severity_map(const AppReport& app)
{
    std::map<Severity, std::size_t> m;
    for (const Finding& f : app.findings) {
        ++m[f.severity];
    }
    return m;
}

std::string sarif_level(Severity s)
{
    switch (s) {
    case Severity::Violation: return "error";
    case Severity::Warning: return "warning";
    case Severity::Info: return "note";
    }
    return "none";
}

// Percent-encodes everything outside the unreserved set and '/'.
std::string uri_reference(std::string_view path)
{
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    for (const char ch : path) {
        const auto c = static_cast<unsigned char>(ch);
        if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~' || c == '/') {
            out += ch;
        } else {
            out += '%';
            out += kHex[c >> 4];
            out += kHex[c & 15];
        }
    }
    return out;
}

json location_json(const Location& loc)
{
    json j = json::object();
    if (loc.is_manifest()) {
        j["manifest"] = loc.manifest_path;
        return j;
    }
    j["class"] = loc.class_name;
    if (!loc.method.empty()) {
        j["method"] = loc.method;
    }
    if (loc.offset) {
        j["offset"] = *loc.offset;
    }
    return j;
}

json finding_json(const Finding& f)
{
    json ev = json::array();
    for (const Location& loc : f.evidence) {
        ev.push_back(location_json(loc));
    }
    return {{"rule_id", f.rule_id},
            {"category", to_string(f.category)},
            {"severity", to_string(f.severity)},
            {"component", f.component},
            {"callback", f.callback ? json(*f.callback) : json(nullptr)},
            {"message", f.message},
            {"evidence", std::move(ev)}};
}

json summary_json(const Summary& s, bool mask_timing)
{
    json cats = json::object();
    for (const FindingCategory c : kCategories) {
        const auto it = s.per_category.find(c);
        cats[std::string(to_string(c))] = it == s.per_category.end() ? 0 : it->second;
    }
    json sev = json::object();
    for (const Severity v : kSeverities) {
        const auto it = s.per_severity.find(v);
        sev[std::string(to_string(v))] = it == s.per_severity.end() ? 0 : it->second;
    }
    json geo = nullptr;
    if (s.geomean_seconds) {
        geo = mask_timing ? 0.0 : *s.geomean_seconds;
    }
    return {{"apps", s.apps},
            {"failed_apps", s.failed_apps},
            {"per_category", std::move(cats)},
            {"per_severity", std::move(sev)},
            {"geomean_seconds", std::move(geo)}};
}

std::string emit_json(const Report& report, const EmitOptions& options)
{
    json apps = json::array();
    for (const AppReport& app : report.apps) {
        const StageTimings t = options.mask_timing ? StageTimings{} : app.timing;
        json findings = json::array();
        for (const Finding& f : app.findings) {
            findings.push_back(finding_json(f));
        }
        json errors = json::array();
        for (const AppError& e : app.errors) {
            errors.push_back({{"code", e.code}, {"message", e.message}});
        }
        apps.push_back({{"origin", app.origin},
                        {"timing", {{"load", t.load}, {"graph", t.graph}, {"check", t.check}, {"total", t.total()}}},
                        {"findings", std::move(findings)},
                        {"errors", std::move(errors)},
                        {"warnings", app.warnings}});
    }
    const json doc = {{"tool", {{"name", "autocomply"}, {"version", report.tool_version}}},
                      {"apps", std::move(apps)},
                      {"summary", summary_json(report.summary(), options.mask_timing)}};
    return doc.dump(2) + "\n";
}

std::string emit_text(const Report& report, const EmitOptions& options)
{
    std::string out = "autocomply " + report.tool_version + "\n";
    for (const AppReport& app : report.apps) {
        out += "\n" + app.origin + "\n";
        for (const AppError& e : app.errors) {
            out += "  error " + e.code + ": " + e.message + "\n";
        }
        for (const std::string& w : app.warnings) {
            out += "  note: " + w + "\n";
        }
        for (const Finding& f : app.findings) {
            out += "  " + std::string(to_string(f.severity)) + " " + std::string(to_string(f.category)) + " " +
                   f.rule_id + " " + f.component;
            if (f.callback) {
                out += " " + *f.callback;
            }
            out += "\n    " + f.message + "\n";
            for (const Location& loc : f.evidence) {
                out += "    at " + loc.display() + "\n";
            }
        }
        const double t = options.mask_timing ? 0.0 : app.timing.total();
        out += "  " + severity_counts(severity_map(app)) + "; " + fixed3(t) + " s\n";
    }
    const Summary s = report.summary();
    out += "\nsummary: " + plural(s.apps, "app") + ", " + std::to_string(s.failed_apps) + " failed; " +
           severity_counts(s.per_severity) + "\n ";
    for (const FindingCategory c : kCategories) {
        const auto it = s.per_category.find(c);
        out += " " + std::string(to_string(c)) + " " + std::to_string(it == s.per_category.end() ? 0 : it->second);
    }
    out += "\n";
    if (s.geomean_seconds) {
        out += "  geomean time " + fixed3(options.mask_timing ? 0.0 : *s.geomean_seconds) + " s\n";
    }
    return out;
}

json sarif_location(const Location& loc, const std::string& origin)
{
    json logical = json::object();
    if (loc.is_manifest()) {
        logical = {{"fullyQualifiedName", loc.manifest_path}, {"kind", "element"}};
    } else {
        logical = {{"fullyQualifiedName", loc.display()}, {"kind", loc.method.empty() ? "type" : "function"}};
    }
    json j = {{"physicalLocation", {{"artifactLocation", {{"uri", uri_reference(origin)}}}}},
              {"logicalLocations", json::array({std::move(logical)})}};
    if (loc.offset) {
        j["properties"] = {{"codeOffset", *loc.offset}};
    }
    return j;
}

std::string emit_sarif(const Report& report, const Catalog& catalog)
{
    json rules = json::array();
    for (const RuleInfo& r : catalog.rules) {
        rules.push_back({{"id", r.id},
                         {"shortDescription", {{"text", r.title}}},
                         {"fullDescription", {{"text", r.help}}},
                         {"help", {{"text", r.help}}},
                         {"defaultConfiguration", {{"level", sarif_level(r.severity)}}},
                         {"properties", {{"category", to_string(r.category)}}}});
    }
    json artifacts = json::array();
    json results = json::array();
    json notifications = json::array();
    for (std::size_t a = 0; a < report.apps.size(); ++a) {
        const AppReport& app = report.apps[a];
        artifacts.push_back({{"location", {{"uri", uri_reference(app.origin)}}}});
        for (const AppError& e : app.errors) {
            notifications.push_back(
                {{"level", "error"},
                 {"message", {{"text", e.message}}},
                 {"descriptor", {{"id", e.code}}},
                 {"locations", json::array({{{"physicalLocation",
                                              {{"artifactLocation", {{"uri", uri_reference(app.origin)}}}}}}})}});
        }
        for (const Finding& f : app.findings) {
            json r = {{"ruleId", f.rule_id}};
            const std::size_t idx = catalog.rule_index(f.rule_id);
            if (idx < catalog.rules.size()) {
                r["ruleIndex"] = idx;
            }
            json locs = json::array();
            for (const Location& loc : f.evidence) {
                locs.push_back(sarif_location(loc, app.origin));
            }
            r["level"] = sarif_level(f.severity);
            r["message"] = {{"text", f.message}};
            r["locations"] = std::move(locs);
            r["properties"] = {{"app", app.origin},
                               {"artifactIndex", a},
                               {"category", to_string(f.category)},
                               {"component", f.component},
                               {"callback", f.callback ? json(*f.callback) : json(nullptr)}};
            results.push_back(std::move(r));
        }
    }
    const bool ok = notifications.empty();
    json invocation = {{"executionSuccessful", ok}};
    if (!ok) {
        invocation["toolExecutionNotifications"] = std::move(notifications);
    }
    const json doc = {
        {"$schema", kSarifSchema},
        {"version", "2.1.0"},
        {"runs", json::array({{{"tool", {{"driver", {{"name", "autocomply"},
                                                    {"version", report.tool_version},
                                                    {"rules", std::move(rules)}}}}},
                               {"invocations", json::array({std::move(invocation)})},
                               {"artifacts", std::move(artifacts)},
                               {"results", std::move(results)}}})}};
    return doc.dump(2) + "\n";
}

Location location_from(const json& j, const std::string& path)
{
    Location loc;
    if (j.contains("manifest")) {
        loc.manifest_path = j.at("manifest").get<std::string>();
        return loc;
    }
    loc.class_name = j.at("class").get<std::string>();
    if (j.contains("method")) {
        loc.method = j.at("method").get<std::string>();
    }
    if (j.contains("offset")) {
        loc.offset = j.at("offset").get<std::uint32_t>();
    }
    if (loc.class_name.empty()) {
        bad(path, "location names neither a class nor a manifest element");
    }
    return loc;
}

Report report_from(const json& doc)
{
    Report r;
    r.tool_version = doc.at("tool").at("version").get<std::string>();
    const json& apps = doc.at("apps");
    for (std::size_t i = 0; i < apps.size(); ++i) {
        const std::string path = "$.apps[" + std::to_string(i) + "]";
        const json& a = apps[i];
        AppReport app;
        app.origin = a.at("origin").get<std::string>();
        const json& t = a.at("timing");
        app.timing = {t.at("load").get<double>(), t.at("graph").get<double>(), t.at("check").get<double>()};
        const json& findings = a.at("findings");
        for (std::size_t k = 0; k < findings.size(); ++k) {
            const std::string fpath = path + ".findings[" + std::to_string(k) + "]";
            const json& fj = findings[k];
            Finding f;
            f.rule_id = fj.at("rule_id").get<std::string>();
            f.category = enum_from(fj.at("category"), fpath + ".category", kCategories);
            f.severity = enum_from(fj.at("severity"), fpath + ".severity", kSeverities);
            f.component = fj.at("component").get<std::string>();
            if (!fj.at("callback").is_null()) {
                f.callback = fj.at("callback").get<std::string>();
            }
            f.message = fj.at("message").get<std::string>();
            const json& ev = fj.at("evidence");
            for (std::size_t e = 0; e < ev.size(); ++e) {
                f.evidence.push_back(location_from(ev[e], fpath + ".evidence[" + std::to_string(e) + "]"));
            }
            app.findings.push_back(std::move(f));
        }
        for (const json& e : a.at("errors")) {
            app.errors.push_back({e.at("code").get<std::string>(), e.at("message").get<std::string>()});
        }
        app.warnings = a.at("warnings").get<std::vector<std::string>>();
        r.apps.push_back(std::move(app));
    }

    const Summary s = r.summary();
    const json& sj = doc.at("summary");
    if (sj.at("apps").get<std::size_t>() != s.apps || sj.at("failed_apps").get<std::size_t>() != s.failed_apps) {
        bad("$.summary", "app counts disagree with the app list");
    }
    for (const FindingCategory c : kCategories) {
        const auto it = s.per_category.find(c);
        const std::size_t want = it == s.per_category.end() ? 0 : it->second;
        if (sj.at("per_category").at(std::string(to_string(c))).get<std::size_t>() != want) {
            bad("$.summary.per_category", "total for " + std::string(to_string(c)) + " disagrees with the findings");
        }
    }
    return r;
}

} // namespace

std::size_t AppReport::count(Severity s) const
{
    return static_cast<std::size_t>(
        std::count_if(findings.begin(), findings.end(), [s](const Finding& f) { return f.severity == s; }));
}

Summary Report::summary() const
{
    Summary s;
    s.apps = apps.size();
    double log_sum = 0;
    std::size_t timed = 0;
    for (const AppReport& app : apps) {
        for (const Finding& f : app.findings) {
            ++s.per_category[f.category];
            ++s.per_severity[f.severity];
        }
        if (!app.errors.empty()) {
            ++s.failed_apps;
            continue;
        }
        // A floor keeps a zero timing from collapsing the mean.
        log_sum += std::log(std::max(app.timing.total(), 1e-9));
        ++timed;
    }
    if (timed > 0) {
        s.geomean_seconds = std::exp(log_sum / static_cast<double>(timed));
    }
    return s;
}

std::optional<ReportFormat> parse_report_format(std::string_view name)
{
    if (name == "text") {
        return ReportFormat::Text;
    }
    if (name == "json") {
        return ReportFormat::Json;
    }
    if (name == "sarif") {
        return ReportFormat::Sarif;
    }
    return std::nullopt;
}

std::string emit(const Report& report, ReportFormat format, const EmitOptions& options, const Catalog& catalog)
{
    switch (format) {
    case ReportFormat::Text: return emit_text(report, options);
    case ReportFormat::Json: return emit_json(report, options);
    case ReportFormat::Sarif: return emit_sarif(report, catalog);
    }
    return {};
}

Report parse_json_report(std::string_view text)
{
    try {
        return report_from(json::parse(text));
    } catch (const json::exception& e) {
        bad("$", e.what());
    }
}

int exit_status(const Report& report)
{
    bool violations = false;
    for (const AppReport& app : report.apps) {
        if (!app.errors.empty()) {
            return 2;
        }
        violations = violations || app.count(Severity::Violation) > 0;
    }
    return violations ? 1 : 0;
}

std::string_view version()
{
    return AUTOCOMPLY_VERSION;
}

} // namespace autocomply
