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

#include "autocomply/checkers.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <tuple>

#include "autocomply/error.hpp"

namespace autocomply {
namespace {

constexpr std::string_view kApplicationPath = "manifest/application";

Finding make_finding(const Catalog& catalog, std::string_view rule_id, std::string component,
                     std::optional<std::string> callback, std::vector<Location> evidence, std::string message)
{
    const RuleInfo* rule = catalog.rule(rule_id);
    if (!rule) {
        throw Error(ErrorCode::SchemaViolation, "rule " + std::string(rule_id) + " is not in the catalog");
    }
    return {rule->category, rule->id, std::move(component), std::move(callback), rule->severity,
            std::move(evidence), std::move(message)};
}

Location manifest_location(std::string path)
{
    Location loc;
    loc.manifest_path = std::move(path);
    return loc;
}

Location class_location(const std::string& class_name)
{
    Location loc;
    loc.class_name = class_name;
    return loc;
}

Location method_location(const DexMethod& m, std::optional<std::uint32_t> offset = std::nullopt)
{
    Location loc;
    loc.class_name = m.owner;
    loc.method = m.name + m.descriptor;
    loc.offset = offset;
    return loc;
}

std::string service_path(const std::string& class_name)
{
    return std::string(kApplicationPath) + "/service[" + class_name + "]";
}

std::vector<Location> witness_locations(const DexMethod& m, const std::vector<std::uint32_t>& offsets)
{
    std::vector<Location> out;
    for (const std::uint32_t off : offsets) {
        out.push_back(method_location(m, off));
    }
    return out;
}

std::string offsets_text(const std::vector<std::uint32_t>& offsets)
{
    std::string s;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        s += (i ? " -> " : "") + std::to_string(offsets[i]);
    }
    return s;
}

// Components with code; unresolved ones yield the informational finding.
std::vector<const ComponentInfo*> resolved_components(const Ccfg& ccfg, const Catalog& catalog,
                                                      std::vector<Finding>& out)
{
    std::vector<const ComponentInfo*> resolved;
    for (const ComponentInfo& c : ccfg.components()) {
        if (c.cls) {
            resolved.push_back(&c);
            continue;
        }
        out.push_back(make_finding(
            catalog, "INFO-cannot-resolve-component", c.ref.class_name, std::nullopt,
            {manifest_location(service_path(c.ref.class_name))},
            c.ref.class_name + " is declared as a media browser service but no class of that name is in the app; "
                               "its callbacks were not checked"));
    }
    return resolved;
}

bool camel_word_prefix(std::string_view name, std::string_view word)
{
    return name.starts_with(word) &&
           (name.size() == word.size() || std::isupper(static_cast<unsigned char>(name[word.size()])));
}

bool is_playback_call(const MethodRef& target, const Catalog& catalog)
{
    if (catalog.callback(target.name)) {
        return false;
    }
    if (std::find(catalog.reach_names.begin(), catalog.reach_names.end(), target.name) != catalog.reach_names.end()) {
        return true;
    }
    return std::any_of(catalog.reach_prefixes.begin(), catalog.reach_prefixes.end(),
                       [&](const std::string& p) { return camel_word_prefix(target.name, p); });
}

// Instruction indices reachable from the entry.
std::vector<bool> reachable_insns(const MethodCfg& cfg)
{
    std::vector<bool> seen(cfg.size(), false);
    const auto entry = cfg.entry();
    if (!entry) {
        return seen;
    }
    std::vector<std::size_t> stack{*entry};
    seen[*entry] = true;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (const std::uint32_t s : cfg.successors(v)) {
            if (!seen[s]) {
                seen[s] = true;
                stack.push_back(s);
            }
        }
    }
    return seen;
}

// Bounded call expansion from `start`: the first playback or session call
// found, breadth-first.
std::optional<MethodRef> find_playback_call(const Ccfg& ccfg, const DexMethod& start, unsigned depth,
                                            const Catalog& catalog)
{
    std::deque<std::pair<const DexMethod*, unsigned>> queue{{&start, 0}};
    std::set<const DexMethod*> seen{&start};
    while (!queue.empty()) {
        const auto [m, d] = queue.front();
        queue.pop_front();
        const MethodCfg* cfg = ccfg.method_cfg(m);
        if (!cfg) {
            continue;
        }
        const std::vector<bool> live = reachable_insns(*cfg);
        for (std::size_t i = 0; i < cfg->size(); ++i) {
            const DecodedInsn& insn = cfg->insn(i);
            if (!live[i] || insn.kind != InsnKind::Invoke) {
                continue;
            }
            if (is_playback_call(insn.target, catalog)) {
                return insn.target;
            }
            if (d < depth) {
                const DexMethod* callee = ccfg.resolve_invoke(insn);
                if (callee && callee->code && seen.insert(callee).second) {
                    queue.emplace_back(callee, d + 1);
                }
            }
        }
    }
    return std::nullopt;
}

std::string session_subject(const ComponentInfo& c)
{
    if (c.session_classes.empty()) {
        return "no MediaSession callback class registered by " + c.ref.class_name;
    }
    std::string s;
    for (std::size_t k = 0; k < c.session_classes.size(); ++k) {
        s += (k ? ", " : "") + c.session_classes[k]->name;
    }
    return s;
}

std::vector<Location> session_evidence(const ComponentInfo& c)
{
    std::vector<Location> ev{class_location(c.ref.class_name)};
    for (const DexClass* s : c.session_classes) {
        ev.push_back(class_location(s->name));
    }
    return ev;
}

bool has_conditional_branch(const MethodCfg& cfg)
{
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        const DecodedInsn& d = cfg.insn(i);
        if (d.kind == InsnKind::Branch && d.falls_through) {
            return true;
        }
    }
    return false;
}

bool declares_action(const std::vector<ComponentDecl>& components, std::string_view action)
{
    return std::any_of(components.begin(), components.end(), [&](const ComponentDecl& c) {
        return std::find(c.intent_actions.begin(), c.intent_actions.end(), action) != c.intent_actions.end();
    });
}

void finish(std::vector<Finding>& findings)
{
    sort_findings(findings);
    findings.erase(std::unique(findings.begin(), findings.end()), findings.end());
}

} // namespace

std::string Location::display() const
{
    if (is_manifest()) {
        return "AndroidManifest.xml:" + manifest_path;
    }
    std::string s = class_name;
    if (!method.empty()) {
        s += "." + method;
    }
    if (offset) {
        s += "@" + std::to_string(*offset);
    }
    return s;
}

bool finding_less(const Finding& a, const Finding& b)
{
    return std::tie(a.category, a.component, a.rule_id, a.callback, a.message, a.evidence) <
           std::tie(b.category, b.component, b.rule_id, b.callback, b.message, b.evidence);
}

void sort_findings(std::vector<Finding>& findings)
{
    std::sort(findings.begin(), findings.end(), finding_less);
}

bool is_auto_app(const ManifestModel& manifest)
{
    return manifest.uses_auto_descriptor || !auto_components(manifest).empty();
}

std::vector<Finding> check_discoverability(const AppModel& model, const Catalog& catalog)
{
    std::vector<Finding> out;
    const ManifestModel& m = model.manifest();
    const std::vector<AutoComponentRef> comps = auto_components(m);
    const std::string meta_path =
        std::string(kApplicationPath) + "/meta-data[" + std::string(kAutoMetadataName) + "]";
    if (!m.uses_auto_descriptor && comps.empty()) {
        out.push_back(make_finding(catalog, "DISC-not-auto-app", m.package_name, std::nullopt,
                                   {manifest_location("manifest")},
                                   m.package_name + " declares neither automotive meta-data nor a media browser "
                                                    "service; no car checks apply"));
        return out;
    }
    if (!m.uses_auto_descriptor) {
        std::vector<Location> ev{manifest_location(std::string(kApplicationPath))};
        for (const AutoComponentRef& c : comps) {
            ev.push_back(manifest_location(service_path(c.class_name)));
        }
        out.push_back(make_finding(catalog, "DISC-missing-automotive-metadata", comps.front().class_name,
                                   std::nullopt, std::move(ev),
                                   "the app declares a media browser service but no " +
                                       std::string(kAutoMetadataName) +
                                       " meta-data, so the car launcher will not list it"));
    }
    if (comps.empty()) {
        out.push_back(make_finding(catalog, "DISC-missing-media-browser-service", m.package_name, std::nullopt,
                                   {manifest_location(meta_path)},
                                   "the app declares automotive meta-data but no service handles " +
                                       std::string(kMediaBrowserAction)));
    }
    finish(out);
    return out;
}

std::vector<Finding> check_media(const Ccfg& ccfg, const AppModel& model, const CheckerConfig& config,
                                 const Catalog& catalog)
{
    (void)model;
    std::vector<Finding> out;
    for (const ComponentInfo* c : resolved_components(ccfg, catalog, out)) {
        const std::string& comp = c->ref.class_name;
        for (const CallbackSpec* spec : catalog.callbacks_in(CallbackCategory::Media)) {
            const DexMethod* impl = ccfg.implementation(comp, spec->name);
            if (!impl) {
                out.push_back(make_finding(catalog, spec->missing_rule, comp, spec->name, session_evidence(*c),
                                           session_subject(*c) + " does not implement " + spec->name +
                                               "; the car's request is dropped"));
                continue;
            }
            if (spec->obligation != ObligationKind::PresenceReach) {
                continue;
            }
            if (!find_playback_call(ccfg, *impl, config.limits.inline_depth, catalog)) {
                out.push_back(make_finding(
                    catalog, spec->obligation_rule, comp, spec->name, {method_location(*impl, 0)},
                    impl->owner + "." + spec->name + " reaches no playback or session call within " +
                        std::to_string(config.limits.inline_depth) + " call levels"));
            }
        }
    }
    finish(out);
    return out;
}

std::vector<Finding> check_ui(const Ccfg& ccfg, const AppModel& model, const CheckerConfig& config,
                              const Catalog& catalog)
{
    (void)model;
    std::vector<Finding> out;
    for (const ComponentInfo* c : resolved_components(ccfg, catalog, out)) {
        const std::string& comp = c->ref.class_name;
        for (const CallbackSpec* spec : catalog.callbacks_in(CallbackCategory::Ui)) {
            const DexMethod* impl = ccfg.implementation(comp, spec->name);
            if (!impl) {
                out.push_back(make_finding(catalog, spec->missing_rule, comp, spec->name, {class_location(comp)},
                                           comp + " does not implement " + spec->name +
                                               " with the platform signature"));
                continue;
            }
            const MethodCfg& cfg = *ccfg.method_cfg(impl);
            auto inconclusive = [&](const PathResult& r) {
                out.push_back(make_finding(catalog, "UI-analysis-inconclusive", comp, spec->name,
                                           {method_location(*impl, 0)},
                                           spec->name + " path analysis stopped after " + std::to_string(r.paths) +
                                               " paths and " + std::to_string(r.steps) + " steps"));
            };
            if (spec->obligation == ObligationKind::ReturnNonNull) {
                const PathResult r = all_paths_satisfy(cfg, Obligation::return_nonnull(), config.limits, &ccfg);
                if (r.verdict == PathVerdict::Counterexample) {
                    out.push_back(make_finding(catalog, spec->obligation_rule, comp, spec->name,
                                               witness_locations(*impl, r.witness),
                                               spec->name + " returns null on the path through offsets " +
                                                   offsets_text(r.witness)));
                } else if (r.verdict == PathVerdict::Inconclusive) {
                    inconclusive(r);
                }
                if (!has_conditional_branch(cfg)) {
                    out.push_back(make_finding(catalog, "UI-no-client-validation", comp, spec->name,
                                               {method_location(*impl, 0)},
                                               spec->name + " returns a root without checking the calling package"));
                }
            } else if (spec->obligation == ObligationKind::AllPathsCall) {
                const PathResult strict = all_paths_satisfy(cfg, Obligation::call(spec->targets), config.limits, &ccfg);
                if (strict.verdict == PathVerdict::Satisfied) {
                    continue;
                }
                std::vector<std::string> relaxed_targets = spec->targets;
                relaxed_targets.insert(relaxed_targets.end(), spec->deferrals.begin(), spec->deferrals.end());
                const PathResult relaxed =
                    all_paths_satisfy(cfg, Obligation::call(relaxed_targets), config.limits, &ccfg);
                if (relaxed.verdict == PathVerdict::Satisfied) {
                    out.push_back(make_finding(catalog, "UI-deferred-result", comp, spec->name,
                                               witness_locations(*impl, strict.witness),
                                               spec->name + " detaches its result on the path through offsets " +
                                                   offsets_text(strict.witness) + "; delivery happens later"));
                } else if (relaxed.verdict == PathVerdict::Counterexample) {
                    std::string expected;
                    for (std::size_t k = 0; k < spec->targets.size(); ++k) {
                        expected += (k ? " or " : "") + spec->targets[k];
                    }
                    out.push_back(make_finding(catalog, spec->obligation_rule, comp, spec->name,
                                               witness_locations(*impl, relaxed.witness),
                                               spec->name + " can return without calling " + expected +
                                                   " on the path through offsets " + offsets_text(relaxed.witness)));
                } else {
                    inconclusive(relaxed);
                }
            }
        }
    }
    finish(out);
    return out;
}

std::vector<Finding> check_voice(const Ccfg& ccfg, const AppModel& model, const CheckerConfig& config,
                                 const Catalog& catalog)
{
    (void)config;
    std::vector<Finding> out;
    const ManifestModel& m = model.manifest();
    if (!ccfg.components().empty() && !declares_action(m.activities, kPlayFromSearchAction) &&
        !declares_action(m.services, kPlayFromSearchAction)) {
        out.push_back(make_finding(catalog, "VOICE-missing-intent-filter", ccfg.components().front().ref.class_name,
                                   std::nullopt, {manifest_location(std::string(kApplicationPath))},
                                   "no activity or service declares an intent filter for " +
                                       std::string(kPlayFromSearchAction) + ", so voice requests cannot reach the app"));
    }
    for (const ComponentInfo& c : ccfg.components()) {
        if (!c.cls) {
            continue;
        }
        const std::string& comp = c.ref.class_name;
        for (const CallbackSpec* spec : catalog.callbacks_in(CallbackCategory::Voice)) {
            const DexMethod* impl = ccfg.implementation(comp, spec->name);
            if (!impl) {
                out.push_back(make_finding(catalog, spec->missing_rule, comp, spec->name, session_evidence(c),
                                           session_subject(c) + " does not implement " + spec->name +
                                               "; voice search requests are dropped"));
                continue;
            }
            const auto& insns = impl->code->instructions;
            const bool calls_anything = std::any_of(insns.begin(), insns.end(),
                                                    [](const DecodedInsn& d) { return d.kind == InsnKind::Invoke; });
            if (!calls_anything) {
                out.push_back(make_finding(catalog, spec->obligation_rule, comp, spec->name,
                                           {method_location(*impl, 0)},
                                           impl->owner + "." + spec->name + " makes no calls, so the query is ignored"));
            }
        }
    }
    finish(out);
    return out;
}

std::vector<Finding> run_checkers(const Ccfg& ccfg, const AppModel& model, const CheckerConfig& config,
                                  const Catalog& catalog)
{
    std::vector<Finding> out;
    auto append = [&out](std::vector<Finding> more) {
        out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    };
    if (config.media) {
        append(check_media(ccfg, model, config, catalog));
    }
    if (config.ui) {
        append(check_ui(ccfg, model, config, catalog));
    }
    if (config.voice) {
        append(check_voice(ccfg, model, config, catalog));
    }
    finish(out);
    return out;
}

std::vector<Finding> run_all(const AppModel& model, const CheckerConfig& config, const Catalog& catalog)
{
    std::vector<Finding> out;
    if (config.disc) {
        out = check_discoverability(model, catalog);
    }
    if (!is_auto_app(model.manifest())) {
        return out;
    }
    const Ccfg ccfg = augment_with_host(construct_base_icfg(model), auto_components(model.manifest()), catalog);
    std::vector<Finding> more = run_checkers(ccfg, model, config, catalog);
    out.insert(out.end(), more.begin(), more.end());
    finish(out);
    return out;
}

} // namespace autocomply
