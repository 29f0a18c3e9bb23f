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

#include <algorithm>

#include "autocomply/error.hpp"
#include "autocomply/manifest.hpp"

namespace autocomply {
namespace {

ComponentDecl component_from(const XmlElement& el, std::string_view package_name)
{
    ComponentDecl c;
    if (const XmlAttribute* name = el.attribute("name")) {
        c.class_name = resolve_class_name(package_name, name->value);
    }
    for (const XmlElement& filter : el.children) {
        if (filter.name != "intent-filter") {
            continue;
        }
        for (const XmlElement& action : filter.children) {
            const XmlAttribute* name = action.attribute("name");
            if (action.name != "action" || !name) {
                continue;
            }
            if (std::find(c.intent_actions.begin(), c.intent_actions.end(), name->value) ==
                c.intent_actions.end()) {
                c.intent_actions.push_back(name->value);
            }
        }
    }
    // Without an explicit flag, a component is reachable from other apps
    // exactly when it declares an intent filter.
    if (const XmlAttribute* exported = el.attribute("exported")) {
        c.exported = exported->value == "true";
    } else {
        c.exported = !c.intent_actions.empty();
    }
    return c;
}

} // namespace

std::string resolve_class_name(std::string_view package_name, std::string_view name)
{
    if (name.starts_with('.')) {
        return std::string(package_name) + std::string(name);
    }
    if (name.find('.') == std::string_view::npos) {
        return std::string(package_name) + "." + std::string(name);
    }
    return std::string(name);
}

void refresh_auto_descriptor(ManifestModel& model)
{
    model.uses_auto_descriptor =
        std::any_of(model.meta_data.begin(), model.meta_data.end(),
                    [](const MetaDataEntry& m) { return m.name == kAutoMetadataName; });
}

ManifestModel manifest_from_xml(const XmlElement& root)
{
    if (root.name != "manifest") {
        throw Error(ErrorCode::NotAxml, "root element is <" + root.name + ">, not <manifest>");
    }
    ManifestModel model;
    if (const XmlAttribute* package = root.attribute("package")) {
        model.package_name = package->value;
    }
    if (model.package_name.empty()) {
        throw Error(ErrorCode::NotAxml, "<manifest> has no package attribute");
    }
    for (const XmlElement& app : root.children) {
        if (app.name != "application") {
            continue;
        }
        for (const XmlElement& el : app.children) {
            if (el.name == "meta-data") {
                MetaDataEntry md;
                if (const XmlAttribute* name = el.attribute("name")) {
                    md.name = name->value;
                }
                if (const XmlAttribute* res = el.attribute("resource")) {
                    md.value = res->value;
                } else if (const XmlAttribute* value = el.attribute("value")) {
                    md.value = value->value;
                }
                model.meta_data.push_back(std::move(md));
            } else if (el.name == "service") {
                model.services.push_back(component_from(el, model.package_name));
            } else if (el.name == "activity" || el.name == "activity-alias") {
                model.activities.push_back(component_from(el, model.package_name));
            }
        }
    }
    refresh_auto_descriptor(model);
    return model;
}

ManifestModel decode_manifest(std::span<const std::uint8_t> manifest_bytes)
{
    return manifest_from_xml(decode_axml(manifest_bytes));
}

std::vector<AutoComponentRef> auto_components(const ManifestModel& model)
{
    std::vector<AutoComponentRef> out;
    for (std::size_t i = 0; i < model.services.size(); ++i) {
        const ServiceDecl& s = model.services[i];
        if (std::find(s.intent_actions.begin(), s.intent_actions.end(), kMediaBrowserAction) !=
            s.intent_actions.end()) {
            out.push_back({s.class_name, i, model.uses_auto_descriptor});
        }
    }
    return out;
}

} // namespace autocomply
