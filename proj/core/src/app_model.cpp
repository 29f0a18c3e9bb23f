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

#include "autocomply/app_model.hpp"

#include <unordered_set>

#include "autocomply/error.hpp"

namespace autocomply {

AppModel::AppModel(ManifestModel manifest, std::vector<DexClass> classes, std::string origin,
                   std::vector<std::string> warnings)
    : manifest_(std::move(manifest)), classes_(std::move(classes)), origin_(std::move(origin)),
      warnings_(std::move(warnings))
{
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        index_.emplace(classes_[i].name, i);
    }
    std::unordered_set<std::string> reported;
    for (const ServiceDecl& s : manifest_.services) {
        if (!index_.contains(s.class_name) && reported.insert(s.class_name).second) {
            unresolved_.push_back(s.class_name);
        }
    }
}

const DexClass* AppModel::find_class(std::string_view name) const
{
    const auto it = index_.find(std::string(name));
    return it == index_.end() ? nullptr : &classes_[it->second];
}

const DexMethod* AppModel::resolve_method(std::string_view owner, std::string_view name,
                                          std::string_view descriptor) const
{
    std::unordered_set<const DexClass*> seen;
    const DexClass* cls = find_class(owner);
    while (cls && seen.insert(cls).second) {
        if (const DexMethod* m = cls->find_method(name, descriptor)) {
            return m;
        }
        cls = cls->superclass ? find_class(*cls->superclass) : nullptr;
    }
    return nullptr;
}

AppModel build_from_apk(const ApkContents& contents, std::string origin)
{
    ManifestModel manifest = decode_manifest(contents.manifest_bytes);
    std::vector<std::vector<DexClass>> per_dex;
    per_dex.reserve(contents.dex_entries.size());
    for (std::size_t i = 0; i < contents.dex_entries.size(); ++i) {
        const std::string name = i < contents.dex_names.size() ? contents.dex_names[i]
                                                                : "dex #" + std::to_string(i + 1);
        try {
            per_dex.push_back(parse_dex(contents.dex_entries[i]));
        } catch (const Error& e) {
            throw Error(e.code(), name + ": " + e.what());
        }
        for (DexClass& c : per_dex.back()) {
            c.source = name;
        }
    }
    MergedClasses merged = merge_multidex(std::move(per_dex));
    return AppModel(std::move(manifest), std::move(merged.classes), std::move(origin),
                    std::move(merged.warnings));
}

} // namespace autocomply
