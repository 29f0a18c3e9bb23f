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

#ifndef AUTOCOMPLY_APP_MODEL_HPP
#define AUTOCOMPLY_APP_MODEL_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "autocomply/apk.hpp"
#include "autocomply/dex.hpp"
#include "autocomply/manifest.hpp"

namespace autocomply {

/// Everything the analysis knows about one app.
class AppModel {
public:
    AppModel() = default;
    AppModel(ManifestModel manifest, std::vector<DexClass> classes, std::string origin,
             std::vector<std::string> warnings = {});

    const ManifestModel& manifest() const noexcept { return manifest_; }
    const std::vector<DexClass>& classes() const noexcept { return classes_; }
    const std::string& origin() const noexcept { return origin_; }
    /// Manifest services with no class of that name in the code.
    const std::vector<std::string>& unresolved_services() const noexcept { return unresolved_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    const DexClass* find_class(std::string_view name) const;

    /// Resolves `name`+`descriptor` on `owner`, then up its app-local
    /// superclass chain. Returns null once the chain leaves the app.
    const DexMethod* resolve_method(std::string_view owner, std::string_view name,
                                    std::string_view descriptor) const;

private:
    ManifestModel manifest_;
    std::vector<DexClass> classes_;
    std::string origin_;
    std::vector<std::string> unresolved_;
    std::vector<std::string> warnings_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Decodes the manifest and every DEX entry, merging the class lists.
/// Decoder errors propagate.
AppModel build_from_apk(const ApkContents& contents, std::string origin = {});

/// Reads the JSON text-fixture format (see docs/text-fixtures.md). Methods
/// are lowered to the same bytecode shapes the binary fixtures use.
/// Throws Error(SchemaViolation) naming the offending field.
AppModel load_text_fixture(std::string_view fixture_text, std::string origin = {});

/// Reads and loads a fixture file; Io on read failure.
AppModel load_text_fixture_file(const std::filesystem::path& path, std::string origin = {});

} // namespace autocomply

#endif // AUTOCOMPLY_APP_MODEL_HPP
