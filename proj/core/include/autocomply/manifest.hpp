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

#ifndef AUTOCOMPLY_MANIFEST_HPP
#define AUTOCOMPLY_MANIFEST_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace autocomply {

inline constexpr std::string_view kAutoMetadataName = "com.google.android.gms.car.application";
inline constexpr std::string_view kMediaBrowserAction = "android.media.browse.MediaBrowserService";
inline constexpr std::string_view kPlayFromSearchAction = "android.media.action.MEDIA_PLAY_FROM_SEARCH";

struct XmlAttribute {
    std::string ns;     // namespace URI, empty when absent
    std::string name;   // local name
    std::string value;  // rendered value; references as "@0xHHHHHHHH"
    std::uint8_t data_type = 0;
};

struct XmlElement {
    std::string ns;
    std::string name;
    std::vector<XmlAttribute> attributes;
    std::vector<XmlElement> children;

    /// First attribute with this local name, namespace ignored.
    const XmlAttribute* attribute(std::string_view local_name) const;
};

/// Decodes a binary XML document into its root element. Throws Error with
/// NotAxml, TruncatedChunk or StringPoolCorrupt.
XmlElement decode_axml(std::span<const std::uint8_t> bytes);

struct MetaDataEntry {
    std::string name;
    std::string value;  // android:resource or android:value, as rendered
};

/// A manifest <service> or <activity>.
struct ComponentDecl {
    std::string class_name;                // fully qualified
    std::vector<std::string> intent_actions;  // first-seen order, no duplicates
    bool exported = false;
};
using ServiceDecl = ComponentDecl;

struct ManifestModel {
    std::string package_name;
    std::vector<MetaDataEntry> meta_data;
    std::vector<ServiceDecl> services;
    std::vector<ComponentDecl> activities;
    bool uses_auto_descriptor = false;
};

/// Throws the decode_axml errors, and NotAxml when the root is not a
/// <manifest> with a package attribute.
ManifestModel decode_manifest(std::span<const std::uint8_t> manifest_bytes);

/// Interprets an already decoded manifest tree.
ManifestModel manifest_from_xml(const XmlElement& root);

/// Recomputes uses_auto_descriptor from meta_data.
void refresh_auto_descriptor(ManifestModel& model);

/// ".Foo" and "Foo" resolve against the package; dotted names are kept.
std::string resolve_class_name(std::string_view package_name, std::string_view name);

struct AutoComponentRef {
    std::string class_name;
    std::size_t service_index = 0;  // into ManifestModel::services
    bool uses_auto_descriptor = false;
};

/// Services declaring the media-browser intent action, in manifest order.
std::vector<AutoComponentRef> auto_components(const ManifestModel& model);

} // namespace autocomply

#endif // AUTOCOMPLY_MANIFEST_HPP
