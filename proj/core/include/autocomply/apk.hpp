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

#ifndef AUTOCOMPLY_APK_HPP
#define AUTOCOMPLY_APK_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace autocomply {

enum class ZipMethod : std::uint16_t { Stored = 0, Deflated = 8 };

/// One central-directory record. `data` is populated only for the entries
/// the analysis needs (manifest and DEX files); other entries are indexed
/// but left unread.
struct ApkEntry {
    std::string path;
    std::uint64_t size = 0;            // uncompressed
    std::uint64_t compressed_size = 0;
    std::uint16_t method = 0;
    std::uint32_t crc32 = 0;
    bool loaded = false;
    std::vector<std::uint8_t> data;
};

struct ApkContents {
    std::vector<std::uint8_t> manifest_bytes;
    std::vector<std::vector<std::uint8_t>> dex_entries;  // classes.dex, classes2.dex, ...
    std::vector<std::string> dex_names;                  // parallel to dex_entries
    std::vector<ApkEntry> entry_index;                   // central-directory order
};

/// Reads an APK from disk. Throws Error with NotAZipArchive, MissingManifest,
/// CorruptEntry or Io.
ApkContents open_apk(const std::filesystem::path& path);

/// Same as open_apk over an in-memory archive.
ApkContents read_apk(std::span<const std::uint8_t> archive);

/// Numeric position of a top-level "classesN.dex" name (classes.dex is 1),
/// or 0 when the name is not a DEX entry of the primary code set.
int dex_entry_ordinal(const std::string& name);

} // namespace autocomply

#endif // AUTOCOMPLY_APK_HPP
