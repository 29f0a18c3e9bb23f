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

#include "autocomply/apk.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>

#include <zlib.h>

#include "autocomply/error.hpp"
#include "byte_reader.hpp"

namespace autocomply {
namespace {

constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::uint32_t kCentralHeaderSig = 0x02014b50;
constexpr std::uint32_t kEndOfCentralDirSig = 0x06054b50;
constexpr std::size_t kEocdSize = 22;
constexpr std::size_t kMaxComment = 0xffff;

struct CentralRecord {
    ApkEntry entry;
    std::uint16_t flags = 0;
    std::uint32_t local_offset = 0;
};

std::size_t find_eocd(const detail::ByteReader& in)
{
    if (in.size() < kEocdSize) {
        throw Error(ErrorCode::NotAZipArchive, "file too small for an end-of-central-directory record");
    }
    const std::size_t last = in.size() - kEocdSize;
    const std::size_t first = last > kMaxComment ? last - kMaxComment : 0;
    for (std::size_t pos = last + 1; pos-- > first;) {
        if (in.u32(pos) == kEndOfCentralDirSig &&
            pos + kEocdSize + in.u16(pos + 20) == in.size()) {
            return pos;
        }
    }
    throw Error(ErrorCode::NotAZipArchive, "end-of-central-directory signature not found");
}

std::vector<std::uint8_t> inflate_raw(std::span<const std::uint8_t> src, std::uint64_t expected,
                                      const std::string& name)
{
    std::vector<std::uint8_t> out(expected);
    z_stream zs{};
    if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) {
        throw Error(ErrorCode::CorruptEntry, name + ": inflateInit failed");
    }
    zs.next_in = const_cast<Bytef*>(src.data());
    zs.avail_in = static_cast<uInt>(src.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = inflate(&zs, Z_FINISH);
    const auto produced = zs.total_out;
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || produced != expected) {
        throw Error(ErrorCode::CorruptEntry,
                    name + ": deflate stream is damaged or its size does not match the directory");
    }
    return out;
}

std::vector<std::uint8_t> load_entry(const detail::ByteReader& in, const CentralRecord& rec)
{
    const ApkEntry& e = rec.entry;
    if (rec.flags & 0x0001) {
        throw Error(ErrorCode::CorruptEntry, e.path + ": encrypted entries are not supported");
    }
    if (in.size() <= rec.local_offset || in.size() - rec.local_offset < 30 ||
        in.u32(rec.local_offset) != kLocalHeaderSig) {
        throw Error(ErrorCode::CorruptEntry, e.path + ": local header missing");
    }
    const std::size_t name_len = in.u16(rec.local_offset + 26);
    const std::size_t extra_len = in.u16(rec.local_offset + 28);
    const std::size_t data_off = rec.local_offset + 30 + name_len + extra_len;
    if (data_off > in.size() || e.compressed_size > in.size() - data_off) {
        throw Error(ErrorCode::CorruptEntry, e.path + ": entry data runs past end of archive");
    }
    const auto raw = in.bytes().subspan(data_off, static_cast<std::size_t>(e.compressed_size));

    std::vector<std::uint8_t> data;
    switch (static_cast<ZipMethod>(e.method)) {
    case ZipMethod::Stored:
        if (e.compressed_size != e.size) {
            throw Error(ErrorCode::CorruptEntry, e.path + ": stored entry with differing sizes");
        }
        data.assign(raw.begin(), raw.end());
        break;
    case ZipMethod::Deflated:
        data = inflate_raw(raw, e.size, e.path);
        break;
    default:
        throw Error(ErrorCode::CorruptEntry,
                    e.path + ": unsupported compression method " + std::to_string(e.method));
    }
    const auto crc = static_cast<std::uint32_t>(
        ::crc32(0L, data.data(), static_cast<uInt>(data.size())));
    if (crc != e.crc32) {
        throw Error(ErrorCode::CorruptEntry, e.path + ": CRC mismatch");
    }
    return data;
}

} // namespace

int dex_entry_ordinal(const std::string& name)
{
    if (name == "classes.dex") {
        return 1;
    }
    constexpr std::string_view prefix = "classes";
    constexpr std::string_view suffix = ".dex";
    if (name.size() <= prefix.size() + suffix.size() || !name.starts_with(prefix) ||
        !name.ends_with(suffix)) {
        return 0;
    }
    const std::string digits = name.substr(prefix.size(), name.size() - prefix.size() - suffix.size());
    if (digits.empty() || digits.size() > 6 || digits[0] == '0' ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return 0;
    }
    const int n = std::stoi(digits);
    return n >= 2 ? n : 0;
}

ApkContents read_apk(std::span<const std::uint8_t> archive)
{
    if (archive.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw Error(ErrorCode::NotAZipArchive, "archives above 4 GiB (ZIP64) are not supported");
    }
    const detail::ByteReader in(archive, ErrorCode::NotAZipArchive);
    const std::size_t eocd = find_eocd(in);
    const std::uint16_t total_entries = in.u16(eocd + 10);
    const std::uint32_t cd_size = in.u32(eocd + 12);
    const std::uint32_t cd_offset = in.u32(eocd + 16);
    if (total_entries == 0xffff || cd_offset == 0xffffffff || cd_size == 0xffffffff) {
        throw Error(ErrorCode::NotAZipArchive, "ZIP64 archives are not supported");
    }
    in.require(cd_offset, cd_size, "central directory");

    std::vector<CentralRecord> records;
    records.reserve(total_entries);
    std::size_t pos = cd_offset;
    for (std::uint16_t i = 0; i < total_entries; ++i) {
        if (in.u32(pos) != kCentralHeaderSig) {
            throw Error(ErrorCode::NotAZipArchive,
                        "central directory record " + std::to_string(i) + " has a bad signature");
        }
        CentralRecord rec;
        rec.flags = in.u16(pos + 8);
        rec.entry.method = in.u16(pos + 10);
        rec.entry.crc32 = in.u32(pos + 16);
        rec.entry.compressed_size = in.u32(pos + 20);
        rec.entry.size = in.u32(pos + 24);
        const std::size_t name_len = in.u16(pos + 28);
        const std::size_t extra_len = in.u16(pos + 30);
        const std::size_t comment_len = in.u16(pos + 32);
        rec.local_offset = in.u32(pos + 42);
        const auto name = in.slice(pos + 46, name_len, "entry name");
        rec.entry.path.assign(name.begin(), name.end());
        std::replace(rec.entry.path.begin(), rec.entry.path.end(), '\\', '/');
        pos += 46 + name_len + extra_len + comment_len;
        records.push_back(std::move(rec));
    }

    // Duplicate names resolve to the last record, as the platform does.
    std::map<std::string, std::size_t> last_by_name;
    for (std::size_t i = 0; i < records.size(); ++i) {
        last_by_name[records[i].entry.path] = i;
    }

    ApkContents out;
    const auto manifest = last_by_name.find("AndroidManifest.xml");
    if (manifest == last_by_name.end()) {
        throw Error(ErrorCode::MissingManifest, "archive has no AndroidManifest.xml entry");
    }

    std::vector<std::pair<int, std::size_t>> dex_slots;
    for (const auto& [name, index] : last_by_name) {
        if (const int ordinal = dex_entry_ordinal(name); ordinal > 0) {
            dex_slots.emplace_back(ordinal, index);
        }
    }
    std::sort(dex_slots.begin(), dex_slots.end());

    CentralRecord& mrec = records[manifest->second];
    mrec.entry.data = load_entry(in, mrec);
    mrec.entry.loaded = true;
    out.manifest_bytes = mrec.entry.data;
    for (const auto& [ordinal, index] : dex_slots) {
        CentralRecord& rec = records[index];
        rec.entry.data = load_entry(in, rec);
        rec.entry.loaded = true;
        out.dex_names.push_back(rec.entry.path);
        out.dex_entries.push_back(rec.entry.data);
    }
    out.entry_index.reserve(records.size());
    for (auto& rec : records) {
        out.entry_index.push_back(std::move(rec.entry));
    }
    return out;
}

ApkContents open_apk(const std::filesystem::path& path)
{
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw Error(ErrorCode::Io, "cannot open " + path.string());
    }
    const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(file),
                                          std::istreambuf_iterator<char>()};
    if (file.bad()) {
        throw Error(ErrorCode::Io, "read failed for " + path.string());
    }
    return read_apk(bytes);
}

} // namespace autocomply
