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

#include <cstdio>
#include <cstring>
#include <optional>

#include "autocomply/error.hpp"
#include "autocomply/manifest.hpp"
#include "byte_reader.hpp"

namespace autocomply {
namespace {

constexpr std::uint16_t kResXmlType = 0x0003;
constexpr std::uint16_t kStringPoolType = 0x0001;
constexpr std::uint16_t kResourceMapType = 0x0180;
constexpr std::uint16_t kStartNamespaceType = 0x0100;
constexpr std::uint16_t kEndNamespaceType = 0x0101;
constexpr std::uint16_t kStartElementType = 0x0102;
constexpr std::uint16_t kEndElementType = 0x0103;
constexpr std::uint32_t kNoIndex = 0xffffffff;
constexpr std::uint32_t kUtf8Flag = 1u << 8;

constexpr std::uint8_t kTypeNull = 0x00;
constexpr std::uint8_t kTypeReference = 0x01;
constexpr std::uint8_t kTypeAttribute = 0x02;
constexpr std::uint8_t kTypeString = 0x03;
constexpr std::uint8_t kTypeFloat = 0x04;
constexpr std::uint8_t kTypeIntDec = 0x10;
constexpr std::uint8_t kTypeIntHex = 0x11;
constexpr std::uint8_t kTypeIntBoolean = 0x12;

// Framework attribute ids, used when a tool has stripped the name strings.
struct KnownAttr {
    std::uint32_t id;
    const char* name;
};
constexpr KnownAttr kKnownAttrs[] = {
    {0x01010001, "label"},   {0x01010002, "icon"},     {0x01010003, "name"},
    {0x0101000e, "enabled"}, {0x01010010, "exported"}, {0x01010024, "value"},
    {0x01010025, "resource"},
};

void append_utf8(std::string& out, std::uint32_t cp)
{
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xc0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xe0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    } else {
        out += static_cast<char>(0xf0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3f));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    }
}

[[noreturn]] void corrupt_pool(std::uint32_t index, const char* what)
{
    throw Error(ErrorCode::StringPoolCorrupt, "string " + std::to_string(index) + ": " + what);
}

std::vector<std::string> read_string_pool(const detail::ByteReader& chunk)
{
    const std::uint16_t header_size = chunk.u16(2);
    const std::uint32_t count = chunk.u32(8);
    const std::uint32_t flags = chunk.u32(16);
    const std::uint32_t strings_start = chunk.u32(20);
    if (header_size < 28 || count > chunk.size() / 4 ||
        static_cast<std::uint64_t>(header_size) + 4ull * count > chunk.size() ||
        strings_start > chunk.size()) {
        throw Error(ErrorCode::StringPoolCorrupt, "string pool header inconsistent with its size");
    }
    const bool utf8 = flags & kUtf8Flag;
    std::vector<std::string> out;
    out.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        const std::uint64_t at = static_cast<std::uint64_t>(strings_start) + chunk.u32(header_size + 4 * i);
        if (at >= chunk.size()) {
            corrupt_pool(i, "offset outside the pool");
        }
        std::size_t pos = static_cast<std::size_t>(at);
        auto need = [&](std::size_t n) {
            if (pos > chunk.size() || n > chunk.size() - pos) {
                corrupt_pool(i, "data runs past the pool");
            }
        };
        std::string s;
        if (utf8) {
            auto length8 = [&]() -> std::size_t {
                need(1);
                std::size_t n = chunk.u8(pos++);
                if (n & 0x80) {
                    need(1);
                    n = ((n & 0x7f) << 8) | chunk.u8(pos++);
                }
                return n;
            };
            length8();  // UTF-16 length, unused
            const std::size_t n = length8();
            need(n + 1);
            const auto raw = chunk.slice(pos, n);
            if (chunk.u8(pos + n) != 0) {
                corrupt_pool(i, "missing terminator");
            }
            s.assign(raw.begin(), raw.end());
        } else {
            need(2);
            std::size_t n = chunk.u16(pos);
            pos += 2;
            if (n & 0x8000) {
                need(2);
                n = ((n & 0x7fff) << 16) | chunk.u16(pos);
                pos += 2;
            }
            need(n * 2 + 2);
            if (chunk.u16(pos + n * 2) != 0) {
                corrupt_pool(i, "missing terminator");
            }
            for (std::size_t k = 0; k < n; ++k) {
                std::uint32_t cp = chunk.u16(pos + 2 * k);
                if (cp >= 0xd800 && cp < 0xdc00) {
                    const std::uint32_t lo = k + 1 < n ? chunk.u16(pos + 2 * (k + 1)) : 0;
                    if (lo < 0xdc00 || lo >= 0xe000) {
                        corrupt_pool(i, "unpaired surrogate");
                    }
                    cp = 0x10000 + ((cp - 0xd800) << 10) + (lo - 0xdc00);
                    ++k;
                } else if (cp >= 0xdc00 && cp < 0xe000) {
                    corrupt_pool(i, "unpaired surrogate");
                }
                append_utf8(s, cp);
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

class AxmlDecoder {
public:
    explicit AxmlDecoder(std::span<const std::uint8_t> bytes)
        : in_(bytes, ErrorCode::TruncatedChunk)
    {
    }

    XmlElement decode()
    {
        if (in_.size() < 8 || in_.u16(0) != kResXmlType) {
            throw Error(ErrorCode::NotAxml, "document does not start with an XML chunk");
        }
        const std::uint16_t header_size = in_.u16(2);
        const std::uint32_t total = in_.u32(4);
        if (total > in_.size()) {
            throw Error(ErrorCode::TruncatedChunk, "XML chunk declares " + std::to_string(total) +
                                                       " bytes but only " + std::to_string(in_.size()) +
                                                       " are present");
        }
        if (header_size < 8 || header_size > total) {
            throw Error(ErrorCode::NotAxml, "XML chunk header size is invalid");
        }
        // Everything below reads through a view clipped to the declared size.
        const detail::ByteReader doc(in_.bytes().first(total), ErrorCode::TruncatedChunk);

        std::size_t pos = header_size;
        while (pos < total) {
            if (total - pos < 8) {
                throw Error(ErrorCode::TruncatedChunk, "chunk header cut off at offset " + std::to_string(pos));
            }
            const std::uint16_t type = doc.u16(pos);
            const std::uint16_t chunk_header = doc.u16(pos + 2);
            const std::uint32_t size = doc.u32(pos + 4);
            if (size < 8 || size > total - pos || chunk_header > size) {
                throw Error(ErrorCode::TruncatedChunk,
                            "chunk at offset " + std::to_string(pos) + " declares size " + std::to_string(size));
            }
            const detail::ByteReader chunk(doc.slice(pos, size), ErrorCode::TruncatedChunk);
            switch (type) {
            case kStringPoolType:
                if (!have_pool_) {
                    strings_ = read_string_pool(chunk);
                    have_pool_ = true;
                }
                break;
            case kResourceMapType:
                for (std::size_t k = chunk_header; k + 4 <= size; k += 4) {
                    resource_ids_.push_back(chunk.u32(k));
                }
                break;
            case kStartElementType:
                start_element(chunk, chunk_header);
                break;
            case kEndElementType:
                end_element();
                break;
            case kStartNamespaceType:
            case kEndNamespaceType:
            default:
                break;
            }
            pos += size;
        }
        if (!stack_.empty()) {
            throw Error(ErrorCode::NotAxml, "document ends inside an element");
        }
        if (!root_) {
            throw Error(ErrorCode::NotAxml, "document has no root element");
        }
        return std::move(*root_);
    }

private:
    std::string str(std::uint32_t index) const
    {
        if (index == kNoIndex) {
            return {};
        }
        if (!have_pool_ || index >= strings_.size()) {
            throw Error(ErrorCode::StringPoolCorrupt, "string index " + std::to_string(index) +
                                                          " outside a pool of " +
                                                          std::to_string(strings_.size()));
        }
        return strings_[index];
    }

    std::string attribute_name(std::uint32_t index) const
    {
        std::string name = str(index);
        if (name.empty() && index < resource_ids_.size()) {
            for (const KnownAttr& k : kKnownAttrs) {
                if (k.id == resource_ids_[index]) {
                    return k.name;
                }
            }
        }
        return name;
    }

    std::string render(std::uint32_t raw, std::uint8_t type, std::uint32_t data) const
    {
        char buf[32];
        switch (type) {
        case kTypeString:
            return str(raw != kNoIndex ? raw : data);
        case kTypeReference:
            std::snprintf(buf, sizeof buf, "@0x%08x", data);
            return buf;
        case kTypeAttribute:
            std::snprintf(buf, sizeof buf, "?0x%08x", data);
            return buf;
        case kTypeIntDec:
            return std::to_string(static_cast<std::int32_t>(data));
        case kTypeIntHex:
            std::snprintf(buf, sizeof buf, "0x%x", data);
            return buf;
        case kTypeIntBoolean:
            return data != 0 ? "true" : "false";
        case kTypeFloat: {
            float f = 0;
            static_assert(sizeof f == sizeof data);
            std::memcpy(&f, &data, sizeof f);
            std::snprintf(buf, sizeof buf, "%g", static_cast<double>(f));
            return buf;
        }
        case kTypeNull:
            return raw != kNoIndex ? str(raw) : std::string();
        default:
            if (raw != kNoIndex) {
                return str(raw);
            }
            std::snprintf(buf, sizeof buf, "0x%08x", data);
            return buf;
        }
    }

    void start_element(const detail::ByteReader& chunk, std::uint16_t header_size)
    {
        XmlElement el;
        const std::size_t ext = header_size;
        el.ns = str(chunk.u32(ext));
        el.name = str(chunk.u32(ext + 4));
        const std::uint16_t attr_start = chunk.u16(ext + 8);
        const std::uint16_t attr_size = chunk.u16(ext + 10);
        const std::uint16_t attr_count = chunk.u16(ext + 12);
        if (attr_count > 0 && attr_size < 20) {
            throw Error(ErrorCode::NotAxml, "attribute records shorter than 20 bytes");
        }
        chunk.require(ext + attr_start, static_cast<std::size_t>(attr_size) * attr_count, "attributes");
        for (std::uint16_t k = 0; k < attr_count; ++k) {
            const std::size_t at = ext + attr_start + static_cast<std::size_t>(k) * attr_size;
            XmlAttribute a;
            a.ns = str(chunk.u32(at));
            a.name = attribute_name(chunk.u32(at + 4));
            const std::uint32_t raw = chunk.u32(at + 8);
            a.data_type = chunk.u8(at + 15);
            a.value = render(raw, a.data_type, chunk.u32(at + 16));
            el.attributes.push_back(std::move(a));
        }
        if (stack_.empty() && root_) {
            throw Error(ErrorCode::NotAxml, "second root element <" + el.name + ">");
        }
        stack_.push_back(std::move(el));
    }

    void end_element()
    {
        if (stack_.empty()) {
            throw Error(ErrorCode::NotAxml, "end tag without a matching start tag");
        }
        XmlElement done = std::move(stack_.back());
        stack_.pop_back();
        if (stack_.empty()) {
            root_ = std::move(done);
        } else {
            stack_.back().children.push_back(std::move(done));
        }
    }

    detail::ByteReader in_;
    bool have_pool_ = false;
    std::vector<std::string> strings_;
    std::vector<std::uint32_t> resource_ids_;
    std::vector<XmlElement> stack_;
    std::optional<XmlElement> root_;
};

} // namespace

const XmlAttribute* XmlElement::attribute(std::string_view local_name) const
{
    for (const XmlAttribute& a : attributes) {
        if (a.name == local_name) {
            return &a;
        }
    }
    return nullptr;
}

XmlElement decode_axml(std::span<const std::uint8_t> bytes)
{
    return AxmlDecoder(bytes).decode();
}

} // namespace autocomply
