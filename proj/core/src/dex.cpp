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

#include "autocomply/dex.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "autocomply/error.hpp"
#include "byte_reader.hpp"
#include "bytecode.hpp"

namespace autocomply {
namespace {

constexpr std::uint32_t kNoIndex = 0xffffffff;
constexpr std::uint32_t kEndianConstant = 0x12345678;
constexpr std::size_t kHeaderSize = 0x70;

struct Section {
    std::uint32_t size = 0;
    std::uint32_t offset = 0;
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

// MUTF-8 (NUL as C0 80, supplementary characters as surrogate pairs) to UTF-8.
std::string read_mutf8(const detail::ByteReader& in, std::size_t pos)
{
    std::vector<std::uint16_t> utf16;
    for (;;) {
        const std::uint8_t a = in.u8(pos++);
        if (a == 0) {
            break;
        }
        if (a < 0x80) {
            utf16.push_back(a);
        } else if ((a & 0xe0) == 0xc0) {
            const std::uint8_t b = in.u8(pos++);
            utf16.push_back(static_cast<std::uint16_t>(((a & 0x1f) << 6) | (b & 0x3f)));
        } else {
            const std::uint8_t b = in.u8(pos++);
            const std::uint8_t c = in.u8(pos++);
            utf16.push_back(static_cast<std::uint16_t>(((a & 0x0f) << 12) | ((b & 0x3f) << 6) | (c & 0x3f)));
        }
    }
    std::string out;
    out.reserve(utf16.size());
    for (std::size_t i = 0; i < utf16.size(); ++i) {
        std::uint32_t cp = utf16[i];
        if (cp >= 0xd800 && cp < 0xdc00 && i + 1 < utf16.size() && utf16[i + 1] >= 0xdc00 &&
            utf16[i + 1] < 0xe000) {
            cp = 0x10000 + ((cp - 0xd800) << 10) + (utf16[i + 1] - 0xdc00);
            ++i;
        }
        append_utf8(out, cp);
    }
    return out;
}

class DexReader {
public:
    explicit DexReader(std::span<const std::uint8_t> bytes)
        : in_(bytes, ErrorCode::TruncatedSection)
    {
    }

    std::vector<DexClass> parse()
    {
        check_header();
        read_strings();
        read_types();
        read_protos();
        read_methods();
        return read_classes();
    }

private:
    void check_header()
    {
        if (in_.size() < 8) {
            throw Error(ErrorCode::BadMagic, "file shorter than the DEX magic");
        }
        const auto magic = in_.slice(0, 8);
        const bool digits = magic[4] >= '0' && magic[4] <= '9' && magic[5] >= '0' && magic[5] <= '9' &&
                            magic[6] >= '0' && magic[6] <= '9';
        if (magic[0] != 'd' || magic[1] != 'e' || magic[2] != 'x' || magic[3] != '\n' || !digits ||
            magic[7] != 0) {
            throw Error(ErrorCode::BadMagic, "missing dex\\n magic");
        }
        const int version = (magic[4] - '0') * 100 + (magic[5] - '0') * 10 + (magic[6] - '0');
        if (version < 35) {
            throw Error(ErrorCode::BadMagic, "DEX version " + std::to_string(version) + " predates 035");
        }
        in_.require(0, kHeaderSize, "header");
        if (in_.u32(40) != kEndianConstant) {
            throw Error(ErrorCode::BadMagic, "unsupported endian tag");
        }
        strings_sec_ = section(56, 4, "string_ids");
        types_sec_ = section(64, 4, "type_ids");
        protos_sec_ = section(72, 12, "proto_ids");
        fields_sec_ = section(80, 8, "field_ids");
        methods_sec_ = section(88, 8, "method_ids");
        classes_sec_ = section(96, 32, "class_defs");
    }

    Section section(std::size_t header_pos, std::size_t entry_size, const char* what) const
    {
        Section s{in_.u32(header_pos), in_.u32(header_pos + 4)};
        if (s.size != 0) {
            in_.require(s.offset, static_cast<std::size_t>(s.size) * entry_size, what);
        }
        return s;
    }

    void read_strings()
    {
        strings_.reserve(strings_sec_.size);
        for (std::uint32_t i = 0; i < strings_sec_.size; ++i) {
            std::size_t pos = in_.u32(strings_sec_.offset + 4 * i);
            in_.uleb128(pos);  // utf16 length, implied by the terminator
            strings_.push_back(read_mutf8(in_, pos));
        }
    }

    const std::string& string_at(std::uint32_t index, const char* what) const
    {
        if (index >= strings_.size()) {
            throw Error(ErrorCode::BadIndex, std::string(what) + " string index " + std::to_string(index));
        }
        return strings_[index];
    }

    const std::string& type_at(std::uint32_t index, const char* what) const
    {
        if (index >= types_.size()) {
            throw Error(ErrorCode::BadIndex, std::string(what) + " type index " + std::to_string(index));
        }
        return types_[index];
    }

    void read_types()
    {
        types_.reserve(types_sec_.size);
        for (std::uint32_t i = 0; i < types_sec_.size; ++i) {
            types_.push_back(string_at(in_.u32(types_sec_.offset + 4 * i), "type_id"));
        }
    }

    std::vector<std::string> type_list(std::uint32_t offset, const char* what) const
    {
        std::vector<std::string> out;
        if (offset == 0) {
            return out;
        }
        const std::uint32_t n = in_.u32(offset);
        in_.require(offset + 4, static_cast<std::size_t>(n) * 2, what);
        for (std::uint32_t k = 0; k < n; ++k) {
            out.push_back(type_at(in_.u16(offset + 4 + 2 * k), what));
        }
        return out;
    }

    void read_protos()
    {
        protos_.reserve(protos_sec_.size);
        for (std::uint32_t i = 0; i < protos_sec_.size; ++i) {
            const std::size_t base = protos_sec_.offset + 12 * static_cast<std::size_t>(i);
            std::string desc = "(";
            for (const std::string& p : type_list(in_.u32(base + 8), "proto parameters")) {
                desc += p;
            }
            desc += ")";
            desc += type_at(in_.u32(base + 4), "proto return");
            protos_.push_back(std::move(desc));
        }
    }

    void read_methods()
    {
        methods_.reserve(methods_sec_.size);
        for (std::uint32_t i = 0; i < methods_sec_.size; ++i) {
            const std::size_t base = methods_sec_.offset + 8 * static_cast<std::size_t>(i);
            const std::uint16_t class_idx = in_.u16(base);
            const std::uint16_t proto_idx = in_.u16(base + 2);
            if (proto_idx >= protos_.size()) {
                throw Error(ErrorCode::BadIndex, "method_id proto index " + std::to_string(proto_idx));
            }
            methods_.push_back({descriptor_to_java(type_at(class_idx, "method_id class")),
                                string_at(in_.u32(base + 4), "method_id name"), protos_[proto_idx]});
        }
    }

    std::vector<TryRange> read_tries(std::size_t code_off, std::uint16_t tries_size,
                                     std::uint32_t insns_size) const
    {
        std::vector<TryRange> out;
        if (tries_size == 0) {
            return out;
        }
        std::size_t tries_off = code_off + 16 + static_cast<std::size_t>(insns_size) * 2;
        if (insns_size % 2) {
            tries_off += 2;
        }
        in_.require(tries_off, static_cast<std::size_t>(tries_size) * 8, "try_items");
        const std::size_t handlers_base = tries_off + static_cast<std::size_t>(tries_size) * 8;
        for (std::uint16_t t = 0; t < tries_size; ++t) {
            const std::size_t item = tries_off + 8 * static_cast<std::size_t>(t);
            TryRange tr;
            tr.start = in_.u32(item);
            tr.end = tr.start + in_.u16(item + 4);
            std::size_t pos = handlers_base + in_.u16(item + 6);
            const std::int32_t size = in_.sleb128(pos);
            const std::int32_t typed = size < 0 ? -size : size;
            for (std::int32_t h = 0; h < typed; ++h) {
                const std::uint32_t type_idx = in_.uleb128(pos);
                const std::uint32_t addr = in_.uleb128(pos);
                tr.handlers.push_back({descriptor_to_java(type_at(type_idx, "catch type")), addr});
            }
            if (size <= 0) {
                tr.handlers.push_back({"", in_.uleb128(pos)});
            }
            out.push_back(std::move(tr));
        }
        return out;
    }

    CodeItem read_code(std::uint32_t code_off) const
    {
        in_.require(code_off, 16, "code_item");
        const std::uint16_t registers = in_.u16(code_off);
        const std::uint16_t ins = in_.u16(code_off + 2);
        const std::uint16_t outs = in_.u16(code_off + 4);
        const std::uint16_t tries_size = in_.u16(code_off + 6);
        const std::uint32_t insns_size = in_.u32(code_off + 12);
        const auto raw = in_.slice(code_off + 16, static_cast<std::size_t>(insns_size) * 2, "insns");
        std::vector<std::uint16_t> units(insns_size);
        for (std::uint32_t k = 0; k < insns_size; ++k) {
            units[k] = static_cast<std::uint16_t>(raw[2 * k] | (raw[2 * k + 1] << 8));
        }
        detail::RefTables refs;
        refs.strings = strings_;
        refs.types = types_;
        refs.methods = methods_;
        refs.field_count = fields_sec_.size;
        refs.proto_count = protos_.size();
        refs.method_handle_count = kNoIndex;  // not tracked; the map_list is optional
        refs.call_site_count = kNoIndex;
        return detail::decode_code(units, refs, registers, ins, outs,
                                   read_tries(code_off, tries_size, insns_size));
    }

    void read_encoded_methods(std::size_t& pos, std::uint32_t count, DexClass& cls) const
    {
        std::uint32_t method_idx = 0;
        for (std::uint32_t k = 0; k < count; ++k) {
            method_idx += in_.uleb128(pos);
            const std::uint32_t access = in_.uleb128(pos);
            const std::uint32_t code_off = in_.uleb128(pos);
            if (method_idx >= methods_.size()) {
                throw Error(ErrorCode::BadIndex, "encoded method index " + std::to_string(method_idx));
            }
            const MethodRef& ref = methods_[method_idx];
            DexMethod m;
            m.owner = ref.owner;
            m.name = ref.name;
            m.descriptor = ref.descriptor;
            m.access_flags = access;
            if (code_off != 0) {
                try {
                    m.code = read_code(code_off);
                } catch (const Error& e) {
                    throw Error(e.code(), std::string(e.what()) + " in " + ref.display());
                }
            }
            cls.methods.push_back(std::move(m));
        }
    }

    std::vector<DexClass> read_classes() const
    {
        std::vector<DexClass> out;
        out.reserve(classes_sec_.size);
        for (std::uint32_t i = 0; i < classes_sec_.size; ++i) {
            const std::size_t base = classes_sec_.offset + 32 * static_cast<std::size_t>(i);
            DexClass cls;
            cls.name = descriptor_to_java(type_at(in_.u32(base), "class_def"));
            cls.access_flags = in_.u32(base + 4);
            if (const std::uint32_t sup = in_.u32(base + 8); sup != kNoIndex) {
                cls.superclass = descriptor_to_java(type_at(sup, "superclass"));
            }
            for (const std::string& iface : type_list(in_.u32(base + 12), "interfaces")) {
                cls.interfaces.push_back(descriptor_to_java(iface));
            }
            if (const std::uint32_t data_off = in_.u32(base + 24); data_off != 0) {
                std::size_t pos = data_off;
                const std::uint32_t static_fields = in_.uleb128(pos);
                const std::uint32_t instance_fields = in_.uleb128(pos);
                const std::uint32_t direct = in_.uleb128(pos);
                const std::uint32_t virt = in_.uleb128(pos);
                for (std::uint32_t f = 0; f < static_fields + instance_fields; ++f) {
                    in_.uleb128(pos);
                    in_.uleb128(pos);
                }
                read_encoded_methods(pos, direct, cls);
                read_encoded_methods(pos, virt, cls);
            }
            out.push_back(std::move(cls));
        }
        return out;
    }

    detail::ByteReader in_;
    Section strings_sec_, types_sec_, protos_sec_, fields_sec_, methods_sec_, classes_sec_;
    std::vector<std::string> strings_;
    std::vector<std::string> types_;
    std::vector<std::string> protos_;
    std::vector<MethodRef> methods_;
};

} // namespace

std::optional<std::size_t> CodeItem::index_at(std::uint32_t offset) const
{
    const auto it = std::lower_bound(instructions.begin(), instructions.end(), offset,
                                     [](const DecodedInsn& d, std::uint32_t o) { return d.offset < o; });
    if (it == instructions.end() || it->offset != offset) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - instructions.begin());
}

const DexMethod* DexClass::find_method(std::string_view method_name, std::string_view descriptor) const
{
    for (const DexMethod& m : methods) {
        if (m.name == method_name && m.descriptor == descriptor) {
            return &m;
        }
    }
    return nullptr;
}

std::vector<DexClass> parse_dex(std::span<const std::uint8_t> dex_bytes)
{
    return DexReader(dex_bytes).parse();
}

MergedClasses merge_multidex(std::vector<std::vector<DexClass>> per_dex)
{
    MergedClasses out;
    std::unordered_map<std::string, std::string> seen;  // name -> source of the kept definition
    for (auto& file : per_dex) {
        for (auto& cls : file) {
            const auto [it, fresh] = seen.emplace(cls.name, cls.source);
            if (!fresh) {
                std::string msg = "duplicate class " + cls.name;
                if (!cls.source.empty()) {
                    msg += " in " + cls.source;
                }
                if (!it->second.empty()) {
                    msg += "; keeping the definition from " + it->second;
                }
                out.warnings.push_back(std::move(msg));
                continue;
            }
            out.classes.push_back(std::move(cls));
        }
    }
    return out;
}

bool name_has_suffix(std::string_view name, std::string_view suffix)
{
    if (suffix.empty() || !name.ends_with(suffix)) {
        return false;
    }
    if (name.size() == suffix.size()) {
        return true;
    }
    const char boundary = name[name.size() - suffix.size() - 1];
    return boundary == '.' || boundary == '$';
}

std::vector<const DexClass*> subclasses_of(const std::vector<DexClass>& classes,
                                           const std::set<std::string>& base_name_suffixes)
{
    std::unordered_map<std::string_view, const DexClass*> by_name;
    for (const DexClass& c : classes) {
        by_name.emplace(c.name, &c);
    }
    auto matches = [&](const std::string& name) {
        return std::any_of(base_name_suffixes.begin(), base_name_suffixes.end(),
                           [&](const std::string& s) { return name_has_suffix(name, s); });
    };

    std::vector<const DexClass*> out;
    for (const DexClass& c : classes) {
        std::unordered_set<std::string_view> visited{c.name};
        const DexClass* cur = &c;
        while (cur->superclass) {
            const std::string& sup = *cur->superclass;
            if (matches(sup)) {
                out.push_back(&c);
                break;
            }
            const auto next = by_name.find(sup);
            if (next == by_name.end()) {
                break;
            }
            if (!visited.insert(next->second->name).second) {
                throw Error(ErrorCode::CyclicHierarchy, "superclass chain of " + c.name + " revisits " + sup);
            }
            cur = next->second;
        }
    }
    return out;
}

std::string descriptor_to_java(std::string_view descriptor)
{
    if (descriptor.size() >= 3 && descriptor.front() == 'L' && descriptor.back() == ';') {
        std::string out(descriptor.substr(1, descriptor.size() - 2));
        std::replace(out.begin(), out.end(), '/', '.');
        return out;
    }
    return std::string(descriptor);
}

std::string java_to_descriptor(std::string_view java_name)
{
    std::string out = "L";
    out += java_name;
    std::replace(out.begin(), out.end(), '.', '/');
    out += ';';
    return out;
}

std::vector<std::string> descriptor_params(std::string_view proto)
{
    std::vector<std::string> out;
    const auto open = proto.find('(');
    const auto close = proto.find(')');
    if (open != 0 || close == std::string_view::npos) {
        return out;
    }
    std::size_t i = 1;
    while (i < close) {
        std::size_t j = i;
        while (j < close && proto[j] == '[') {
            ++j;
        }
        if (j < close && proto[j] == 'L') {
            j = proto.find(';', j);
            if (j == std::string_view::npos || j > close) {
                return {};
            }
        }
        out.emplace_back(proto.substr(i, j - i + 1));
        i = j + 1;
    }
    return out;
}

std::string descriptor_return(std::string_view proto)
{
    const auto close = proto.find(')');
    return close == std::string_view::npos ? std::string() : std::string(proto.substr(close + 1));
}

} // namespace autocomply
