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

#include <fstream>
#include <functional>
#include <initializer_list>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "autocomply/app_model.hpp"
#include "autocomply/error.hpp"
#include "bytecode.hpp"

namespace autocomply {
namespace {

using json = nlohmann::json;

constexpr std::uint32_t kAccPublic = 0x1;
constexpr std::uint32_t kAccAbstract = 0x400;
constexpr std::uint32_t kAccConstructor = 0x10000;
constexpr std::uint16_t kLocals = 2;
constexpr std::uint16_t kMaxRegisters = 16;

[[noreturn]] void violation(const std::string& path, const std::string& what)
{
    throw Error(ErrorCode::SchemaViolation, path + ": " + what);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed)
{
    if (!obj.is_object()) {
        violation(path, "expected an object");
    }
    for (const auto& [key, value] : obj.items()) {
        bool known = key == "comment";
        for (const char* a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            violation(path + "." + key, "unknown field");
        }
    }
}

std::string string_field(const json& obj, const char* key, const std::string& path, bool required = true)
{
    const auto it = obj.find(key);
    if (it == obj.end()) {
        if (required) {
            violation(path + "." + key, "missing required field");
        }
        return {};
    }
    if (!it->is_string()) {
        violation(path + "." + key, "expected a string");
    }
    std::string value = it->get<std::string>();
    if (required && value.empty()) {
        violation(path + "." + key, "must not be empty");
    }
    return value;
}

const json* array_field(const json& obj, const char* key, const std::string& path)
{
    const auto it = obj.find(key);
    if (it == obj.end()) {
        return nullptr;
    }
    if (!it->is_array()) {
        violation(path + "." + key, "expected an array");
    }
    return &*it;
}

std::string at(const std::string& path, const char* key, std::size_t i)
{
    return path + "." + key + "[" + std::to_string(i) + "]";
}

// Length of one field type descriptor starting at `pos`, 0 when invalid.
std::size_t type_length(std::string_view s, std::size_t pos)
{
    std::size_t j = pos;
    while (j < s.size() && s[j] == '[') {
        ++j;
    }
    if (j >= s.size()) {
        return 0;
    }
    if (s[j] == 'L') {
        const auto semi = s.find(';', j);
        if (semi == std::string_view::npos || semi == j + 1) {
            return 0;
        }
        return semi - pos + 1;
    }
    return std::string_view("ZBSCIJFD").find(s[j]) != std::string_view::npos ? j - pos + 1 : 0;
}

void validate_proto(std::string_view proto, const std::string& path)
{
    if (proto.empty() || proto[0] != '(') {
        violation(path, "descriptor must start with '('");
    }
    std::size_t i = 1;
    while (i < proto.size() && proto[i] != ')') {
        const std::size_t n = type_length(proto, i);
        if (n == 0) {
            violation(path, "malformed parameter type in '" + std::string(proto) + "'");
        }
        i += n;
    }
    if (i >= proto.size()) {
        violation(path, "descriptor has no ')'");
    }
    const std::string_view ret = proto.substr(i + 1);
    if (ret != "V" && type_length(ret, 0) != ret.size()) {
        violation(path, "malformed return type in '" + std::string(proto) + "'");
    }
}

std::uint16_t words_of(const std::vector<std::string>& params)
{
    std::uint16_t n = 1;  // receiver
    for (const std::string& p : params) {
        n = static_cast<std::uint16_t>(n + ((p == "J" || p == "D") ? 2 : 1));
    }
    return n;
}

MethodRef parse_call(std::string_view text, const std::string& path)
{
    const auto paren = text.find('(');
    if (paren == std::string_view::npos) {
        violation(path, "call target needs a descriptor: '" + std::string(text) + "'");
    }
    const std::string_view head = text.substr(0, paren);
    const auto dot = head.rfind('.');
    if (dot == std::string_view::npos || dot == 0 || dot + 1 == head.size()) {
        violation(path, "call target must be Owner.name(descriptor): '" + std::string(text) + "'");
    }
    MethodRef ref{std::string(head.substr(0, dot)), std::string(head.substr(dot + 1)),
                  std::string(text.substr(paren))};
    validate_proto(ref.descriptor, path);
    return ref;
}

std::vector<std::string> split_words(std::string_view s)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string w; in >> w;) {
        out.push_back(w);
    }
    return out;
}

std::uint16_t u(std::uint8_t op, std::uint8_t hi = 0)
{
    return static_cast<std::uint16_t>(op | (hi << 8));
}

using Labels = std::map<std::string, std::uint32_t>;
using Encoder = std::function<void(std::vector<std::uint16_t>&, std::uint32_t, const Labels&)>;

struct Item {
    std::uint32_t size = 0;
    std::string label;  // non-empty for a label marker (size 0)
    Encoder encode;
};

// Lowers one class's methods into the canonical instruction shapes shared
// with the binary fixture generator, then decodes them with the ordinary
// DEX instruction decoder.
class MethodLowering {
public:
    MethodLowering(const DexClass& cls, const std::string& path) : cls_(cls), path_(path) {}

    DexMethod lower(const json& m)
    {
        check_keys(m, path_, {"name", "descriptor", "insns"});
        DexMethod out;
        out.owner = cls_.name;
        out.name = string_field(m, "name", path_);
        out.descriptor = string_field(m, "descriptor", path_);
        validate_proto(out.descriptor, path_ + ".descriptor");
        out.access_flags = kAccPublic | (out.name == "<init>" ? kAccConstructor : 0);
        const json* insns = array_field(m, "insns", path_);
        if (!insns) {
            out.access_flags = kAccPublic | kAccAbstract;
            return out;
        }
        if (insns->empty()) {
            violation(path_ + ".insns", "must not be empty; omit it for an abstract method");
        }

        std::vector<std::string> lines;
        for (std::size_t i = 0; i < insns->size(); ++i) {
            if (!(*insns)[i].is_string()) {
                violation(at(path_, "insns", i), "expected a string");
            }
            lines.push_back((*insns)[i].get<std::string>());
        }

        const std::vector<std::string> params = descriptor_params(out.descriptor);
        const std::string ret = descriptor_return(out.descriptor);
        const std::uint16_t ins_words = words_of(params);
        std::uint16_t max_words = 0;
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (lines[i].starts_with("call ")) {
                const MethodRef target = parse_call(std::string_view(lines[i]).substr(5), at(path_, "insns", i));
                max_words = std::max(max_words, words_of(descriptor_params(target.descriptor)));
            }
        }
        const std::uint16_t registers = std::max<std::uint16_t>(kLocals + ins_words, max_words);
        if (registers > kMaxRegisters) {
            violation(path_, "method needs " + std::to_string(registers) +
                                 " registers; the text frontend supports at most 16");
        }
        const auto p0 = static_cast<std::uint8_t>(registers - ins_words);

        std::vector<Item> body;
        std::vector<std::pair<std::string, Item>> payloads;
        std::set<std::string> defined;
        std::vector<std::pair<std::string, std::string>> used;  // label, path
        int switch_count = 0;
        std::string last_op;

        for (std::size_t i = 0; i < lines.size(); ++i) {
            const std::string ipath = at(path_, "insns", i);
            const std::string& text = lines[i];
            const auto space = text.find(' ');
            const std::string op = text.substr(0, space);
            const std::string arg = space == std::string::npos ? "" : text.substr(space + 1);
            if (op != "label") {
                last_op = op;
            }
            if (op == "call") {
                lower_call(parse_call(arg, ipath), out.name, p0, body);
            } else if (op == "return") {
                if (!arg.empty()) {
                    violation(ipath, "return takes no operand");
                }
                lower_return(ret, body);
            } else if (op == "return-null") {
                if (!arg.empty()) {
                    violation(ipath, "return-null takes no operand");
                }
                if (ret.empty() || (ret[0] != 'L' && ret[0] != '[')) {
                    violation(ipath, "return-null in a method returning " + ret);
                }
                body.push_back({1, {}, [](auto& o, auto, const auto&) { o.push_back(u(0x12, 0)); }});
                body.push_back({1, {}, [](auto& o, auto, const auto&) { o.push_back(u(0x11, 0)); }});
            } else if (op == "label") {
                const auto words = split_words(arg);
                if (words.size() != 1) {
                    violation(ipath, "label takes exactly one name");
                }
                if (!defined.insert(words[0]).second) {
                    violation(ipath, "label '" + words[0] + "' defined twice");
                }
                body.push_back({0, words[0], {}});
            } else if (op == "branch") {
                const auto targets = split_words(arg);
                if (targets.empty()) {
                    violation(ipath, "branch needs at least one label");
                }
                for (const std::string& t : targets) {
                    used.emplace_back(t, ipath);
                }
                lower_branch(targets, p0, switch_count, body, payloads);
            } else {
                violation(ipath, "unknown instruction '" + op + "'");
            }
        }
        for (const auto& [label, where] : used) {
            if (!defined.contains(label)) {
                violation(where, "branch to undefined label '" + label + "'");
            }
        }
        if (last_op != "return" && last_op != "return-null" && last_op != "branch") {
            violation(path_ + ".insns", "execution can fall off the end of the method");
        }
        if (!body.empty() && !body.back().label.empty()) {
            violation(path_ + ".insns", "label '" + body.back().label + "' marks no instruction");
        }

        for (auto& [label, payload] : payloads) {
            if (total_size(body) % 2) {
                body.push_back({1, {}, [](auto& o, auto, const auto&) { o.push_back(0); }});
            }
            body.push_back({0, label, {}});
            body.push_back(std::move(payload));
        }

        Labels labels;
        std::uint32_t addr = 0;
        for (const Item& it : body) {
            if (!it.label.empty()) {
                labels[it.label] = addr;
            }
            addr += it.size;
        }
        std::vector<std::uint16_t> units;
        addr = 0;
        for (const Item& it : body) {
            if (it.encode) {
                it.encode(units, addr, labels);
            }
            addr += it.size;
        }

        detail::RefTables refs;
        refs.strings = strings_;
        refs.types = types_;
        refs.methods = methods_;
        try {
            out.code = detail::decode_code(units, refs, registers, ins_words, max_words, {});
        } catch (const Error& e) {
            violation(path_, std::string("lowered code does not decode: ") + e.what());
        }
        return out;
    }

private:
    static std::uint32_t total_size(const std::vector<Item>& body)
    {
        std::uint32_t n = 0;
        for (const Item& it : body) {
            n += it.size;
        }
        return n;
    }

    template <typename T>
    static std::uint16_t intern(std::vector<T>& table, const T& value)
    {
        for (std::size_t i = 0; i < table.size(); ++i) {
            if (table[i] == value) {
                return static_cast<std::uint16_t>(i);
            }
        }
        table.push_back(value);
        return static_cast<std::uint16_t>(table.size() - 1);
    }

    void lower_call(const MethodRef& target, const std::string& method_name, std::uint8_t p0,
                    std::vector<Item>& body)
    {
        const std::uint16_t words = words_of(descriptor_params(target.descriptor));
        const bool in_ctor_chain = method_name == "<init>" &&
                                   (target.owner == cls_.name ||
                                    (cls_.superclass && target.owner == *cls_.superclass));
        std::vector<std::uint8_t> regs;
        std::uint8_t op = 0x6e;
        if (target.name == "<init>" && !in_ctor_chain) {
            const std::uint16_t type = intern(types_, java_to_descriptor(target.owner));
            body.push_back({2, {}, [type](auto& o, auto, const auto&) {
                                o.push_back(u(0x22, 1));
                                o.push_back(type);
                            }});
            regs.assign(words, 1);
            op = 0x70;
        } else {
            regs.assign(words, 1);
            regs[0] = p0;
            if (target.name == "<init>") {
                op = 0x70;
            } else if (cls_.superclass && target.owner == *cls_.superclass && target.name == method_name) {
                op = 0x6f;
            }
        }
        const std::uint16_t midx = intern(methods_, target);
        if (words <= 5) {
            body.push_back({3, {}, [op, midx, regs](auto& o, auto, const auto&) {
                                std::uint8_t r[5] = {};
                                for (std::size_t k = 0; k < regs.size(); ++k) {
                                    r[k] = regs[k];
                                }
                                const auto count = static_cast<std::uint8_t>(regs.size());
                                o.push_back(u(op, static_cast<std::uint8_t>((count << 4) | (r[4] & 0xf))));
                                o.push_back(midx);
                                o.push_back(static_cast<std::uint16_t>((r[0] & 0xf) | ((r[1] & 0xf) << 4) |
                                                                       ((r[2] & 0xf) << 8) | ((r[3] & 0xf) << 12)));
                            }});
        } else {
            body.push_back({3, {}, [op, midx, words](auto& o, auto, const auto&) {
                                o.push_back(u(static_cast<std::uint8_t>(op + 6), static_cast<std::uint8_t>(words)));
                                o.push_back(midx);
                                o.push_back(0);
                            }});
        }
    }

    void lower_return(const std::string& ret, std::vector<Item>& body)
    {
        if (ret == "V") {
            body.push_back({1, {}, [](auto& o, auto, const auto&) { o.push_back(u(0x0e)); }});
        } else if (ret[0] == 'L') {
            const std::uint16_t type = intern(types_, ret);
            body.push_back({2, {}, [type](auto& o, auto, const auto&) {
                                o.push_back(u(0x22, 0));
                                o.push_back(type);
                            }});
            body.push_back({1, {}, [](auto& o, auto, const auto&) { o.push_back(u(0x11, 0)); }});
        } else if (ret[0] == '[') {
            const std::uint16_t str = intern(strings_, std::string());
            body.push_back({2, {}, [str](auto& o, auto, const auto&) {
                                o.push_back(u(0x1a, 0));
                                o.push_back(str);
                            }});
            body.push_back({1, {}, [](auto& o, auto, const auto&) { o.push_back(u(0x11, 0)); }});
        } else if (ret == "J" || ret == "D") {
            body.push_back({2, {}, [](auto& o, auto, const auto&) {
                                o.push_back(u(0x16, 0));
                                o.push_back(1);
                            }});
            body.push_back({1, {}, [](auto& o, auto, const auto&) { o.push_back(u(0x10, 0)); }});
        } else {
            body.push_back({1, {}, [](auto& o, auto, const auto&) { o.push_back(u(0x12, 1 << 4)); }});
            body.push_back({1, {}, [](auto& o, auto, const auto&) { o.push_back(u(0x0f, 0)); }});
        }
    }

    static Item goto16(const std::string& target)
    {
        return {2, {}, [target](auto& o, std::uint32_t addr, const Labels& l) {
                    o.push_back(u(0x29));
                    o.push_back(static_cast<std::uint16_t>((l.at(target) - addr) & 0xffff));
                }};
    }

    void lower_branch(const std::vector<std::string>& targets, std::uint8_t p0, int& switch_count,
                      std::vector<Item>& body, std::vector<std::pair<std::string, Item>>& payloads)
    {
        if (targets.size() == 1) {
            body.push_back(goto16(targets[0]));
            return;
        }
        if (targets.size() == 2) {
            const std::string second = targets[1];
            body.push_back({2, {}, [p0, second](auto& o, std::uint32_t addr, const Labels& l) {
                                o.push_back(u(0x38, p0));
                                o.push_back(static_cast<std::uint16_t>((l.at(second) - addr) & 0xffff));
                            }});
            body.push_back(goto16(targets[0]));
            return;
        }
        const std::string sw = "__switch" + std::to_string(switch_count);
        const std::string pl = "__payload" + std::to_string(switch_count);
        ++switch_count;
        body.push_back({0, sw, {}});
        body.push_back({3, {}, [p0, pl](auto& o, std::uint32_t addr, const Labels& l) {
                            const std::uint32_t rel = l.at(pl) - addr;
                            o.push_back(u(0x2b, p0));
                            o.push_back(static_cast<std::uint16_t>(rel & 0xffff));
                            o.push_back(static_cast<std::uint16_t>(rel >> 16));
                        }});
        body.push_back(goto16(targets[0]));
        const std::vector<std::string> cases(targets.begin() + 1, targets.end());
        payloads.emplace_back(
            pl, Item{static_cast<std::uint32_t>(4 + 2 * cases.size()), {},
                     [sw, cases](auto& o, std::uint32_t, const Labels& l) {
                         o.push_back(0x0100);
                         o.push_back(static_cast<std::uint16_t>(cases.size()));
                         o.push_back(0);
                         o.push_back(0);
                         for (const std::string& c : cases) {
                             const std::uint32_t rel = l.at(c) - l.at(sw);
                             o.push_back(static_cast<std::uint16_t>(rel & 0xffff));
                             o.push_back(static_cast<std::uint16_t>(rel >> 16));
                         }
                     }});
    }

    const DexClass& cls_;
    std::string path_;
    std::vector<std::string> strings_;
    std::vector<std::string> types_;
    std::vector<MethodRef> methods_;
};

ComponentDecl component_from(const json& c, const std::string& path, const std::string& package)
{
    check_keys(c, path, {"name", "exported", "actions"});
    ComponentDecl out;
    out.class_name = resolve_class_name(package, string_field(c, "name", path));
    out.exported = true;
    if (const auto it = c.find("exported"); it != c.end()) {
        if (!it->is_boolean()) {
            violation(path + ".exported", "expected a boolean");
        }
        out.exported = it->get<bool>();
    }
    if (const json* actions = array_field(c, "actions", path)) {
        for (std::size_t i = 0; i < actions->size(); ++i) {
            if (!(*actions)[i].is_string()) {
                violation(at(path, "actions", i), "expected a string");
            }
            const std::string a = (*actions)[i].get<std::string>();
            if (std::find(out.intent_actions.begin(), out.intent_actions.end(), a) == out.intent_actions.end()) {
                out.intent_actions.push_back(a);
            }
        }
    }
    return out;
}

} // namespace

AppModel load_text_fixture(std::string_view fixture_text, std::string origin)
{
    json doc;
    try {
        doc = json::parse(fixture_text);
    } catch (const json::parse_error& e) {
        violation("$", std::string("not valid JSON: ") + e.what());
    }
    const std::string root = "$";
    check_keys(doc, root, {"package", "meta_data", "services", "activities", "classes"});

    ManifestModel manifest;
    manifest.package_name = string_field(doc, "package", root);
    if (const json* meta = array_field(doc, "meta_data", root)) {
        for (std::size_t i = 0; i < meta->size(); ++i) {
            const std::string path = at(root, "meta_data", i);
            const json& m = (*meta)[i];
            check_keys(m, path, {"name", "resource", "value"});
            MetaDataEntry md;
            md.name = string_field(m, "name", path);
            if (m.contains("resource") && m.contains("value")) {
                violation(path, "give either resource or value, not both");
            }
            md.value = m.contains("resource") ? string_field(m, "resource", path)
                                              : string_field(m, "value", path, false);
            manifest.meta_data.push_back(std::move(md));
        }
    }
    if (const json* services = array_field(doc, "services", root)) {
        for (std::size_t i = 0; i < services->size(); ++i) {
            manifest.services.push_back(
                component_from((*services)[i], at(root, "services", i), manifest.package_name));
        }
    }
    if (const json* activities = array_field(doc, "activities", root)) {
        for (std::size_t i = 0; i < activities->size(); ++i) {
            manifest.activities.push_back(
                component_from((*activities)[i], at(root, "activities", i), manifest.package_name));
        }
    }
    refresh_auto_descriptor(manifest);

    std::vector<DexClass> classes;
    std::set<std::string> class_names;
    if (const json* list = array_field(doc, "classes", root)) {
        for (std::size_t i = 0; i < list->size(); ++i) {
            const std::string path = at(root, "classes", i);
            const json& c = (*list)[i];
            check_keys(c, path, {"name", "super", "interfaces", "methods"});
            DexClass cls;
            cls.name = string_field(c, "name", path);
            if (!class_names.insert(cls.name).second) {
                violation(path + ".name", "class " + cls.name + " defined twice");
            }
            const std::string super = string_field(c, "super", path, false);
            if (!super.empty()) {
                cls.superclass = super;
            } else if (cls.name != "java.lang.Object") {
                cls.superclass = "java.lang.Object";
            }
            if (const json* ifaces = array_field(c, "interfaces", path)) {
                for (std::size_t k = 0; k < ifaces->size(); ++k) {
                    if (!(*ifaces)[k].is_string()) {
                        violation(at(path, "interfaces", k), "expected a string");
                    }
                    cls.interfaces.push_back((*ifaces)[k].get<std::string>());
                }
            }
            cls.access_flags = kAccPublic;
            cls.source = origin;
            std::set<std::pair<std::string, std::string>> seen;
            if (const json* methods = array_field(c, "methods", path)) {
                for (std::size_t k = 0; k < methods->size(); ++k) {
                    const std::string mpath = at(path, "methods", k);
                    DexMethod m = MethodLowering(cls, mpath).lower((*methods)[k]);
                    if (!seen.emplace(m.name, m.descriptor).second) {
                        violation(mpath, "method " + m.name + m.descriptor + " defined twice");
                    }
                    if (m.access_flags & kAccAbstract) {
                        cls.access_flags |= kAccAbstract;
                    }
                    cls.methods.push_back(std::move(m));
                }
            }
            classes.push_back(std::move(cls));
        }
    }
    return AppModel(std::move(manifest), std::move(classes), std::move(origin));
}

AppModel load_text_fixture_file(const std::filesystem::path& path, std::string origin)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return load_text_fixture(text.str(), origin.empty() ? path.string() : std::move(origin));
}

} // namespace autocomply
