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

#ifndef AUTOCOMPLY_DEX_HPP
#define AUTOCOMPLY_DEX_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace autocomply {

/// Method identity. `owner` is a dotted Java name ("a.b.C$D") for class
/// types; array owners keep their descriptor form. `descriptor` is the
/// DEX prototype form, e.g. "(Ljava/lang/String;I)V".
struct MethodRef {
    std::string owner;
    std::string name;
    std::string descriptor;

    std::string display() const { return owner + "." + name + descriptor; }
    auto operator<=>(const MethodRef&) const = default;
};

enum class InsnKind : std::uint8_t {
    Invoke,
    Return,
    ConstNull,
    Branch,
    Throw,
    MoveResult,
    Other,
    Payload,  // switch / fill-array data; not executable
};

enum class InvokeFlavor : std::uint8_t { None, Virtual, Super, Direct, Static, Interface, Polymorphic };

struct DecodedInsn {
    std::uint32_t offset = 0;   // code units from the start of insns
    std::uint32_t length = 0;   // code units
    std::uint16_t opcode = 0;   // low byte, or the payload ident for Payload
    InsnKind kind = InsnKind::Other;

    // Invoke
    MethodRef target;
    InvokeFlavor flavor = InvokeFlavor::None;
    std::vector<std::uint16_t> args;

    // Return: returned register, absent for return-void.
    std::optional<std::uint16_t> value_reg;

    // Register written by the instruction (ConstNull, MoveResult and any
    // Other that writes vA); `wide` also clobbers dest + 1.
    std::optional<std::uint16_t> dest;
    bool wide = false;
    // Plain register copy (move, move-object): source register.
    std::optional<std::uint16_t> move_src;
    // Type operand of new-instance, check-cast, const-class and friends.
    std::string type_ref;

    // Branch: absolute target offsets in encounter order; conditional
    // branches and switches also fall through.
    std::vector<std::uint32_t> targets;
    bool falls_through = true;

    // Reached the end of a basic straight line (return, throw, goto).
    bool ends_flow() const
    {
        return kind == InsnKind::Return || kind == InsnKind::Throw ||
               (kind == InsnKind::Branch && !falls_through);
    }
};

struct CatchHandler {
    std::string type;  // dotted exception type; empty for catch-all
    std::uint32_t address = 0;
};

struct TryRange {
    std::uint32_t start = 0;  // first covered code unit
    std::uint32_t end = 0;    // one past the last covered code unit
    std::vector<CatchHandler> handlers;
};

struct CodeItem {
    std::uint16_t registers = 0;
    std::uint16_t ins = 0;
    std::uint16_t outs = 0;
    std::uint32_t insns_size = 0;
    std::vector<DecodedInsn> instructions;
    std::vector<TryRange> tries;

    /// Index into `instructions` of the instruction at `offset`, if any.
    std::optional<std::size_t> index_at(std::uint32_t offset) const;
};

struct DexMethod {
    std::string owner;
    std::string name;
    std::string descriptor;
    std::uint32_t access_flags = 0;
    std::optional<CodeItem> code;

    MethodRef ref() const { return {owner, name, descriptor}; }
};

struct DexClass {
    std::string name;                       // dotted
    std::optional<std::string> superclass;  // dotted; absent only for java.lang.Object
    std::vector<std::string> interfaces;
    std::uint32_t access_flags = 0;
    std::vector<DexMethod> methods;
    std::string source;  // DEX entry or fixture the class came from

    const DexMethod* find_method(std::string_view name, std::string_view descriptor) const;
};

/// Decodes every class_def. Throws Error with BadMagic, TruncatedSection,
/// BadIndex or MalformedCode.
std::vector<DexClass> parse_dex(std::span<const std::uint8_t> dex_bytes);

struct MergedClasses {
    std::vector<DexClass> classes;
    std::vector<std::string> warnings;
};

/// Concatenates per-file class lists. The first definition of a class name
/// wins; every later one is dropped and recorded as a warning.
MergedClasses merge_multidex(std::vector<std::vector<DexClass>> per_dex);

/// Classes whose direct superclass, or any superclass reached by walking
/// the chain through app classes, ends in one of `base_name_suffixes` at a
/// package or nesting boundary. Throws CyclicHierarchy on a looping chain.
std::vector<const DexClass*> subclasses_of(const std::vector<DexClass>& classes,
                                           const std::set<std::string>& base_name_suffixes);

/// True when `name` equals `suffix` or ends with "." / "$" followed by it.
bool name_has_suffix(std::string_view name, std::string_view suffix);

/// "Lcom/a/B;" -> "com.a.B". Primitive and array descriptors are returned unchanged.
std::string descriptor_to_java(std::string_view descriptor);
/// "com.a.B" -> "Lcom/a/B;".
std::string java_to_descriptor(std::string_view java_name);

/// Parameter type descriptors of a prototype string.
std::vector<std::string> descriptor_params(std::string_view proto);
std::string descriptor_return(std::string_view proto);

} // namespace autocomply

#endif // AUTOCOMPLY_DEX_HPP
