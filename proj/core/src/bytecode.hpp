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

#ifndef AUTOCOMPLY_BYTECODE_HPP
#define AUTOCOMPLY_BYTECODE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "autocomply/dex.hpp"

namespace autocomply::detail {

// Constant pools an instruction stream indexes into. Types hold raw
// descriptors ("Lcom/a/B;").
struct RefTables {
    std::span<const std::string> strings;
    std::span<const std::string> types;
    std::span<const MethodRef> methods;
    std::size_t field_count = 0;
    std::size_t proto_count = 0;
    std::size_t method_handle_count = 0;
    std::size_t call_site_count = 0;
};

// Code-unit width of an opcode, 0 for opcodes unassigned in the v035-v039
// instruction set.
unsigned opcode_width(std::uint8_t opcode);

// Linear-sweep decoding of one insns array. Payload pseudo-instructions
// become InsnKind::Payload entries. Throws MalformedCode for unassigned
// opcodes, instructions running past the end, or branch targets that do not
// land on an instruction, and BadIndex for out-of-range pool references.
CodeItem decode_code(std::span<const std::uint16_t> units, const RefTables& refs,
                     std::uint16_t registers, std::uint16_t ins, std::uint16_t outs,
                     std::vector<TryRange> tries);

} // namespace autocomply::detail

#endif // AUTOCOMPLY_BYTECODE_HPP
