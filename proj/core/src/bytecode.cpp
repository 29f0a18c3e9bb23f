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

#include "bytecode.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

#include "autocomply/error.hpp"

namespace autocomply::detail {
namespace {

enum class Fmt : std::uint8_t {
    Unused, F10x, F12x, F11n, F11x, F10t, F20t, F22x, F21t, F21s, F21h, F21c, F23x, F22b,
    F22t, F22s, F22c, F32x, F30t, F31t, F31i, F31c, F35c, F3rc, F45cc, F4rcc, F51l,
};

constexpr unsigned width_of(Fmt f)
{
    switch (f) {
    case Fmt::Unused: return 0;
    case Fmt::F10x: case Fmt::F12x: case Fmt::F11n: case Fmt::F11x: case Fmt::F10t: return 1;
    case Fmt::F20t: case Fmt::F22x: case Fmt::F21t: case Fmt::F21s: case Fmt::F21h:
    case Fmt::F21c: case Fmt::F23x: case Fmt::F22b: case Fmt::F22t: case Fmt::F22s:
    case Fmt::F22c: return 2;
    case Fmt::F32x: case Fmt::F30t: case Fmt::F31t: case Fmt::F31i: case Fmt::F31c:
    case Fmt::F35c: case Fmt::F3rc: return 3;
    case Fmt::F45cc: case Fmt::F4rcc: return 4;
    case Fmt::F51l: return 5;
    }
    return 0;
}

constexpr std::array<Fmt, 256> make_format_table()
{
    std::array<Fmt, 256> t{};
    auto fill = [&t](int lo, int hi, Fmt f) {
        for (int op = lo; op <= hi; ++op) {
            t[static_cast<std::size_t>(op)] = f;
        }
    };
    fill(0x00, 0x00, Fmt::F10x);
    fill(0x01, 0x01, Fmt::F12x); fill(0x02, 0x02, Fmt::F22x); fill(0x03, 0x03, Fmt::F32x);
    fill(0x04, 0x04, Fmt::F12x); fill(0x05, 0x05, Fmt::F22x); fill(0x06, 0x06, Fmt::F32x);
    fill(0x07, 0x07, Fmt::F12x); fill(0x08, 0x08, Fmt::F22x); fill(0x09, 0x09, Fmt::F32x);
    fill(0x0a, 0x0d, Fmt::F11x);
    fill(0x0e, 0x0e, Fmt::F10x);
    fill(0x0f, 0x11, Fmt::F11x);
    fill(0x12, 0x12, Fmt::F11n); fill(0x13, 0x13, Fmt::F21s); fill(0x14, 0x14, Fmt::F31i);
    fill(0x15, 0x15, Fmt::F21h); fill(0x16, 0x16, Fmt::F21s); fill(0x17, 0x17, Fmt::F31i);
    fill(0x18, 0x18, Fmt::F51l); fill(0x19, 0x19, Fmt::F21h);
    fill(0x1a, 0x1a, Fmt::F21c); fill(0x1b, 0x1b, Fmt::F31c); fill(0x1c, 0x1c, Fmt::F21c);
    fill(0x1d, 0x1e, Fmt::F11x);
    fill(0x1f, 0x1f, Fmt::F21c); fill(0x20, 0x20, Fmt::F22c); fill(0x21, 0x21, Fmt::F12x);
    fill(0x22, 0x22, Fmt::F21c); fill(0x23, 0x23, Fmt::F22c);
    fill(0x24, 0x24, Fmt::F35c); fill(0x25, 0x25, Fmt::F3rc);
    fill(0x26, 0x26, Fmt::F31t); fill(0x27, 0x27, Fmt::F11x);
    fill(0x28, 0x28, Fmt::F10t); fill(0x29, 0x29, Fmt::F20t); fill(0x2a, 0x2a, Fmt::F30t);
    fill(0x2b, 0x2c, Fmt::F31t);
    fill(0x2d, 0x31, Fmt::F23x);
    fill(0x32, 0x37, Fmt::F22t);
    fill(0x38, 0x3d, Fmt::F21t);
    fill(0x44, 0x51, Fmt::F23x);
    fill(0x52, 0x5f, Fmt::F22c);
    fill(0x60, 0x6d, Fmt::F21c);
    fill(0x6e, 0x72, Fmt::F35c);
    fill(0x74, 0x78, Fmt::F3rc);
    fill(0x7b, 0x8f, Fmt::F12x);
    fill(0x90, 0xaf, Fmt::F23x);
    fill(0xb0, 0xcf, Fmt::F12x);
    fill(0xd0, 0xd7, Fmt::F22s);
    fill(0xd8, 0xe2, Fmt::F22b);
    fill(0xfa, 0xfa, Fmt::F45cc); fill(0xfb, 0xfb, Fmt::F4rcc);
    fill(0xfc, 0xfc, Fmt::F35c); fill(0xfd, 0xfd, Fmt::F3rc);
    fill(0xfe, 0xff, Fmt::F21c);
    return t;
}

constexpr std::array<Fmt, 256> kFormats = make_format_table();

constexpr std::uint16_t kPackedSwitchIdent = 0x0100;
constexpr std::uint16_t kSparseSwitchIdent = 0x0200;
constexpr std::uint16_t kFillArrayIdent = 0x0300;

enum class Pool : std::uint8_t { None, String, Type, Field, Method, Proto, MethodHandle, CallSite };

Pool pool_of(std::uint8_t op)
{
    if (op == 0x1a || op == 0x1b) return Pool::String;
    if (op == 0x1c || op == 0x1f || op == 0x20 || op == 0x22 || op == 0x23 || op == 0x24 ||
        op == 0x25) return Pool::Type;
    if (op >= 0x52 && op <= 0x6d) return Pool::Field;
    if ((op >= 0x6e && op <= 0x72) || (op >= 0x74 && op <= 0x78) || op == 0xfa || op == 0xfb)
        return Pool::Method;
    if (op == 0xfc || op == 0xfd) return Pool::CallSite;
    if (op == 0xfe) return Pool::MethodHandle;
    if (op == 0xff) return Pool::Proto;
    return Pool::None;
}

// Opcodes whose vA is a destination register, and whether it is a pair.
struct DestInfo {
    bool writes = false;
    bool wide = false;
};

DestInfo dest_info(std::uint8_t op)
{
    auto in = [op](int lo, int hi) { return op >= lo && op <= hi; };
    if (in(0x01, 0x09)) return {true, in(0x04, 0x06)};
    if (op == 0x0d) return {true, false};
    if (in(0x12, 0x15)) return {true, false};
    if (in(0x16, 0x19)) return {true, true};
    if (in(0x1a, 0x1c)) return {true, false};
    if (in(0x20, 0x23)) return {true, false};
    if (in(0x2d, 0x31)) return {true, false};
    if (in(0x44, 0x4a)) return {true, op == 0x45};
    if (in(0x52, 0x58)) return {true, op == 0x53};
    if (in(0x60, 0x66)) return {true, op == 0x61};
    if (in(0x7b, 0x8f)) {
        switch (op) {
        case 0x7d: case 0x7e: case 0x80: case 0x81: case 0x83: case 0x86: case 0x88:
        case 0x89: case 0x8b: return {true, true};
        default: return {true, false};
        }
    }
    if (in(0x90, 0xaf)) return {true, in(0x9b, 0xa5) || in(0xab, 0xaf)};
    if (in(0xb0, 0xcf)) return {true, in(0xbb, 0xc5) || in(0xcb, 0xcf)};
    if (in(0xd0, 0xe2)) return {true, false};
    if (op == 0xfe || op == 0xff) return {true, false};
    return {};
}

InvokeFlavor flavor_of(std::uint8_t op)
{
    switch (op) {
    case 0x6e: case 0x74: return InvokeFlavor::Virtual;
    case 0x6f: case 0x75: return InvokeFlavor::Super;
    case 0x70: case 0x76: return InvokeFlavor::Direct;
    case 0x71: case 0x77: return InvokeFlavor::Static;
    case 0x72: case 0x78: return InvokeFlavor::Interface;
    case 0xfa: case 0xfb: return InvokeFlavor::Polymorphic;
    default: return InvokeFlavor::None;
    }
}

[[noreturn]] void malformed(std::uint32_t offset, const std::string& what)
{
    throw Error(ErrorCode::MalformedCode, what + " at code unit " + std::to_string(offset));
}

std::size_t pool_size(const RefTables& refs, Pool pool)
{
    switch (pool) {
    case Pool::String: return refs.strings.size();
    case Pool::Type: return refs.types.size();
    case Pool::Field: return refs.field_count;
    case Pool::Method: return refs.methods.size();
    case Pool::Proto: return refs.proto_count;
    case Pool::MethodHandle: return refs.method_handle_count;
    case Pool::CallSite: return refs.call_site_count;
    case Pool::None: return 0;
    }
    return 0;
}

std::uint32_t payload_width(std::span<const std::uint16_t> units, std::size_t at)
{
    const std::uint16_t ident = units[at];
    auto unit = [&](std::size_t k) -> std::uint32_t {
        if (at + k >= units.size()) {
            malformed(static_cast<std::uint32_t>(at), "payload header runs past end of code");
        }
        return units[at + k];
    };
    switch (ident) {
    case kPackedSwitchIdent: return 4 + unit(1) * 2;
    case kSparseSwitchIdent: return 2 + unit(1) * 4;
    case kFillArrayIdent: {
        const std::uint64_t element_width = unit(1);
        const std::uint64_t count = unit(2) | (unit(3) << 16);
        const std::uint64_t total = 4 + (element_width * count + 1) / 2;
        if (total > units.size()) {
            malformed(static_cast<std::uint32_t>(at), "fill-array payload larger than code");
        }
        return static_cast<std::uint32_t>(total);
    }
    default: return 0;
    }
}

std::int32_t s32(std::uint16_t lo, std::uint16_t hi)
{
    return static_cast<std::int32_t>(static_cast<std::uint32_t>(lo) |
                                     (static_cast<std::uint32_t>(hi) << 16));
}

} // namespace

unsigned opcode_width(std::uint8_t opcode)
{
    return width_of(kFormats[opcode]);
}

CodeItem decode_code(std::span<const std::uint16_t> units, const RefTables& refs,
                     std::uint16_t registers, std::uint16_t ins, std::uint16_t outs,
                     std::vector<TryRange> tries)
{
    CodeItem code;
    code.registers = registers;
    code.ins = ins;
    code.outs = outs;
    code.insns_size = static_cast<std::uint32_t>(units.size());

    struct PendingSwitch {
        std::size_t insn;
        std::uint32_t payload;
        std::uint16_t ident;
    };
    std::vector<PendingSwitch> switches;

    std::size_t pc = 0;
    while (pc < units.size()) {
        const auto offset = static_cast<std::uint32_t>(pc);
        const std::uint16_t first = units[pc];
        const auto op = static_cast<std::uint8_t>(first & 0xff);
        const auto hi = static_cast<std::uint8_t>(first >> 8);

        DecodedInsn d;
        d.offset = offset;
        if (op == 0x00 && hi != 0) {
            const std::uint32_t w = payload_width(units, pc);
            if (w == 0) {
                malformed(offset, "unknown pseudo-opcode " + std::to_string(first));
            }
            if (pc + w > units.size()) {
                malformed(offset, "payload runs past end of code");
            }
            d.kind = InsnKind::Payload;
            d.opcode = first;
            d.length = w;
            code.instructions.push_back(std::move(d));
            pc += w;
            continue;
        }

        const Fmt fmt = kFormats[op];
        const unsigned w = width_of(fmt);
        if (w == 0) {
            malformed(offset, "unassigned opcode " + std::to_string(op));
        }
        if (pc + w > units.size()) {
            malformed(offset, "instruction runs past end of code");
        }
        d.opcode = op;
        d.length = w;
        auto unit = [&](unsigned k) { return units[pc + k]; };
        const std::uint8_t nib_a = hi & 0x0f;
        const std::uint8_t nib_b = hi >> 4;

        const Pool pool = pool_of(op);
        std::uint32_t index = 0;
        if (pool != Pool::None) {
            index = (fmt == Fmt::F31c) ? (unit(1) | (static_cast<std::uint32_t>(unit(2)) << 16))
                                       : unit(1);
            if (index >= pool_size(refs, pool)) {
                throw Error(ErrorCode::BadIndex, "instruction at code unit " + std::to_string(offset) +
                                                     " references pool entry " + std::to_string(index));
            }
            if (pool == Pool::Type) {
                d.type_ref = descriptor_to_java(refs.types[index]);
            }
        }

        // Destination register for the formats that carry one in vA.
        if (const DestInfo di = dest_info(op); di.writes) {
            std::uint16_t a = 0;
            switch (fmt) {
            case Fmt::F12x: case Fmt::F11n: case Fmt::F22c: case Fmt::F22s: a = nib_a; break;
            case Fmt::F32x: a = unit(1); break;
            default: a = hi; break;
            }
            d.dest = a;
            d.wide = di.wide;
            const bool plain_move = (op >= 0x01 && op <= 0x03) || (op >= 0x07 && op <= 0x09);
            if (plain_move) {
                d.move_src = fmt == Fmt::F12x ? nib_b : fmt == Fmt::F22x ? unit(1) : unit(2);
            }
        }

        if (op >= 0x0a && op <= 0x0c) {
            d.kind = InsnKind::MoveResult;
            d.dest = hi;
            d.wide = op == 0x0b;
        } else if (op >= 0x0e && op <= 0x11) {
            d.kind = InsnKind::Return;
            if (op != 0x0e) {
                d.value_reg = hi;
            }
        } else if (op >= 0x12 && op <= 0x15) {
            const bool zero = op == 0x12   ? nib_b == 0
                              : op == 0x14 ? (unit(1) | unit(2)) == 0
                                           : unit(1) == 0;
            if (zero) {
                d.kind = InsnKind::ConstNull;
            }
        } else if (op == 0x27) {
            d.kind = InsnKind::Throw;
        } else if (op >= 0x28 && op <= 0x2a) {
            d.kind = InsnKind::Branch;
            d.falls_through = false;
            std::int32_t rel = op == 0x28   ? static_cast<std::int8_t>(hi)
                               : op == 0x29 ? static_cast<std::int16_t>(unit(1))
                                            : s32(unit(1), unit(2));
            d.targets.push_back(static_cast<std::uint32_t>(static_cast<std::int64_t>(offset) + rel));
        } else if (op == 0x2b || op == 0x2c) {
            d.kind = InsnKind::Branch;
            const std::int64_t at = static_cast<std::int64_t>(offset) + s32(unit(1), unit(2));
            switches.push_back({code.instructions.size(), static_cast<std::uint32_t>(at),
                                op == 0x2b ? kPackedSwitchIdent : kSparseSwitchIdent});
        } else if (op == 0x26) {
            const std::int64_t at = static_cast<std::int64_t>(offset) + s32(unit(1), unit(2));
            switches.push_back({code.instructions.size(), static_cast<std::uint32_t>(at), kFillArrayIdent});
        } else if (op >= 0x32 && op <= 0x3d) {
            d.kind = InsnKind::Branch;
            d.targets.push_back(static_cast<std::uint32_t>(static_cast<std::int64_t>(offset) +
                                                           static_cast<std::int16_t>(unit(1))));
        } else if (const InvokeFlavor fl = flavor_of(op); fl != InvokeFlavor::None) {
            d.kind = InsnKind::Invoke;
            d.flavor = fl;
            d.target = refs.methods[index];
            if (fmt == Fmt::F35c || fmt == Fmt::F45cc) {
                const std::uint16_t regs = unit(2);
                const std::uint16_t all[5] = {static_cast<std::uint16_t>(regs & 0xf),
                                              static_cast<std::uint16_t>((regs >> 4) & 0xf),
                                              static_cast<std::uint16_t>((regs >> 8) & 0xf),
                                              static_cast<std::uint16_t>((regs >> 12) & 0xf), nib_a};
                if (nib_b > 5) {
                    malformed(offset, "invoke with more than five argument registers");
                }
                d.args.assign(all, all + nib_b);
            } else {
                for (std::uint32_t r = 0; r < hi; ++r) {
                    d.args.push_back(static_cast<std::uint16_t>(unit(2) + r));
                }
            }
        }
        code.instructions.push_back(std::move(d));
        pc += w;
    }

    for (const PendingSwitch& sw : switches) {
        const auto at = code.index_at(sw.payload);
        if (!at || code.instructions[*at].kind != InsnKind::Payload ||
            code.instructions[*at].opcode != sw.ident) {
            malformed(code.instructions[sw.insn].offset, "data reference does not point at a matching payload");
        }
        if (sw.ident == kFillArrayIdent) {
            continue;
        }
        DecodedInsn& insn = code.instructions[sw.insn];
        const std::size_t base = sw.payload;
        const std::uint32_t count = units[base + 1];
        const std::size_t first_target = sw.ident == kPackedSwitchIdent ? base + 4 : base + 2 + count * 2;
        for (std::uint32_t k = 0; k < count; ++k) {
            const std::int32_t rel = s32(units[first_target + 2 * k], units[first_target + 2 * k + 1]);
            insn.targets.push_back(
                static_cast<std::uint32_t>(static_cast<std::int64_t>(insn.offset) + rel));
        }
    }

    for (const DecodedInsn& d : code.instructions) {
        for (const std::uint32_t t : d.targets) {
            const auto at = code.index_at(t);
            if (!at || code.instructions[*at].kind == InsnKind::Payload) {
                malformed(d.offset, "branch target " + std::to_string(t) + " is not an instruction");
            }
        }
    }
    for (const TryRange& tr : tries) {
        if (tr.end > code.insns_size || tr.start > tr.end) {
            malformed(tr.start, "try range exceeds code");
        }
        for (const CatchHandler& h : tr.handlers) {
            const auto at = code.index_at(h.address);
            if (!at || code.instructions[*at].kind == InsnKind::Payload) {
                malformed(h.address, "catch handler is not an instruction");
            }
        }
    }
    code.tries = std::move(tries);
    return code;
}

} // namespace autocomply::detail
