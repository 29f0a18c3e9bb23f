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

#ifndef AUTOCOMPLY_BYTE_READER_HPP
#define AUTOCOMPLY_BYTE_READER_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "autocomply/error.hpp"

namespace autocomply::detail {

// Bounds-checked little-endian reads over an immutable byte span. Every
// out-of-range access throws Error with the code supplied at construction.
class ByteReader {
public:
    ByteReader(std::span<const std::uint8_t> bytes, ErrorCode overflow_code)
        : bytes_(bytes), overflow_(overflow_code)
    {
    }

    std::size_t size() const noexcept { return bytes_.size(); }
    std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }

    void require(std::size_t offset, std::size_t length, const char* what) const
    {
        if (offset > bytes_.size() || length > bytes_.size() - offset) {
            throw Error(overflow_, std::string(what) + " at offset " + std::to_string(offset) +
                                       " (+" + std::to_string(length) + ") exceeds " +
                                       std::to_string(bytes_.size()) + " bytes");
        }
    }

    std::uint8_t u8(std::size_t offset) const
    {
        require(offset, 1, "u8");
        return bytes_[offset];
    }

    std::uint16_t u16(std::size_t offset) const
    {
        require(offset, 2, "u16");
        return static_cast<std::uint16_t>(bytes_[offset] | (bytes_[offset + 1] << 8));
    }

    std::uint32_t u32(std::size_t offset) const
    {
        require(offset, 4, "u32");
        return static_cast<std::uint32_t>(bytes_[offset]) |
               (static_cast<std::uint32_t>(bytes_[offset + 1]) << 8) |
               (static_cast<std::uint32_t>(bytes_[offset + 2]) << 16) |
               (static_cast<std::uint32_t>(bytes_[offset + 3]) << 24);
    }

    std::span<const std::uint8_t> slice(std::size_t offset, std::size_t length,
                                        const char* what = "slice") const
    {
        require(offset, length, what);
        return bytes_.subspan(offset, length);
    }

    // Unsigned LEB128; advances `offset` past the encoded value.
    std::uint32_t uleb128(std::size_t& offset) const
    {
        std::uint32_t result = 0;
        for (int shift = 0; shift < 35; shift += 7) {
            const std::uint8_t b = u8(offset++);
            result |= static_cast<std::uint32_t>(b & 0x7f) << shift;
            if ((b & 0x80) == 0) {
                return result;
            }
        }
        throw Error(overflow_, "uleb128 longer than five bytes");
    }

    std::int32_t sleb128(std::size_t& offset) const
    {
        std::int32_t result = 0;
        int shift = 0;
        std::uint8_t b = 0;
        do {
            if (shift >= 35) {
                throw Error(overflow_, "sleb128 longer than five bytes");
            }
            b = u8(offset++);
            result |= static_cast<std::int32_t>(static_cast<std::uint32_t>(b & 0x7f) << shift);
            shift += 7;
        } while (b & 0x80);
        if (shift < 32 && (b & 0x40)) {
            result |= static_cast<std::int32_t>(~0u << shift);
        }
        return result;
    }

private:
    std::span<const std::uint8_t> bytes_;
    ErrorCode overflow_;
};

} // namespace autocomply::detail

#endif // AUTOCOMPLY_BYTE_READER_HPP
