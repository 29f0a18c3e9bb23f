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

#ifndef AUTOCOMPLY_ERROR_HPP
#define AUTOCOMPLY_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace autocomply {

enum class ErrorCode {
    Io,
    // apk_container
    NotAZipArchive,
    MissingManifest,
    CorruptEntry,
    // axml_decoder
    NotAxml,
    TruncatedChunk,
    StringPoolCorrupt,
    // dex_parser
    BadMagic,
    TruncatedSection,
    BadIndex,
    MalformedCode,
    CyclicHierarchy,
    // app_model
    SchemaViolation,
};

std::string_view to_string(ErrorCode code);

/// Every decoder and loader failure surfaces as this exception. The code
/// identifies the failure class; what() carries the detail.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace autocomply

#endif // AUTOCOMPLY_ERROR_HPP
