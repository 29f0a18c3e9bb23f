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

#include "autocomply/error.hpp"

namespace autocomply {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::Io: return "Io";
    case ErrorCode::NotAZipArchive: return "NotAZipArchive";
    case ErrorCode::MissingManifest: return "MissingManifest";
    case ErrorCode::CorruptEntry: return "CorruptEntry";
    case ErrorCode::NotAxml: return "NotAxml";
    case ErrorCode::TruncatedChunk: return "TruncatedChunk";
    case ErrorCode::StringPoolCorrupt: return "StringPoolCorrupt";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::TruncatedSection: return "TruncatedSection";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::MalformedCode: return "MalformedCode";
    case ErrorCode::CyclicHierarchy: return "CyclicHierarchy";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code)
{
}

} // namespace autocomply
