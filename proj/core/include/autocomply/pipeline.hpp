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

#ifndef AUTOCOMPLY_PIPELINE_HPP
#define AUTOCOMPLY_PIPELINE_HPP

#include <filesystem>
#include <optional>
#include <vector>

#include "autocomply/checkers.hpp"
#include "autocomply/report.hpp"

namespace autocomply {

struct AnalysisOptions {
    CheckerConfig checkers;
    // Treat every input as a text fixture regardless of its extension.
    bool fixture = false;
    // Graph dump target. A single input writes this file; a batch treats
    // it as a directory and writes <input file name>.ccfg into it.
    std::optional<std::filesystem::path> dump_ccfg;
};

/// Inputs ending in .json (or all inputs, with options.fixture) load as
/// text fixtures; anything else is opened as an APK. Failures land in the
/// returned report's error list rather than propagating.
AppReport analyze(const std::filesystem::path& input, const AnalysisOptions& options = {},
                  const Catalog& catalog = default_catalog());

/// Directories expand to their *.apk files (and *.json files in fixture
/// mode), sorted by name, non-recursively. Files pass through unchanged.
std::vector<std::filesystem::path> expand_inputs(const std::vector<std::filesystem::path>& inputs,
                                                 bool fixture = false);

/// Analyzes up to `jobs` inputs at a time. Apps appear in input order.
Report analyze_batch(const std::vector<std::filesystem::path>& inputs, const AnalysisOptions& options = {},
                     unsigned jobs = 1, const Catalog& catalog = default_catalog());

} // namespace autocomply

#endif // AUTOCOMPLY_PIPELINE_HPP
