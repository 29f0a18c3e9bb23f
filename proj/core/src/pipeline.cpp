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

#include "autocomply/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>

#include "autocomply/apk.hpp"
#include "autocomply/app_model.hpp"
#include "autocomply/error.hpp"

namespace autocomply {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool is_fixture(const fs::path& p, bool forced)
{
    return forced || p.extension() == ".json";
}

void write_dump(const Ccfg& ccfg, const fs::path& target)
{
    std::ofstream out(target, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write " + target.string());
    }
    ccfg.dump(out);
}

} // namespace

AppReport analyze(const fs::path& input, const AnalysisOptions& options, const Catalog& catalog)
{
    AppReport report;
    report.origin = input.generic_string();
    auto start = Clock::now();
    try {
        const AppModel model = is_fixture(input, options.fixture)
                                   ? load_text_fixture_file(input, report.origin)
                                   : build_from_apk(open_apk(input), report.origin);
        report.warnings = model.warnings();
        report.timing.load = seconds_since(start);

        if (options.checkers.disc) {
            start = Clock::now();
            report.findings = check_discoverability(model, catalog);
            report.timing.check += seconds_since(start);
        }
        if (!is_auto_app(model.manifest()) && !options.dump_ccfg) {
            return report;
        }

        start = Clock::now();
        const Ccfg ccfg = augment_with_host(construct_base_icfg(model), auto_components(model.manifest()), catalog);
        report.timing.graph = seconds_since(start);
        if (options.dump_ccfg) {
            write_dump(ccfg, *options.dump_ccfg);
        }
        if (!is_auto_app(model.manifest())) {
            return report;
        }

        start = Clock::now();
        std::vector<Finding> more = run_checkers(ccfg, model, options.checkers, catalog);
        report.findings.insert(report.findings.end(), more.begin(), more.end());
        sort_findings(report.findings);
        report.findings.erase(std::unique(report.findings.begin(), report.findings.end()), report.findings.end());
        report.timing.check += seconds_since(start);
    } catch (const Error& e) {
        report.findings.clear();
        // what() leads with the code name; keep only the detail.
        const std::string code(to_string(e.code()));
        std::string_view detail = e.what();
        if (detail.starts_with(code + ": ")) {
            detail.remove_prefix(code.size() + 2);
        }
        report.errors.push_back({code, std::string(detail)});
    } catch (const std::exception& e) {
        report.findings.clear();
        report.errors.push_back({"Internal", e.what()});
    }
    return report;
}

std::vector<fs::path> expand_inputs(const std::vector<fs::path>& inputs, bool fixture)
{
    std::vector<fs::path> out;
    for (const fs::path& in : inputs) {
        std::error_code ec;
        if (!fs::is_directory(in, ec)) {
            out.push_back(in);
            continue;
        }
        std::vector<fs::path> found;
        for (const fs::directory_entry& e : fs::directory_iterator(in)) {
            const fs::path& p = e.path();
            if (e.is_regular_file() && (p.extension() == ".apk" || (fixture && p.extension() == ".json"))) {
                found.push_back(p);
            }
        }
        std::sort(found.begin(), found.end());
        out.insert(out.end(), found.begin(), found.end());
    }
    return out;
}

Report analyze_batch(const std::vector<fs::path>& inputs, const AnalysisOptions& options, unsigned jobs,
                     const Catalog& catalog)
{
    Report report;
    report.tool_version = std::string(version());
    report.apps.resize(inputs.size());

    const bool batch_dump = options.dump_ccfg && inputs.size() > 1;
    if (batch_dump) {
        fs::create_directories(*options.dump_ccfg);
    }
    auto run_one = [&](std::size_t i) {
        AnalysisOptions opts = options;
        if (batch_dump) {
            opts.dump_ccfg = *options.dump_ccfg / (inputs[i].filename().string() + ".ccfg");
        }
        report.apps[i] = analyze(inputs[i], opts, catalog);
    };

    jobs = std::clamp<unsigned>(jobs, 1, std::max<std::size_t>(inputs.size(), 1));
    if (jobs == 1) {
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            run_one(i);
        }
        return report;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < inputs.size(); i = next++) {
                run_one(i);
            }
        });
    }
    workers.clear();
    return report;
}

} // namespace autocomply
