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

// autocomply: checks Android media apps against the car host's callback
// contract. See README.md for usage.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "autocomply/pipeline.hpp"
#include "autocomply/report.hpp"

namespace fs = std::filesystem;
using namespace autocomply;

namespace {

constexpr int kUsageError = 64;

void setup_logging()
{
    auto logger = spdlog::stderr_color_mt("autocomply");
    logger->set_pattern("%n: %^%l%$: %v");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("AUTOCOMPLY_LOG")) {
        const auto level = spdlog::level::from_str(env);
        // from_str maps unknown names to off; only accept the real "off".
        if (level != spdlog::level::off || std::string_view(env) == "off") {
            spdlog::set_level(level);
        } else {
            spdlog::warn("ignoring AUTOCOMPLY_LOG={}", env);
        }
    }
}

bool apply_checkers(const std::vector<std::string>& names, CheckerConfig& cfg)
{
    cfg.disc = cfg.media = cfg.ui = cfg.voice = false;
    for (const std::string& n : names) {
        if (n == "disc") {
            cfg.disc = true;
        } else if (n == "media") {
            cfg.media = true;
        } else if (n == "ui") {
            cfg.ui = true;
        } else if (n == "voice") {
            cfg.voice = true;
        } else {
            return false;
        }
    }
    return true;
}

} // namespace

int main(int argc, char** argv)
{
    setup_logging();

    CLI::App app{"Static checker for Android Auto media apps"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "Analyze APKs, text fixtures or directories of them");
    std::vector<std::string> inputs;
    std::string format = "text";
    std::vector<std::string> checkers{"disc", "media", "ui", "voice"};
    AnalysisOptions options;
    std::string dump_path;
    std::string output_path;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    bool mask_timing = false;

    analyze_cmd->add_option("inputs", inputs, "APK files, text fixtures (.json) or directories")->required();
    analyze_cmd->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"text", "json", "sarif"}))
        ->capture_default_str();
    analyze_cmd->add_option("--checkers", checkers, "Comma-separated subset of disc,media,ui,voice")
        ->delimiter(',')
        ->check(CLI::IsMember({"disc", "media", "ui", "voice"}));
    analyze_cmd->add_option("--max-inline-depth", options.checkers.limits.inline_depth,
                            "Call levels followed by the path and reach analyses")
        ->capture_default_str();
    analyze_cmd->add_option("--path-budget", options.checkers.limits.path_budget,
                            "Paths explored before an analysis gives up as inconclusive")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    analyze_cmd->add_option("--step-budget", options.checkers.limits.step_budget,
                            "Instruction visits before an analysis gives up as inconclusive")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    analyze_cmd->add_option("--dump-ccfg", dump_path,
                            "Write the car-control flow graph here (a directory when analyzing several inputs)");
    analyze_cmd->add_flag("--fixture", options.fixture, "Read every input as a text fixture");
    analyze_cmd->add_option("--output,-o", output_path, "Write the report here instead of standard output");
    analyze_cmd->add_option("--jobs,-j", jobs, "Apps analyzed concurrently")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    analyze_cmd->add_flag("--mask-timing", mask_timing, "Write all timings as zero");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return kUsageError;
    }

    if (!apply_checkers(checkers, options.checkers)) {
        std::cerr << "unknown checker name\n" << app.help();
        return kUsageError;
    }
    if (!dump_path.empty()) {
        options.dump_ccfg = fs::path(dump_path);
    }

    std::vector<fs::path> paths(inputs.begin(), inputs.end());
    paths = expand_inputs(paths, options.fixture);
    if (paths.empty()) {
        std::cerr << "no inputs found\n";
        return kUsageError;
    }
    spdlog::info("analyzing {} input(s) with {} job(s)", paths.size(), jobs);

    Report report;
    try {
        report = analyze_batch(paths, options, jobs);
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return 2;
    }
    for (const AppReport& a : report.apps) {
        for (const AppError& e : a.errors) {
            spdlog::error("{}: {}: {}", a.origin, e.code, e.message);
        }
        spdlog::debug("{}: {} finding(s) in {:.3f} s", a.origin, a.findings.size(), a.timing.total());
    }

    const std::string text = emit(report, *parse_report_format(format), EmitOptions{mask_timing});
    if (output_path.empty()) {
        std::cout << text << std::flush;
    } else {
        std::ofstream out(output_path, std::ios::binary);
        out << text;
        if (!out.flush()) {
            spdlog::error("cannot write {}", output_path);
            return 2;
        }
    }
    return exit_status(report);
}
