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

#include <benchmark/benchmark.h>

#include <filesystem>
#include <string>

#include "autocomply/apk.hpp"
#include "autocomply/app_model.hpp"
#include "autocomply/ccfg.hpp"
#include "autocomply/checkers.hpp"
#include "autocomply/pipeline.hpp"

using namespace autocomply;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = AUTOCOMPLY_FIXTURES_DIR;

constexpr const char* kRootDesc =
    "(Ljava/lang/String;ILandroid/os/Bundle;)Landroidx/media/MediaBrowserServiceCompat$BrowserRoot;";
constexpr const char* kChildrenDesc = "(Ljava/lang/String;Landroidx/media/MediaBrowserServiceCompat$Result;)V";

// One service whose onGetRoot and onLoadChildren each run `n` two-way
// branches in sequence, so both have 2^n acyclic paths. Both comply.
std::string ladder_fixture(int n)
{
    std::string insns;
    for (int i = 0; i < n; ++i) {
        const std::string k = std::to_string(i);
        insns += "\"call com.b.S.check" + k + "()Z\", \"branch a" + k + " b" + k + "\", \"label a" + k +
                 "\", \"call com.b.S.left()V\", \"branch j" + k + "\", \"label b" + k +
                 "\", \"call com.b.S.right()V\", \"label j" + k + "\", ";
    }
    const std::string tail =
        "\"call androidx.media.MediaBrowserServiceCompat$Result.sendResult(Ljava/lang/Object;)V\", \"return\"";
    return R"({"package": "com.b",
      "meta_data": [{"name": "com.google.android.gms.car.application"}],
      "services": [{"name": ".S", "actions": ["android.media.browse.MediaBrowserService"]}],
      "classes": [{"name": "com.b.S", "super": "androidx.media.MediaBrowserServiceCompat", "methods": [
        {"name": "onGetRoot", "descriptor":
           "(Ljava/lang/String;ILandroid/os/Bundle;)Landroidx/media/MediaBrowserServiceCompat$BrowserRoot;",
         "insns": [)" + insns + R"("return"]},
        {"name": "onLoadChildren", "descriptor":
           "(Ljava/lang/String;Landroidx/media/MediaBrowserServiceCompat$Result;)V",
         "insns": [)" + insns + tail + "]}]}]}";
}

void BM_OpenApk(benchmark::State& state)
{
    const fs::path p = kFixtures / "corpus" / "broken_app.apk";
    for (auto _ : state) {
        benchmark::DoNotOptimize(open_apk(p));
    }
}
BENCHMARK(BM_OpenApk);

void BM_BuildModelFromApk(benchmark::State& state)
{
    const ApkContents contents = open_apk(kFixtures / "apks" / "media_complete.apk");
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_from_apk(contents));
    }
}
BENCHMARK(BM_BuildModelFromApk);

void BM_LoadTextFixture(benchmark::State& state)
{
    const fs::path p = kFixtures / "text" / "media_complete.json";
    for (auto _ : state) {
        benchmark::DoNotOptimize(load_text_fixture_file(p));
    }
}
BENCHMARK(BM_LoadTextFixture);

void BM_BuildCcfg(benchmark::State& state)
{
    const AppModel model = build_from_apk(open_apk(kFixtures / "apks" / "media_complete.apk"));
    const auto comps = auto_components(model.manifest());
    for (auto _ : state) {
        benchmark::DoNotOptimize(augment_with_host(construct_base_icfg(model), comps, default_catalog()));
    }
}
BENCHMARK(BM_BuildCcfg);

void BM_AnalyzeCorpus(benchmark::State& state)
{
    const auto inputs = expand_inputs({kFixtures / "corpus"});
    for (auto _ : state) {
        benchmark::DoNotOptimize(analyze_batch(inputs));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(inputs.size()));
}
BENCHMARK(BM_AnalyzeCorpus)->Unit(benchmark::kMillisecond);

void BM_CallObligationLadder(benchmark::State& state)
{
    const AppModel model = load_text_fixture(ladder_fixture(static_cast<int>(state.range(0))));
    const DexMethod* m = model.find_class("com.b.S")->find_method("onLoadChildren", kChildrenDesc);
    const MethodCfg cfg(*m->code, m->ref());
    const Obligation ob = Obligation::call({"sendResult"});
    for (auto _ : state) {
        benchmark::DoNotOptimize(all_paths_satisfy(cfg, ob));
    }
}
BENCHMARK(BM_CallObligationLadder)->RangeMultiplier(4)->Range(2, 128);

void BM_ReturnNonNullLadder(benchmark::State& state)
{
    const AppModel model = load_text_fixture(ladder_fixture(static_cast<int>(state.range(0))));
    const DexMethod* m = model.find_class("com.b.S")->find_method("onGetRoot", kRootDesc);
    const MethodCfg cfg(*m->code, m->ref());
    PathLimits limits;
    limits.path_budget = 1u << 20;
    limits.step_budget = 1u << 28;
    for (auto _ : state) {
        benchmark::DoNotOptimize(all_paths_satisfy(cfg, Obligation::return_nonnull(), limits));
    }
}
// Path count doubles per rung, so this one stays small.
BENCHMARK(BM_ReturnNonNullLadder)->DenseRange(2, 12, 2);

} // namespace

BENCHMARK_MAIN();
