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

#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "autocomply/error.hpp"
#include "autocomply/manifest.hpp"
#include "axml_oracle.hpp"
#include "test_support.hpp"

using namespace autocomply;
using namespace test_support;
using namespace axml_oracle;

namespace {

ErrorCode axml_error(const std::vector<std::uint8_t>& bytes)
{
    try {
        decode_axml(bytes);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "document decoded without error";
    return ErrorCode::Io;
}

void put_u32(std::vector<std::uint8_t>& b, std::size_t at, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i) {
        b[at + i] = static_cast<std::uint8_t>(v >> (8 * i));
    }
}

} // namespace

TEST(Axml, ManifestFixturesMatchDisassemblerAndSource)
{
    const auto axmls = glob("manifests", ".axml");
    ASSERT_GE(axmls.size(), 10u);
    for (const fs::path& p : axmls) {
        SCOPED_TRACE(p.string());
        std::string base = p.string().substr(0, p.string().size() - 5);
        if (base.ends_with(".utf8")) {
            base.resize(base.size() - 5);
        }
        const auto got = decoded_triples(read_bytes(p));
        EXPECT_EQ(got, oracle_triples(read_json(base + ".oracle.json")));
        EXPECT_EQ(got, source_triples(base + ".src.xml"));
    }
}

TEST(Axml, ApkManifestsMatchDisassembler)
{
    std::vector<fs::path> oracles = glob("apks", ".oracle.json");
    const auto corpus = glob("corpus", ".oracle.json");
    oracles.insert(oracles.end(), corpus.begin(), corpus.end());
    int checked = 0;
    for (const fs::path& oracle_path : oracles) {
        const json oracle = read_json(oracle_path);
        if (!oracle.contains("manifest")) {
            continue;
        }
        const std::string stem = oracle_path.filename().string();
        const fs::path apk = oracle_path.parent_path() / (stem.substr(0, stem.find('.')) + ".apk");
        SCOPED_TRACE(apk.string());
        EXPECT_EQ(decoded_triples(open_apk(apk).manifest_bytes), oracle_triples(oracle.at("manifest")));
        ++checked;
    }
    EXPECT_GE(checked, 17);
}

TEST(Axml, Utf8AndUtf16PoolsDecodeAlike)
{
    for (const std::string stem : {"auto_media", "two_services", "empty_app"}) {
        EXPECT_EQ(decoded_triples(read_bytes("manifests/" + stem + ".axml")),
                  decoded_triples(read_bytes("manifests/" + stem + ".utf8.axml")))
            << stem;
    }
}

TEST(Axml, AutoMediaModel)
{
    const ManifestModel m = decode_manifest(read_bytes("manifests/auto_media.axml"));
    EXPECT_EQ(m.package_name, "com.example.music");
    ASSERT_EQ(m.meta_data.size(), 1u);
    EXPECT_EQ(m.meta_data[0].name, kAutoMetadataName);
    EXPECT_EQ(m.meta_data[0].value, "@0x7f020000");
    EXPECT_TRUE(m.uses_auto_descriptor);
    ASSERT_EQ(m.services.size(), 1u);
    EXPECT_EQ(m.services[0].class_name, "com.example.music.MediaBrowserService");
    EXPECT_EQ(m.services[0].intent_actions, std::vector<std::string>{std::string(kMediaBrowserAction)});
    // No explicit android:exported; an intent filter makes it exported.
    EXPECT_TRUE(m.services[0].exported);
    const auto comps = auto_components(m);
    ASSERT_EQ(comps.size(), 1u);
    EXPECT_EQ(comps[0].class_name, "com.example.music.MediaBrowserService");
}

TEST(Axml, AutoMediaVariants)
{
    const ManifestModel no_filter = decode_manifest(read_bytes("manifests/auto_media_no_filter.axml"));
    EXPECT_TRUE(no_filter.uses_auto_descriptor);
    EXPECT_TRUE(auto_components(no_filter).empty());

    const ManifestModel no_meta = decode_manifest(read_bytes("manifests/auto_media_no_metadata.axml"));
    EXPECT_FALSE(no_meta.uses_auto_descriptor);
    EXPECT_EQ(auto_components(no_meta).size(), 1u);
}

TEST(Axml, TwoServicesOnlyOneBrowser)
{
    const ManifestModel m = decode_manifest(read_bytes("manifests/two_services.axml"));
    ASSERT_EQ(m.services.size(), 2u);
    EXPECT_EQ(m.services[1].class_name, "org.sample.player.SyncService");
    const auto comps = auto_components(m);
    ASSERT_EQ(comps.size(), 1u);
    EXPECT_EQ(comps[0].class_name, "org.sample.player.playback.PlayerService");
    EXPECT_EQ(comps[0].service_index, 0u);
    EXPECT_EQ(m.services[0].intent_actions.size(), 1u);  // repeated action collapses
}

TEST(Axml, ResolveClassName)
{
    EXPECT_EQ(resolve_class_name("com.a", ".Svc"), "com.a.Svc");
    EXPECT_EQ(resolve_class_name("com.a", "Svc"), "com.a.Svc");
    EXPECT_EQ(resolve_class_name("com.a", "org.b.Svc"), "org.b.Svc");
}

TEST(Axml, ErrorClasses)
{
    EXPECT_EQ(axml_error({}), ErrorCode::NotAxml);
    EXPECT_EQ(axml_error(read_bytes("apks/not_a_zip.apk")), ErrorCode::NotAxml);

    std::vector<std::uint8_t> cut = read_bytes("manifests/auto_media.axml");
    cut.resize(cut.size() / 2);
    EXPECT_EQ(axml_error(cut), ErrorCode::TruncatedChunk);

    std::vector<std::uint8_t> pool = read_bytes("manifests/auto_media.axml");
    put_u32(pool, 8 + 20, 0xfffffff0u);  // strings_start of the pool chunk
    EXPECT_EQ(axml_error(pool), ErrorCode::StringPoolCorrupt);
}
