// Copyright 2026 The netcfg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include "netcfg/configs_repo.hpp"
#include "netcfg/errors.hpp"
#include "netcfg/extraction.hpp"
#include "test_support.hpp"

namespace netcfg {
namespace {

namespace fs = std::filesystem;
using testing::Baseline;
using testing::TempDir;

WallTime At(std::int64_t seconds) { return WallTime(std::chrono::seconds(seconds)); }

RepoEntry Approved(const std::string& id, const std::string& device, const std::string& text) {
  RepoEntry entry;
  entry.intent_id = id;
  entry.bundle.sections.push_back({device, text});
  entry.report = MakeReport(id, IntentClass::kCP, {}, At(1704067200));
  entry.created_at = At(1704067200);
  return entry;
}

TEST(EncodeIntentIdTest, RoundTrip) {
  EXPECT_EQ(EncodeIntentId("cp-01_x"), "cp-01_x");
  EXPECT_EQ(EncodeIntentId("a/b c"), "a%2Fb%20c");
  EXPECT_EQ(EncodeIntentId(".."), "%2E%2E");
  for (const std::string id : {"cp-01", "a/b c", "..", "%41", "ünï", "x%", ""}) {
    EXPECT_EQ(DecodeIntentId(EncodeIntentId(id)), id) << id;
  }
  EXPECT_EQ(DecodeIntentId("%zz%4"), "%zz%4");
}

TEST(NormalizeBundleTest, CanonicalForm) {
  ConfigBundle b;
  b.sections.push_back({" R1 ", "interface Gi0/1  \r\n\n shutdown\t\n~~~\n"});
  b.sections.push_back({"R2", "\n  \n"});
  const ConfigBundle n = NormalizeBundle(b);
  ASSERT_EQ(n.sections.size(), 1u);
  EXPECT_EQ(n.sections[0].device, "R1");
  EXPECT_EQ(n.sections[0].text, "interface Gi0/1\n shutdown\n");
  EXPECT_EQ(NormalizeBundle(n), n);
}

TEST(ConfigsRepoTest, VersionsAreGaplessFromOne) {
  TempDir dir;
  ConfigsRepo repo(dir.path());
  const RepoEntry e = Approved("i1", "R2", "interface GigabitEthernet0/1\n shutdown\n");
  EXPECT_EQ(repo.StoreApproved(e), 1);
  EXPECT_EQ(repo.StoreApproved(e), 2);
  EXPECT_EQ(repo.StoreApproved(Approved("i2", "R1", "interface Loopback5\n")), 1);
  EXPECT_EQ(repo.Versions("i1"), (std::vector<int>{1, 2}));
  EXPECT_EQ(repo.Latest("i1").version, 2);
  EXPECT_EQ(repo.Intents(), (std::vector<std::string>{"i1", "i2"}));
  EXPECT_TRUE(repo.Versions("never").empty());
}

TEST(ConfigsRepoTest, ReadYourWritesAndAstRoundTrip) {
  TempDir dir;
  ConfigsRepo repo(dir.path());
  RepoEntry e = Approved("acl/7", "R3",
                         "access-list 101 deny tcp host 10.0.1.10 host 10.0.3.10 eq 161  \n\n"
                         "access-list 101 permit ip any any\n");
  e.bundle.sections.push_back({"R1", "interface GigabitEthernet0/3\n no shutdown\n"});
  const int v = repo.StoreApproved(e);
  const RepoEntry back = repo.Get("acl/7", v);
  EXPECT_EQ(back.intent_id, "acl/7");
  EXPECT_EQ(back.version, v);
  EXPECT_EQ(back.created_at, e.created_at);
  EXPECT_EQ(back.bundle, NormalizeBundle(e.bundle));
  EXPECT_EQ(ReportToJson(back.report), ReportToJson(e.report));
  for (std::size_t i = 0; i < e.bundle.sections.size(); ++i) {
    const ParseResult stored = ParseConfig("X", e.bundle.sections[i].text);
    const ParseResult loaded = ParseConfig("X", back.bundle.sections[i].text);
    EXPECT_EQ(Normalized(loaded.ast), Normalized(stored.ast));
  }
  EXPECT_TRUE(fs::is_directory(dir.path() / "acl%2F7" / "v1"));
  EXPECT_TRUE(fs::is_regular_file(dir.path() / "acl%2F7" / "v1" / "R3.cfg"));
  EXPECT_TRUE(repo.Running("acl/7", v).empty());
}

TEST(ConfigsRepoTest, RepeatedDeviceSectionsAreMerged) {
  TempDir dir;
  ConfigsRepo repo(dir.path());
  RepoEntry e = Approved("i", "R1", "interface Loopback1\n");
  e.bundle.sections.push_back({"R1", "interface Loopback2\n"});
  repo.StoreApproved(e);
  const RepoEntry back = repo.Latest("i");
  ASSERT_EQ(back.bundle.sections.size(), 1u);
  EXPECT_EQ(back.bundle.sections[0].text, "interface Loopback1\ninterface Loopback2\n");
}

TEST(ConfigsRepoTest, StoresRunningConfigurationOfTouchedDevices) {
  TempDir dir;
  ConfigsRepo repo(dir.path());
  const RepoEntry e = Approved("cp", "R2", "interface GigabitEthernet0/1\n shutdown\n");
  const NetworkModel candidate = ApplyCandidate(Baseline(), e.bundle);
  const int v = repo.StoreApproved(e, &candidate);
  const auto running = repo.Running("cp", v);
  ASSERT_EQ(running.size(), 1u);
  EXPECT_EQ(running.at("R2"), CanonicalText(*candidate.FindDevice("R2")));
  EXPECT_NE(running.at("R2").find(" shutdown"), std::string::npos);
}

TEST(ConfigsRepoTest, Guards) {
  TempDir dir;
  ConfigsRepo repo(dir.path());
  RepoEntry failed = Approved("i", "R1", "interface Loopback1\n");
  failed.report = MakeReport(
      "i", IntentClass::kCP,
      {{ErrorCode::kGoalUnmet, "R1", std::nullopt, "not met", ""}}, At(0));
  EXPECT_THROW(repo.StoreApproved(failed), ContractError);
  EXPECT_THROW(repo.StoreApproved(Approved("i", "R1", "\n  \n")), ContractError);
  EXPECT_THROW(repo.StoreApproved(Approved("i", "R1", "interface Loopback1\n shutdwn\n")),
               ContractError);
  EXPECT_THROW(repo.StoreApproved(Approved("", "R1", "interface Loopback1\n")), ContractError);
  EXPECT_TRUE(repo.Versions("i").empty());
  EXPECT_THROW(repo.Get("i", 1), NotFound);
  EXPECT_THROW(repo.Latest("i"), NotFound);
  EXPECT_THROW(repo.AuditTrail("i"), NotFound);
}

TEST(ConfigsRepoTest, HalfWrittenVersionsStayInvisible) {
  TempDir dir;
  ConfigsRepo repo(dir.path());
  // What a crash in the middle of a write leaves behind.
  fs::create_directories(dir.path() / "i" / ".tmp-v1");
  testing::WriteFile(dir.path() / "i" / ".tmp-v1" / "R1.cfg", "interface Loop");
  EXPECT_TRUE(repo.Versions("i").empty());
  EXPECT_THROW(repo.Latest("i"), NotFound);
  EXPECT_EQ(repo.StoreApproved(Approved("i", "R1", "interface Loopback1\n")), 1);
  EXPECT_FALSE(fs::exists(dir.path() / "i" / ".tmp-v1"));
  EXPECT_EQ(repo.Latest("i").bundle.sections[0].text, "interface Loopback1\n");
}

TEST(ConfigsRepoTest, FailedWriteLeavesNoVersion) {
  TempDir dir;
  ConfigsRepo repo(dir.path());
  // A device name longer than any file name the file system accepts.
  const std::string device(300, 'R');
  EXPECT_THROW(repo.StoreApproved(Approved("i", device, "interface Loopback1\n")), StorageError);
  EXPECT_TRUE(repo.Versions("i").empty());
  for (const auto& entry : fs::directory_iterator(dir.path() / "i")) {
    ADD_FAILURE() << "left behind " << entry.path();
  }
  EXPECT_EQ(repo.StoreApproved(Approved("i", "R1", "interface Loopback1\n")), 1);
}

TEST(ConfigsRepoTest, AuditTrailKeepsEveryCycleOfTheLatestRun) {
  TempDir dir;
  ConfigsRepo repo(dir.path());
  std::vector<AuditRecord> cycles;
  for (int k = 1; k <= 5; ++k) {
    AuditRecord r;
    r.bundle.sections.push_back({"R2", "interface GigabitEthernet0/1\n shutdwn\n"});
    r.report = MakeReport("ex", IntentClass::kCP, CheckSyntax(r.bundle), At(k));
    cycles.push_back(std::move(r));
  }
  EXPECT_EQ(repo.RecordRun("ex", cycles), 1);
  std::vector<AuditRecord> trail = repo.AuditTrail("ex");
  ASSERT_EQ(trail.size(), 5u);
  for (int k = 0; k < 5; ++k) {
    EXPECT_EQ(trail[k].bundle, cycles[k].bundle);
    EXPECT_EQ(ReportToJson(trail[k].report), ReportToJson(cycles[k].report));
  }

  AuditRecord ok;
  ok.bundle.sections.push_back({"R2", "interface GigabitEthernet0/1\n shutdown\n"});
  ok.report = MakeReport("ex", IntentClass::kCP, {}, At(9));
  EXPECT_EQ(repo.RecordRun("ex", {ok}), 2);
  trail = repo.AuditTrail("ex");
  ASSERT_EQ(trail.size(), 1u);
  EXPECT_TRUE(trail[0].report.passed);

  EXPECT_EQ(repo.RecordRun("other", {}), 1);
  EXPECT_TRUE(repo.AuditTrail("other").empty());

  AuditRecord unparsed;
  unparsed.report = MakeReport("blank", IntentClass::kCP,
                               {{ErrorCode::kSyntax, "unparsed", "answer format", "empty answer", ""}},
                               At(0));
  repo.RecordRun("blank", {unparsed});
  EXPECT_TRUE(repo.AuditTrail("blank")[0].bundle.empty());
}

TEST(ConfigsRepoTest, ConcurrentWritersGetDistinctVersions) {
  TempDir dir;
  ConfigsRepo repo(dir.path());
  const RepoEntry e = Approved("shared", "R1", "interface Loopback1\n");
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) threads.emplace_back([&] { repo.StoreApproved(e); });
  for (std::thread& t : threads) t.join();
  EXPECT_EQ(repo.Versions("shared"), (std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8}));
}

}  // namespace
}  // namespace netcfg
