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

// Exhaustive agreement between SimulateAcl and a deliberately naive matcher
// that works directly on the access-list text of every ACL fixture.

#include <gtest/gtest.h>

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "acl_naive.hpp"
#include "netcfg/config_model.hpp"
#include "netcfg/verifier.hpp"
#include "test_support.hpp"

namespace netcfg {
namespace {

using testing::ConfigFixtures;
using testing::FixtureDevice;
using testing::kAddresses;
using testing::kPorts;
using testing::kProtocols;
using testing::NaiveAcls;
using testing::NaivePermits;
using testing::ProtocolName;
using testing::Quad;
using testing::ReadFile;

TEST(AclOracleTest, SimulatorAgreesWithNaiveMatcherOnExhaustiveGrid) {
  const auto started = std::chrono::steady_clock::now();
  long cases = 0;
  int acls = 0;
  const auto fixtures = ConfigFixtures("acl_");
  ASSERT_GE(fixtures.size(), 20u);
  for (const auto& path : fixtures) {
    SCOPED_TRACE(path.filename().string());
    const std::string text = ReadFile(path);
    const ParseResult parsed = ParseConfig(FixtureDevice(text), text);
    ASSERT_FALSE(parsed.HasErrors());
    const auto naive = NaiveAcls(text);
    ASSERT_FALSE(naive.empty());
    for (const auto& [id, entries] : naive) {
      const AclStanza* acl = parsed.ast.FindAcl(id);
      ASSERT_NE(acl, nullptr) << id;
      ++acls;
      for (Protocol protocol : kProtocols) {
        const bool ported = protocol == Protocol::kTcp || protocol == Protocol::kUdp;
        for (const char* src : kAddresses) {
          for (const char* dst : kAddresses) {
            for (std::uint16_t port : kPorts) {
              Packet packet;
              packet.protocol = protocol;
              packet.src = *Ipv4::Parse(src);
              packet.dst = *Ipv4::Parse(dst);
              if (ported) packet.dst_port = port;
              const bool expected = NaivePermits(entries, ProtocolName(protocol), *Quad(src),
                                                 *Quad(dst), ported ? port : -1);
              const Verdict verdict = SimulateAcl(acl->entries, packet);
              ++cases;
              ASSERT_EQ(verdict == Verdict::kPermit, expected)
                  << "acl " << id << " packet " << packet.Describe();
            }
          }
        }
      }
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  EXPECT_GE(cases, 50000);
  EXPECT_GE(acls, 20);
  EXPECT_LT(seconds, 5.0);
  RecordProperty("cases", static_cast<int>(cases));
}

TEST(AclOracleTest, ImplicitDenyOnEmptyList) {
  Packet packet;
  packet.src = *Ipv4::Parse("10.0.1.10");
  packet.dst = *Ipv4::Parse("10.0.3.10");
  EXPECT_EQ(SimulateAcl({}, packet), Verdict::kDeny);
}

TEST(AclOracleTest, StandardEntriesIgnoreDestinationAndPort) {
  const ParseResult r = ParseConfig("R1", "access-list 7 permit 10.0.1.0 0.0.0.255\n");
  const auto& entries = r.ast.FindAcl("7")->entries;
  Packet packet;
  packet.protocol = Protocol::kUdp;
  packet.src = *Ipv4::Parse("10.0.1.77");
  packet.dst = *Ipv4::Parse("203.0.113.1");
  packet.dst_port = 9999;
  EXPECT_EQ(SimulateAcl(entries, packet), Verdict::kPermit);
  packet.src = *Ipv4::Parse("10.0.2.77");
  EXPECT_EQ(SimulateAcl(entries, packet), Verdict::kDeny);
}

}  // namespace
}  // namespace netcfg
