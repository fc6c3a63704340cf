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

#include "netcfg/config_model.hpp"
#include "netcfg/errors.hpp"
#include "test_support.hpp"

namespace netcfg {
namespace {

using testing::Baseline;

TEST(TopologyTest, BaselineHasFourRoutersInPartialMesh) {
  const NetworkModel& m = Baseline();
  ASSERT_EQ(m.devices.size(), 4u);
  for (const char* name : {"R1", "R2", "R3", "R4"}) {
    ASSERT_TRUE(m.HasDevice(name)) << name;
    EXPECT_EQ(m.platforms.at(name).brand, "Cisco");
  }
  EXPECT_EQ(m.links.size(), 5u);
  EXPECT_EQ(m.Neighbors("R1"), (std::vector<std::string>{"R2", "R3"}));
  EXPECT_EQ(m.Neighbors("R4"), (std::vector<std::string>{"R2", "R3"}));
  ASSERT_EQ(m.hosts.size(), 2u);
  EXPECT_EQ(m.hosts[0].attachment.device, "R1");
  EXPECT_EQ(m.hosts[1].attachment.device, "R3");
  EXPECT_TRUE(CheckTopology(m).empty());
}

TEST(TopologyTest, JsonRoundTrip) {
  const NetworkModel& m = Baseline();
  EXPECT_EQ(ParseTopology(TopologyToJson(m)), m);
}

TEST(TopologyTest, RejectsBrokenDocuments) {
  EXPECT_THROW(ParseTopology("{"), ParseError);
  EXPECT_THROW(ParseTopology(R"({"links":[]})"), ParseError);
  EXPECT_THROW(ParseTopology(R"({"devices":[{"name":"R1"},{"name":"R1"}]})"), ValidationError);
  EXPECT_THROW(ParseTopology(R"({"devices":[{"name":"R1","configs":"interfac Gi0/0\n"}]})"),
               ValidationError);
  EXPECT_THROW(ParseTopology(R"({"devices":[{"name":"R1"}],"links":[{"a":"R1:Gi0/0","b":"R2:Gi0/0"}]})"),
               ValidationError);
  EXPECT_THROW(LoadTopology("/nonexistent/topology.json"), ParseError);
}

TEST(TopologyTest, InventoryFollowsRequestedOrder) {
  const DeviceInventory inv = Baseline().Inventory({"R3", "R1"});
  ASSERT_EQ(inv.size(), 2u);
  EXPECT_EQ(inv[0].name, "R3");
  EXPECT_EQ(inv[0].model, "ISR4321");
  EXPECT_EQ(inv[1].name, "R1");
}

TEST(ApplyCandidateTest, MergesSectionsIntoCopies) {
  ConfigBundle bundle;
  bundle.sections.push_back({"R2", "interface GigabitEthernet0/1\n shutdown\n"});
  const NetworkModel candidate = ApplyCandidate(Baseline(), bundle);
  const InterfaceStanza* after = candidate.FindDevice("R2")->FindInterface("GigabitEthernet0/1");
  const InterfaceStanza* before = Baseline().FindDevice("R2")->FindInterface("GigabitEthernet0/1");
  EXPECT_EQ(after->admin_state, AdminState::kDown);
  EXPECT_EQ(before->admin_state, AdminState::kUp);
  EXPECT_EQ(after->ip_address, before->ip_address);
  EXPECT_EQ(after->description, before->description);
  EXPECT_EQ(*candidate.FindDevice("R1"), *Baseline().FindDevice("R1"));
}

TEST(ApplyCandidateTest, EmptyBundleIsIdentity) {
  EXPECT_EQ(ApplyCandidate(Baseline(), ConfigBundle{}), Baseline());
}

TEST(ApplyCandidateTest, UnknownDeviceThrows) {
  ConfigBundle bundle;
  bundle.sections.push_back({"R9", "interface Gi0/0\n"});
  EXPECT_THROW(ApplyCandidate(Baseline(), bundle), ApplicabilityError);
}

TEST(ApplyCandidateTest, ReportsWarnings) {
  ConfigBundle bundle;
  bundle.sections.push_back({"R1", "interface Gi0/0\n speed 100\n"});
  std::vector<SyntaxIssue> warnings;
  ApplyCandidate(Baseline(), bundle, &warnings);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(warnings[0].severity, Severity::kWarning);
}

TEST(ApplyCandidateTest, ResultRoundTripsThroughCanonicalText) {
  ConfigBundle bundle;
  bundle.sections.push_back({"R3",
                             "access-list 101 deny tcp any any eq 23\n"
                             "interface Gi0/1\n ip access-group 101 in\n"
                             "interface Tunnel2\n tunnel source Gi0/1\n"});
  const NetworkModel candidate = ApplyCandidate(Baseline(), bundle);
  const DeviceConfigAst& r3 = *candidate.FindDevice("R3");
  const ParseResult again = ParseConfig("R3", CanonicalText(r3));
  EXPECT_TRUE(again.issues.empty());
  EXPECT_EQ(again.ast, Normalized(r3));
}

}  // namespace
}  // namespace netcfg
