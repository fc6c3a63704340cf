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

#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "netcfg/network_status.hpp"
#include "test_support.hpp"

namespace netcfg {
namespace {

using Json = nlohmann::json;
using testing::Baseline;

const Json* FindByName(const Json& array, const std::string& name) {
  for (const Json& j : array) {
    if (j.at("name") == name) return &j;
  }
  return nullptr;
}

TEST(NetworkStatusTest, BaselineListsEveryDevice) {
  const NetworkStatusSnapshot s = NetworkStatus(Baseline());
  EXPECT_EQ(s.devices, (std::vector<std::string>{"R1", "R2", "R3", "R4"}));
  const Json doc = Json::parse(s.json);
  ASSERT_EQ(doc.at("devices").size(), 4u);
  EXPECT_EQ(doc.at("links").size(), Baseline().links.size());
  EXPECT_EQ(doc.at("hosts").size(), Baseline().hosts.size());
  const Json* r1 = FindByName(doc.at("devices"), "R1");
  ASSERT_NE(r1, nullptr);
  EXPECT_EQ(r1->at("brand"), "Cisco");
  const Json* gi00 = FindByName(r1->at("interfaces"), "GigabitEthernet0/0");
  ASSERT_NE(gi00, nullptr);
  EXPECT_EQ(gi00->at("ip"), "10.0.12.1");
  EXPECT_EQ(gi00->at("mask"), "255.255.255.252");
  EXPECT_EQ(gi00->at("state"), "up");
  ASSERT_TRUE(r1->contains("ospf"));
}

TEST(NetworkStatusTest, DeterministicForEqualModels) {
  const NetworkModel copy = Baseline();
  EXPECT_EQ(NetworkStatus(copy).json, NetworkStatus(Baseline()).json);
}

TEST(NetworkStatusTest, ReflectsAppliedChanges) {
  ConfigBundle bundle;
  bundle.sections.push_back({"R2", "interface GigabitEthernet0/1\n shutdown\n"});
  const NetworkModel changed = ApplyCandidate(Baseline(), bundle);
  const Json doc = Json::parse(NetworkStatus(changed).json);
  const Json* r2 = FindByName(doc.at("devices"), "R2");
  ASSERT_NE(r2, nullptr);
  const Json* gi01 = FindByName(r2->at("interfaces"), "GigabitEthernet0/1");
  ASSERT_NE(gi01, nullptr);
  EXPECT_EQ(gi01->at("state"), "down");
  EXPECT_NE(NetworkStatus(changed).json, NetworkStatus(Baseline()).json);
}

TEST(NetworkStatusTest, RestrictionKeepsOnlyInternalLinksAndHosts) {
  const NetworkStatusSnapshot s = NetworkStatus(Baseline(), {"R1", "R2"});
  EXPECT_EQ(s.devices, (std::vector<std::string>{"R1", "R2"}));
  const Json doc = Json::parse(s.json);
  ASSERT_EQ(doc.at("links").size(), 1u);
  EXPECT_EQ(doc.at("links")[0].at("a").get<std::string>().substr(0, 3), "R1:");
  EXPECT_EQ(doc.at("links")[0].at("b").get<std::string>().substr(0, 3), "R2:");
  ASSERT_EQ(doc.at("hosts").size(), 1u);
  EXPECT_EQ(doc.at("hosts")[0].at("name"), "H1");

  const NetworkStatusSnapshot none = NetworkStatus(Baseline(), std::set<std::string>{});
  EXPECT_TRUE(none.devices.empty());
}

TEST(NetworkStatusTest, EmptyModel) {
  const NetworkStatusSnapshot s = NetworkStatus(NetworkModel{});
  EXPECT_TRUE(s.devices.empty());
  EXPECT_EQ(s.json, R"({"devices":[],"hosts":[],"links":[]})");
}

}  // namespace
}  // namespace netcfg
