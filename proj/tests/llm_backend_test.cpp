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

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "netcfg/errors.hpp"
#include "netcfg/extraction.hpp"
#include "netcfg/llm_backend.hpp"
#include "netcfg/verifier.hpp"
#include "test_support.hpp"

namespace netcfg {
namespace {

using testing::Baseline;

constexpr IntentClass kClasses[] = {IntentClass::kCP, IntentClass::kRP, IntentClass::kACL,
                                    IntentClass::kTN};

Intent MakeIntent(const std::string& id, const std::string& text) {
  Intent intent;
  intent.id = id;
  intent.text = text;
  return intent;
}

std::string FirstLine(const std::string& text) { return text.substr(0, text.find('\n')); }

// Classification, translation and generation through one backend.
struct Trip {
  std::string class_answer;
  std::string lld_answer;
  std::string config_answer;
};

Trip RunTrip(Backend& backend, const Intent& intent, IntentClass cls, int attempt = 1) {
  const PromptForge forge;
  Trip trip;
  PromptBundle c = forge.Classification(intent, kClasses);
  c.attempt = attempt;
  trip.class_answer = backend.Complete(c, {});
  PromptBundle t = forge.Translation(intent, cls, forge.StatusFor(intent, Baseline()));
  t.attempt = attempt;
  trip.lld_answer = backend.Complete(t, {});
  try {
    const LowLevelDescription lld = ExtractLld(trip.lld_answer, cls);
    PromptBundle g = forge.Generation(lld, Baseline().Inventory(lld.targets));
    g.attempt = attempt;
    trip.config_answer = backend.Complete(g, {});
  } catch (const ExtractionError&) {
  }
  return trip;
}

TEST(DecodingParamsTest, Defaults) {
  const DecodingParams p;
  EXPECT_EQ(p.temperature, 0.0);
  EXPECT_EQ(p.max_tokens, 1024);
  EXPECT_TRUE(p.stop_sequences.empty());
}

TEST(BackendDescriptorTest, Validation) {
  BackendDescriptor d;
  EXPECT_EQ(d.timeout_s, 600.0);
  EXPECT_EQ(d.max_in_flight, 1);
  EXPECT_NO_THROW(d.Validate());
  d.endpoint_url = "http://127.0.0.1:1";
  EXPECT_THROW(d.Validate(), ValidationError);
  d.kind = BackendKind::kHttp;
  EXPECT_NO_THROW(d.Validate());
  d.endpoint_url.reset();
  EXPECT_THROW(d.Validate(), ValidationError);
  d.endpoint_url = "http://127.0.0.1:1";
  d.timeout_s = 0;
  EXPECT_THROW(d.Validate(), ValidationError);
  d.timeout_s = 1;
  d.max_in_flight = 0;
  EXPECT_THROW(d.Validate(), ValidationError);
  BackendDescriptor http;
  http.kind = BackendKind::kHttp;
  EXPECT_THROW(MakeBackend(http), ValidationError);
}

TEST(BackendDescriptorTest, FromEnv) {
  ::setenv("NETCFG_LLM_URL", "http://localhost:8000", 1);
  ::setenv("NETCFG_LLM_MODEL", "local-model", 1);
  ::setenv("NETCFG_LLM_TIMEOUT_S", "30", 1);
  const BackendDescriptor http = BackendDescriptor::FromEnv(BackendKind::kHttp);
  EXPECT_EQ(http.endpoint_url, "http://localhost:8000");
  EXPECT_EQ(http.model_name, "local-model");
  EXPECT_EQ(http.timeout_s, 30.0);
  EXPECT_FALSE(BackendDescriptor::FromEnv(BackendKind::kRules).endpoint_url.has_value());
  ::setenv("NETCFG_LLM_TIMEOUT_S", "soon", 1);
  EXPECT_THROW(BackendDescriptor::FromEnv(BackendKind::kHttp), ValidationError);
  ::unsetenv("NETCFG_LLM_URL");
  ::unsetenv("NETCFG_LLM_MODEL");
  ::unsetenv("NETCFG_LLM_TIMEOUT_S");
}

TEST(BackendKindTest, Names) {
  EXPECT_EQ(ParseBackendKind("http"), BackendKind::kHttp);
  EXPECT_EQ(ParseBackendKind("rules"), BackendKind::kRules);
  EXPECT_FALSE(ParseBackendKind("mock").has_value());
  EXPECT_EQ(ToString(BackendKind::kRules), "rules");
}

// The keyword table, restated: each keyword alone in a neutral sentence.
TEST(ClassifyByRulesTest, EveryKeywordSelectsItsClass) {
  const std::vector<std::pair<IntentClass, std::vector<std::string>>> table = {
      {IntentClass::kTN, {"tunnel", "gre"}},
      {IntentClass::kRP, {"ospf", "routing", "route", "area", "advertise"}},
      {IntentClass::kACL,
       {"access list", "access-list", "acl", "permit", "deny", "block", "allow", "filter"}},
      {IntentClass::kCP,
       {"interface", "shut", "shutdown", "enable", "disable", "ip address", "description",
        "bring up", "address"}},
  };
  for (const auto& [cls, keywords] : table) {
    for (const std::string& k : keywords) {
      EXPECT_EQ(ClassifyByRules("please " + k + " on R1 now"), cls) << k;
      std::string upper = k;
      for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      EXPECT_EQ(ClassifyByRules(upper + " R2"), cls) << upper;
    }
  }
}

TEST(ClassifyByRulesTest, PrecedenceAndWordBoundaries) {
  EXPECT_EQ(ClassifyByRules("Create a GRE tunnel interface between R1 and R3"), IntentClass::kTN);
  EXPECT_EQ(ClassifyByRules("Advertise the interface subnet in OSPF"), IntentClass::kRP);
  EXPECT_EQ(ClassifyByRules("Block telnet on interface Gi0/2"), IntentClass::kACL);
  EXPECT_EQ(ClassifyByRules("Shut down Gig0/1 on R2"), IntentClass::kCP);
  EXPECT_FALSE(ClassifyByRules("make the network faster").has_value());
  EXPECT_FALSE(ClassifyByRules("progress report").has_value());
  EXPECT_FALSE(ClassifyByRules("").has_value());
}

TEST(ClassifyByRulesTest, DatasetGroundTruth) {
  for (const Intent& intent : LoadDataset(testing::DatasetPath())) {
    ASSERT_TRUE(intent.expected_class.has_value()) << intent.id;
    EXPECT_EQ(ClassifyByRules(intent.text), intent.expected_class) << intent.id;
  }
}

TEST(RulesBackendTest, ClassifyAnswersOnTheFirstLine) {
  auto backend = MakeRulesBackend();
  const PromptForge forge;
  const auto ask = [&](const std::string& text) {
    return backend->Complete(forge.Classification(MakeIntent("x", text), kClasses), {});
  };
  EXPECT_EQ(FirstLine(ask("shut down interface Gi0/1 on R2")), "CP");
  EXPECT_EQ(ExtractClass(ask("permit web traffic with an access list on R3")), IntentClass::kACL);
  EXPECT_EQ(ExtractClass(ask("tell me a joke")), IntentClass::kOther);
  EXPECT_EQ(ask("shut down interface Gi0/1 on R2"), ask("shut down interface Gi0/1 on R2"));

  auto strict = MakeRulesBackend(RulesOptions{true, {}});
  EXPECT_THROW(
      strict->Complete(forge.Classification(MakeIntent("x", "tell me a joke"), kClasses), {}),
      RuleMiss);
}

TEST(RulesBackendTest, FullTripIsValidAndDeterministic) {
  auto backend = MakeRulesBackend();
  for (const Intent& intent : LoadDataset(testing::DatasetPath())) {
    SCOPED_TRACE(intent.id);
    const IntentClass cls = *intent.expected_class;
    const Trip trip = RunTrip(*backend, intent, cls);
    EXPECT_EQ(ExtractClass(trip.class_answer), cls);
    const LowLevelDescription lld = ExtractLld(trip.lld_answer, cls);
    EXPECT_EQ(lld.intent_id, intent.id);
    EXPECT_TRUE(ValidateLld(lld, Baseline()).empty());
    EXPECT_EQ(trip.config_answer, RenderConfigForLld(lld));
    const ConfigBundle bundle = SplitConfigBundle(trip.config_answer);
    EXPECT_TRUE(CheckSyntax(bundle).empty());
    EXPECT_EQ(RunTrip(*backend, intent, cls).config_answer, trip.config_answer);
  }
}

TEST(RulesBackendTest, InjectedFaults) {
  const Intent intent = MakeIntent("cp-x", "Set the IP address of Gi0/3 on R1 to 10.9.9.1/24");
  RulesOptions options;
  options.faults = FaultPlan::Parse("class:1,json:1");
  auto faulty = MakeRulesBackend(options);
  Trip trip = RunTrip(*faulty, intent, IntentClass::kCP);
  EXPECT_EQ(FirstLine(trip.class_answer), "SNMP");
  EXPECT_EQ(ExtractClass(trip.class_answer), IntentClass::kOther);
  EXPECT_THROW(ExtractLld(trip.lld_answer, IntentClass::kCP), ExtractionError);

  options.faults = FaultPlan::Parse("syntax:1");
  auto syntax = MakeRulesBackend(options);
  trip = RunTrip(*syntax, intent, IntentClass::kCP);
  EXPECT_NE(trip.config_answer.find("ip addres "), std::string::npos);
  EXPECT_FALSE(CheckSyntax(SplitConfigBundle(trip.config_answer)).empty());

  // A config without an address line gets a misspelled line inserted.
  const Intent shut = MakeIntent("cp-y", "Shut down Gig0/1 on R2");
  trip = RunTrip(*syntax, shut, IntentClass::kCP);
  EXPECT_NE(trip.config_answer.find("ip addres "), std::string::npos);

  options.faults.schedule = FaultSchedule::kFirstCycleOnly;
  auto first_only = MakeRulesBackend(options);
  EXPECT_NE(RunTrip(*first_only, intent, IntentClass::kCP, 1).config_answer.find("ip addres "),
            std::string::npos);
  EXPECT_EQ(RunTrip(*first_only, intent, IntentClass::kCP, 2).config_answer.find("ip addres "),
            std::string::npos);
}

TEST(FaultPlanTest, Parse) {
  const FaultPlan plan = FaultPlan::Parse(" class:0.25 , syntax:@a+b ");
  EXPECT_EQ(plan.probability.at(FaultKind::kClass), 0.25);
  EXPECT_EQ(plan.targets.at(FaultKind::kSyntax), (std::set<std::string>{"a", "b"}));
  EXPECT_FALSE(plan.empty());
  EXPECT_TRUE(FaultPlan::Parse("").empty());
  EXPECT_TRUE(FaultPlan::Parse("json:0").empty());
  for (const char* bad : {"class", "wat:0.1", "class:1.5", "class:-0.1", "class:x", "class:@",
                          "class:@a++b", "class:0.1,"}) {
    EXPECT_THROW(FaultPlan::Parse(bad), ValidationError) << bad;
  }
  EXPECT_EQ(ParseFaultSchedule("first-cycle-only"), FaultSchedule::kFirstCycleOnly);
  EXPECT_EQ(ParseFaultSchedule("every-cycle"), FaultSchedule::kEveryCycle);
  EXPECT_FALSE(ParseFaultSchedule("never").has_value());
}

TEST(FaultPlanTest, Fires) {
  FaultPlan plan = FaultPlan::Parse("class:@t1,json:1,syntax:0");
  EXPECT_TRUE(plan.Fires(FaultKind::kClass, "t1", 1));
  EXPECT_FALSE(plan.Fires(FaultKind::kClass, "t2", 1));
  EXPECT_TRUE(plan.Fires(FaultKind::kJson, "anything", 3));
  EXPECT_FALSE(plan.Fires(FaultKind::kSyntax, "anything", 1));
  plan.schedule = FaultSchedule::kFirstCycleOnly;
  EXPECT_TRUE(plan.Fires(FaultKind::kJson, "anything", 1));
  EXPECT_FALSE(plan.Fires(FaultKind::kJson, "anything", 2));
  EXPECT_FALSE(plan.Fires(FaultKind::kClass, "t1", 2));

  // The hashed draw depends only on (id, seed, kind).
  FaultPlan half = FaultPlan::Parse("syntax:0.5");
  half.seed = 11;
  int fired = 0;
  for (int i = 0; i < 200; ++i) {
    const std::string id = "id-" + std::to_string(i);
    const bool f = half.Fires(FaultKind::kSyntax, id, 1);
    EXPECT_EQ(f, half.Fires(FaultKind::kSyntax, id, 4));
    fired += f ? 1 : 0;
  }
  EXPECT_GT(fired, 60);
  EXPECT_LT(fired, 140);
}

TEST(FaultPlanTest, ResolvedForSelectsExactCounts) {
  std::vector<std::string> ids;
  for (const Intent& intent : LoadDataset(testing::DatasetPath())) ids.push_back(intent.id);
  for (double p : {0.0, 0.1, 0.25, 0.5, 0.9, 1.0}) {
    FaultPlan plan;
    plan.probability[FaultKind::kClass] = p;
    plan.seed = 7;
    const FaultPlan resolved = plan.ResolvedFor(ids);
    EXPECT_TRUE(resolved.probability.empty());
    const std::size_t expected = static_cast<std::size_t>(std::llround(p * ids.size()));
    const auto it = resolved.targets.find(FaultKind::kClass);
    const std::size_t got = it == resolved.targets.end() ? 0 : it->second.size();
    EXPECT_EQ(got, expected) << p;
    int firing = 0;
    for (const std::string& id : ids) firing += resolved.Fires(FaultKind::kClass, id, 1) ? 1 : 0;
    EXPECT_EQ(static_cast<std::size_t>(firing), expected) << p;
    EXPECT_EQ(plan.ResolvedFor(ids).targets, resolved.targets);
  }
  // Duplicate ids count once; explicit targets survive.
  FaultPlan plan = FaultPlan::Parse("json:0.5,syntax:@keep");
  const FaultPlan resolved = plan.ResolvedFor({"a", "b", "a", "b"});
  EXPECT_EQ(resolved.targets.at(FaultKind::kJson).size(), 1u);
  EXPECT_EQ(resolved.targets.at(FaultKind::kSyntax), (std::set<std::string>{"keep"}));
}

TEST(ParseUserSectionsTest, SplitsLabelledBlocks) {
  const auto sections = ParseUserSections(
      "{Intent}:\nShut down Gi0/1\n\n{type}:\nCP: one\nRP: two\n\n{low_level_description}:\n{}\n");
  ASSERT_EQ(sections.size(), 3u);
  EXPECT_EQ(sections.at("Intent"), "Shut down Gi0/1");
  EXPECT_EQ(sections.at("type"), "CP: one\nRP: two");
  EXPECT_EQ(sections.at("low_level_description"), "{}");
  EXPECT_TRUE(ParseUserSections("no labels").empty());
}

TEST(RenderConfigForLldTest, StandardAclUsesSourceOnly) {
  AclParams p;
  p.device = "R3";
  p.acl_id = "10";
  p.action = AclAction::kDeny;
  p.src_prefix = *Ipv4::Parse("10.0.1.10");
  p.src_wildcard = Ipv4(0);
  p.apply_to_interface = "GigabitEthernet0/2";
  p.direction = AclDirection::kOut;
  EXPECT_EQ(RenderConfigForLld({"a", {"R3"}, p}),
            "R3\naccess-list 10 deny host 10.0.1.10\naccess-list 10 permit any\n"
            "interface GigabitEthernet0/2\n ip access-group 10 out\n");
}

}  // namespace
}  // namespace netcfg
