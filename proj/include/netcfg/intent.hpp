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

// Intents, intent classes and the structured low-level description (LLD)
// that sits between a natural-language intent and generated device configs.

#ifndef NETCFG_INTENT_HPP_
#define NETCFG_INTENT_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "netcfg/config_model.hpp"
#include "netcfg/ipv4.hpp"

namespace netcfg {

// kOther is the sink for anything the classifier cannot map to the four
// configurable classes. Nothing downstream of classification accepts it.
enum class IntentClass { kCP, kRP, kACL, kTN, kOther };

inline constexpr std::array<IntentClass, 4> kConfigurableClasses = {
    IntentClass::kCP, IntentClass::kRP, IntentClass::kACL, IntentClass::kTN};

std::string_view ToString(IntentClass c);
// Exact names: "CP", "RP", "ACL", "TN", "Other".
std::optional<IntentClass> ParseIntentClass(std::string_view text);

enum class Complexity { kSimple, kComplex };
std::string_view ToString(Complexity c);

struct Intent {
  std::string id;
  std::string text;
  std::optional<IntentClass> expected_class;  // dataset ground truth only
  Complexity complexity = Complexity::kSimple;
  friend bool operator==(const Intent&, const Intent&) = default;
};

// One JSONL record. Throws ParseError on malformed JSON or missing fields and
// ValidationError on empty text or an invalid label (including "Other").
Intent ParseIntentRecord(std::string_view line);
std::string EncodeIntentRecord(const Intent& intent);
// Blank lines are skipped; errors carry the 1-based line number.
std::vector<Intent> LoadDataset(const std::filesystem::path& path);

struct CpParams {
  std::string device;
  std::string interface;
  std::optional<Ipv4> ip_address;
  std::optional<Ipv4> mask;
  std::optional<AdminState> admin_state;
  std::optional<std::string> description;
  friend bool operator==(const CpParams&, const CpParams&) = default;
};

struct AclParams {
  std::string device;
  std::string acl_id;
  AclAction action = AclAction::kPermit;
  Protocol protocol = Protocol::kIp;
  Ipv4 src_prefix;
  Ipv4 src_wildcard;
  std::optional<Ipv4> dst_prefix;
  std::optional<Ipv4> dst_wildcard;
  std::optional<std::uint16_t> dst_port;
  std::optional<std::string> apply_to_interface;
  std::optional<AclDirection> direction;

  AddressMatch Source() const { return {src_prefix, src_wildcard}; }
  // "any" when no destination was given.
  AddressMatch Destination() const;
  friend bool operator==(const AclParams&, const AclParams&) = default;
};

struct PrefixWildcard {
  Ipv4 prefix;
  Ipv4 wildcard;
  friend bool operator==(const PrefixWildcard&, const PrefixWildcard&) = default;
};

struct RpParams {
  std::string device;
  std::uint32_t ospf_process_id = 1;
  std::uint32_t area = 0;
  std::vector<PrefixWildcard> networks;
  friend bool operator==(const RpParams&, const RpParams&) = default;
};

struct TunnelEndpoint {
  std::string device;
  std::string tunnel_if;
  std::string source_if;
  Ipv4 destination_ip;
  Ipv4 tunnel_ip;
  Ipv4 tunnel_mask;
  friend bool operator==(const TunnelEndpoint&, const TunnelEndpoint&) = default;
};

struct TnParams {
  TunnelEndpoint endpoint_a;
  TunnelEndpoint endpoint_b;
  std::string mode = "gre";
  friend bool operator==(const TnParams&, const TnParams&) = default;
};

// Variant order matches kConfigurableClasses.
using LldParams = std::variant<CpParams, RpParams, AclParams, TnParams>;

struct LowLevelDescription {
  std::string intent_id;
  std::vector<std::string> targets;
  LldParams params;

  // Derived from the params alternative, so it can never disagree with it.
  IntentClass intent_class() const;
  friend bool operator==(const LowLevelDescription&, const LowLevelDescription&) = default;
};

// Canonical encoding: keys exactly as in the schema, lowercase, optional
// fields omitted when absent, object keys sorted.
std::string EncodeLld(const LowLevelDescription& lld);
// Decodes an LLD JSON document against the schema for `expected_class`.
// Unknown keys are ignored. Throws SchemaError on any mismatch, including a
// "class" field that disagrees with `expected_class`.
LowLevelDescription DecodeLld(std::string_view json_text, IntentClass expected_class);

struct ValidationIssue {
  std::string field;
  std::string message;
  friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

// Checks LLD invariants and every reference against the model. Returns an
// empty list when the description can be handed to generation. Physical
// interfaces must already exist; Loopback/Tunnel interfaces may be created.
std::vector<ValidationIssue> ValidateLld(const LowLevelDescription& lld,
                                         const NetworkModel& model);

}  // namespace netcfg

#endif  // NETCFG_INTENT_HPP_
