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

// Typed model of the IOS-like configuration subset the pipeline generates and
// verifies: interfaces, numbered ACLs, OSPF network statements and GRE
// tunnels. Everything here is a value type; models are never mutated in place
// once built.

#ifndef NETCFG_CONFIG_MODEL_HPP_
#define NETCFG_CONFIG_MODEL_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "netcfg/ipv4.hpp"

namespace netcfg {

enum class AdminState { kUp, kDown };
enum class AclDirection { kIn, kOut };
enum class AclAction { kPermit, kDeny };
enum class Protocol { kIp, kTcp, kUdp, kIcmp };

std::string_view ToString(AdminState state);
std::string_view ToString(AclDirection direction);
std::string_view ToString(AclAction action);
std::string_view ToString(Protocol protocol);
std::optional<AdminState> ParseAdminState(std::string_view text);
std::optional<AclDirection> ParseAclDirection(std::string_view text);
std::optional<AclAction> ParseAclAction(std::string_view text);
std::optional<Protocol> ParseProtocol(std::string_view text);

// Expands IOS abbreviations ("Gig0/1", "gi 0/1", "Lo0") to the full interface
// name. Returns nullopt for names that are not one of the supported interface
// types.
std::optional<std::string> CanonicalInterfaceName(std::string_view name);
bool IsVirtualInterface(std::string_view canonical_name);

struct AclBinding {
  std::string acl_id;
  AclDirection direction = AclDirection::kIn;
  friend bool operator==(const AclBinding&, const AclBinding&) = default;
};

struct InterfaceStanza {
  std::string name;
  std::optional<Ipv4> ip_address;
  std::optional<Ipv4> mask;
  AdminState admin_state = AdminState::kUp;
  std::optional<std::string> description;
  std::vector<AclBinding> acl_bindings;
  friend bool operator==(const InterfaceStanza&, const InterfaceStanza&) = default;
};

struct AclEntry {
  AclAction action = AclAction::kPermit;
  Protocol protocol = Protocol::kIp;
  AddressMatch src = AddressMatch::Any();
  // Absent for standard ACLs.
  std::optional<AddressMatch> dst;
  // "eq <port>"; only with tcp/udp.
  std::optional<std::uint16_t> dst_port;
  friend bool operator==(const AclEntry&, const AclEntry&) = default;
};

struct AclStanza {
  std::string acl_id;
  std::vector<AclEntry> entries;  // order is semantic
  friend bool operator==(const AclStanza&, const AclStanza&) = default;
};

struct OspfNetwork {
  Ipv4 prefix;
  Ipv4 wildcard;
  std::uint32_t area = 0;
  friend auto operator<=>(const OspfNetwork&, const OspfNetwork&) = default;
};

struct OspfStanza {
  std::uint32_t process_id = 1;
  std::vector<OspfNetwork> networks;  // sorted, unique
  friend bool operator==(const OspfStanza&, const OspfStanza&) = default;
};

struct TunnelStanza {
  std::string tunnel_if;
  // Interface name, or a literal address when configured as one.
  std::optional<std::string> source_if;
  std::optional<Ipv4> destination_ip;
  std::optional<Ipv4> tunnel_ip;
  std::optional<Ipv4> tunnel_mask;
  std::string mode = "gre";
  AdminState admin_state = AdminState::kUp;
  friend bool operator==(const TunnelStanza&, const TunnelStanza&) = default;
};

// Variant order doubles as the canonical stanza-kind order.
using Stanza = std::variant<InterfaceStanza, TunnelStanza, AclStanza, OspfStanza>;

struct DeviceConfigAst {
  std::string device;
  std::vector<Stanza> stanzas;

  const InterfaceStanza* FindInterface(std::string_view name) const;
  const TunnelStanza* FindTunnel(std::string_view name) const;
  const AclStanza* FindAcl(std::string_view acl_id) const;
  const OspfStanza* FindOspf(std::uint32_t process_id) const;
  std::vector<const OspfStanza*> OspfProcesses() const;
  // Address configured on a physical or tunnel interface.
  std::optional<Ipv4> InterfaceAddress(std::string_view name) const;

  friend bool operator==(const DeviceConfigAst&, const DeviceConfigAst&) = default;
};

enum class Severity { kError, kWarning };

struct SyntaxIssue {
  int line = 0;    // 1-based
  int column = 0;  // 1-based, first character of the offending directive
  Severity severity = Severity::kError;
  std::string message;
  std::string text;  // the offending line, trimmed
  // Closest known directive within edit distance 1, when one exists.
  std::string did_you_mean;
  friend bool operator==(const SyntaxIssue&, const SyntaxIssue&) = default;
};

struct ParseResult {
  DeviceConfigAst ast;
  std::vector<SyntaxIssue> issues;

  bool HasErrors() const;
  std::vector<SyntaxIssue> Errors() const;
};

// Total parser: never throws, never stops early. Unrecognised or malformed
// lines become issues; well-formed IOS lines outside the modelled subset are
// warnings.
ParseResult ParseConfig(std::string_view device, std::string_view text);

// Parses `text` as commands entered on top of an existing configuration, with
// IOS semantics: re-entered interfaces keep unmentioned settings, ACL entries
// append (identical entries are dropped with a warning), OSPF networks union.
ParseResult ParseConfigOnto(const DeviceConfigAst& base, std::string_view text);

// Deterministic rendering, stanzas ordered by kind then name. The first line
// is always "hostname <device>".
std::string CanonicalText(const DeviceConfigAst& ast);

// Puts stanzas in canonical order and merges duplicates, so that
// ParseConfig(device, CanonicalText(ast)).ast == Normalized(ast).
DeviceConfigAst Normalized(const DeviceConfigAst& ast);

// One device section of a generated answer.
struct DeviceSection {
  std::string device;
  std::string text;
  friend bool operator==(const DeviceSection&, const DeviceSection&) = default;
};

struct ConfigBundle {
  std::vector<DeviceSection> sections;
  bool empty() const { return sections.empty(); }
  friend bool operator==(const ConfigBundle&, const ConfigBundle&) = default;
};

struct DeviceInfo {
  std::string name;
  std::string brand;
  std::string model;
  friend bool operator==(const DeviceInfo&, const DeviceInfo&) = default;
};

using DeviceInventory = std::vector<DeviceInfo>;

struct InterfaceRef {
  std::string device;
  std::string interface;
  friend auto operator<=>(const InterfaceRef&, const InterfaceRef&) = default;
};

struct Link {
  InterfaceRef a;
  InterfaceRef b;
  friend bool operator==(const Link&, const Link&) = default;
};

struct Host {
  std::string name;
  InterfaceRef attachment;
  Ipv4 ip;
  friend bool operator==(const Host&, const Host&) = default;
};

struct NetworkModel {
  std::map<std::string, DeviceConfigAst> devices;
  std::map<std::string, DeviceInfo> platforms;
  std::vector<Link> links;
  std::vector<Host> hosts;

  bool HasDevice(std::string_view name) const;
  const DeviceConfigAst* FindDevice(std::string_view name) const;
  // Inventory entries for the given devices, in the order given. Devices
  // without platform data get an empty brand/model.
  DeviceInventory Inventory(const std::vector<std::string>& names) const;
  // Devices sharing a link with `device`.
  std::vector<std::string> Neighbors(std::string_view device) const;

  friend bool operator==(const NetworkModel&, const NetworkModel&) = default;
};

// topology.json: {devices:[{name, brand?, model?, configs}], links:[{a:"R1:Gi0/0",
// b:"R2:Gi0/0"}], hosts:[{name, device, if, ip}]}. Throws ParseError on bad
// JSON and ValidationError when an invariant fails (unknown link endpoints,
// duplicate devices, device configs with syntax errors).
NetworkModel ParseTopology(std::string_view json_text);
NetworkModel LoadTopology(const std::filesystem::path& path);
std::string TopologyToJson(const NetworkModel& model);

// Human-readable invariant violations; empty when the model is consistent.
std::vector<std::string> CheckTopology(const NetworkModel& model);

// Returns a new model with every section of `bundle` applied to its device.
// Throws ApplicabilityError when a section names a device outside the model.
// Parse warnings from the applied sections are appended to `warnings`.
NetworkModel ApplyCandidate(const NetworkModel& model, const ConfigBundle& bundle,
                            std::vector<SyntaxIssue>* warnings = nullptr);

}  // namespace netcfg

#endif  // NETCFG_CONFIG_MODEL_HPP_
