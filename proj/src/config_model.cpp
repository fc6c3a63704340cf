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

#include "netcfg/config_model.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "netcfg/errors.hpp"
#include "text_util.hpp"

namespace netcfg {

using json = nlohmann::json;

std::string_view ToString(AdminState state) {
  return state == AdminState::kUp ? "up" : "down";
}
std::string_view ToString(AclDirection direction) {
  return direction == AclDirection::kIn ? "in" : "out";
}
std::string_view ToString(AclAction action) {
  return action == AclAction::kPermit ? "permit" : "deny";
}
std::string_view ToString(Protocol protocol) {
  switch (protocol) {
    case Protocol::kIp: return "ip";
    case Protocol::kTcp: return "tcp";
    case Protocol::kUdp: return "udp";
    case Protocol::kIcmp: return "icmp";
  }
  return "ip";
}

std::optional<AdminState> ParseAdminState(std::string_view text) {
  if (text == "up") return AdminState::kUp;
  if (text == "down") return AdminState::kDown;
  return std::nullopt;
}
std::optional<AclDirection> ParseAclDirection(std::string_view text) {
  if (text == "in") return AclDirection::kIn;
  if (text == "out") return AclDirection::kOut;
  return std::nullopt;
}
std::optional<AclAction> ParseAclAction(std::string_view text) {
  if (text == "permit") return AclAction::kPermit;
  if (text == "deny") return AclAction::kDeny;
  return std::nullopt;
}
std::optional<Protocol> ParseProtocol(std::string_view text) {
  if (text == "ip") return Protocol::kIp;
  if (text == "tcp") return Protocol::kTcp;
  if (text == "udp") return Protocol::kUdp;
  if (text == "icmp") return Protocol::kIcmp;
  return std::nullopt;
}

std::optional<std::string> CanonicalInterfaceName(std::string_view name) {
  static constexpr std::array<std::string_view, 7> kTypes = {
      "GigabitEthernet", "FastEthernet", "TenGigabitEthernet", "Ethernet",
      "Serial",          "Loopback",     "Tunnel"};
  std::string compact;
  for (char c : name) {
    if (!text::IsSpace(c)) compact += c;
  }
  std::size_t split = 0;
  while (split < compact.size() && std::isalpha(static_cast<unsigned char>(compact[split]))) {
    ++split;
  }
  if (split == 0 || split == compact.size()) return std::nullopt;
  const std::string_view suffix = std::string_view(compact).substr(split);
  if (!std::isdigit(static_cast<unsigned char>(suffix.front()))) return std::nullopt;
  if (!std::all_of(suffix.begin(), suffix.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '.' || c == ':';
      })) {
    return std::nullopt;
  }
  const std::string prefix = text::ToLower(std::string_view(compact).substr(0, split));
  if (prefix == "ge") return "GigabitEthernet" + std::string(suffix);
  std::string_view match;
  for (std::string_view type : kTypes) {
    if (text::ToLower(type).rfind(prefix, 0) == 0) {
      if (!match.empty()) return std::nullopt;  // ambiguous abbreviation
      match = type;
    }
  }
  if (match.empty()) return std::nullopt;
  return std::string(match) + std::string(suffix);
}

bool IsVirtualInterface(std::string_view canonical_name) {
  return canonical_name.rfind("Loopback", 0) == 0 ||
         canonical_name.rfind("Tunnel", 0) == 0;
}

const InterfaceStanza* DeviceConfigAst::FindInterface(std::string_view name) const {
  for (const auto& s : stanzas) {
    if (auto* i = std::get_if<InterfaceStanza>(&s); i && i->name == name) return i;
  }
  return nullptr;
}

const TunnelStanza* DeviceConfigAst::FindTunnel(std::string_view name) const {
  for (const auto& s : stanzas) {
    if (auto* t = std::get_if<TunnelStanza>(&s); t && t->tunnel_if == name) return t;
  }
  return nullptr;
}

const AclStanza* DeviceConfigAst::FindAcl(std::string_view acl_id) const {
  for (const auto& s : stanzas) {
    if (auto* a = std::get_if<AclStanza>(&s); a && a->acl_id == acl_id) return a;
  }
  return nullptr;
}

const OspfStanza* DeviceConfigAst::FindOspf(std::uint32_t process_id) const {
  for (const auto& s : stanzas) {
    if (auto* o = std::get_if<OspfStanza>(&s); o && o->process_id == process_id) return o;
  }
  return nullptr;
}

std::vector<const OspfStanza*> DeviceConfigAst::OspfProcesses() const {
  std::vector<const OspfStanza*> out;
  for (const auto& s : stanzas) {
    if (auto* o = std::get_if<OspfStanza>(&s)) out.push_back(o);
  }
  return out;
}

std::optional<Ipv4> DeviceConfigAst::InterfaceAddress(std::string_view name) const {
  if (const auto* i = FindInterface(name)) return i->ip_address;
  if (const auto* t = FindTunnel(name)) return t->tunnel_ip;
  return std::nullopt;
}

bool ParseResult::HasErrors() const {
  return std::any_of(issues.begin(), issues.end(), [](const SyntaxIssue& i) {
    return i.severity == Severity::kError;
  });
}

std::vector<SyntaxIssue> ParseResult::Errors() const {
  std::vector<SyntaxIssue> out;
  std::copy_if(issues.begin(), issues.end(), std::back_inserter(out),
               [](const SyntaxIssue& i) { return i.severity == Severity::kError; });
  return out;
}

bool NetworkModel::HasDevice(std::string_view name) const {
  return devices.find(std::string(name)) != devices.end();
}

const DeviceConfigAst* NetworkModel::FindDevice(std::string_view name) const {
  auto it = devices.find(std::string(name));
  return it == devices.end() ? nullptr : &it->second;
}

DeviceInventory NetworkModel::Inventory(const std::vector<std::string>& names) const {
  DeviceInventory out;
  for (const auto& name : names) {
    auto it = platforms.find(name);
    out.push_back(it != platforms.end() ? it->second : DeviceInfo{name, "", ""});
  }
  return out;
}

std::vector<std::string> NetworkModel::Neighbors(std::string_view device) const {
  std::set<std::string> out;
  for (const auto& link : links) {
    if (link.a.device == device) out.insert(link.b.device);
    if (link.b.device == device) out.insert(link.a.device);
  }
  return {out.begin(), out.end()};
}

namespace {

InterfaceRef ParseEndpoint(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    throw ValidationError("link endpoint '" + text + "' must look like 'R1:Gi0/0'");
  }
  const std::string raw_if = text.substr(colon + 1);
  auto name = CanonicalInterfaceName(raw_if);
  return {text.substr(0, colon), name ? *name : raw_if};
}

bool HasInterface(const NetworkModel& model, const InterfaceRef& ref) {
  const auto* device = model.FindDevice(ref.device);
  return device && (device->FindInterface(ref.interface) || device->FindTunnel(ref.interface));
}

}  // namespace

std::vector<std::string> CheckTopology(const NetworkModel& model) {
  std::vector<std::string> problems;
  for (const auto& [name, ast] : model.devices) {
    if (ast.device != name) {
      problems.push_back("device '" + name + "' holds config for '" + ast.device + "'");
    }
  }
  for (const auto& link : model.links) {
    for (const auto* end : {&link.a, &link.b}) {
      if (!HasInterface(model, *end)) {
        problems.push_back("link endpoint " + end->device + ":" + end->interface +
                           " does not exist");
      }
    }
  }
  for (const auto& host : model.hosts) {
    if (!HasInterface(model, host.attachment)) {
      problems.push_back("host " + host.name + " attaches to missing interface " +
                         host.attachment.device + ":" + host.attachment.interface);
    }
  }
  return problems;
}

NetworkModel ParseTopology(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("topology: ") + e.what());
  }
  NetworkModel model;
  try {
    for (const auto& d : doc.at("devices")) {
      const std::string name = d.at("name").get<std::string>();
      if (model.devices.count(name)) throw ValidationError("duplicate device '" + name + "'");
      ParseResult parsed = ParseConfig(name, d.value("configs", std::string()));
      if (parsed.HasErrors()) {
        const auto& first = parsed.Errors().front();
        throw ValidationError("device " + name + " line " + std::to_string(first.line) +
                              ": " + first.message);
      }
      model.devices.emplace(name, std::move(parsed.ast));
      model.platforms.emplace(
          name, DeviceInfo{name, d.value("brand", std::string()), d.value("model", std::string())});
    }
    for (const auto& l : doc.value("links", json::array())) {
      model.links.push_back(
          {ParseEndpoint(l.at("a").get<std::string>()), ParseEndpoint(l.at("b").get<std::string>())});
    }
    for (const auto& h : doc.value("hosts", json::array())) {
      auto ip = Ipv4::Parse(h.at("ip").get<std::string>());
      if (!ip) throw ValidationError("host ip is not a dotted quad");
      const std::string raw_if = h.at("if").get<std::string>();
      auto name = CanonicalInterfaceName(raw_if);
      model.hosts.push_back({h.at("name").get<std::string>(),
                             {h.at("device").get<std::string>(), name ? *name : raw_if},
                             *ip});
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("topology: ") + e.what());
  }
  if (auto problems = CheckTopology(model); !problems.empty()) {
    throw ValidationError("topology: " + problems.front());
  }
  return model;
}

NetworkModel LoadTopology(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read topology file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseTopology(buffer.str());
}

std::string TopologyToJson(const NetworkModel& model) {
  json doc;
  doc["devices"] = json::array();
  for (const auto& [name, ast] : model.devices) {
    json d = {{"name", name}, {"configs", CanonicalText(ast)}};
    if (auto it = model.platforms.find(name); it != model.platforms.end()) {
      if (!it->second.brand.empty()) d["brand"] = it->second.brand;
      if (!it->second.model.empty()) d["model"] = it->second.model;
    }
    doc["devices"].push_back(std::move(d));
  }
  doc["links"] = json::array();
  for (const auto& l : model.links) {
    doc["links"].push_back({{"a", l.a.device + ":" + l.a.interface},
                            {"b", l.b.device + ":" + l.b.interface}});
  }
  doc["hosts"] = json::array();
  for (const auto& h : model.hosts) {
    doc["hosts"].push_back({{"name", h.name},
                            {"device", h.attachment.device},
                            {"if", h.attachment.interface},
                            {"ip", h.ip.str()}});
  }
  return doc.dump(2) + "\n";
}

NetworkModel ApplyCandidate(const NetworkModel& model, const ConfigBundle& bundle,
                            std::vector<SyntaxIssue>* warnings) {
  for (const auto& section : bundle.sections) {
    if (!model.HasDevice(section.device)) {
      throw ApplicabilityError("unknown device " + section.device);
    }
  }
  NetworkModel candidate = model;
  for (const auto& section : bundle.sections) {
    auto& device = candidate.devices.at(section.device);
    ParseResult parsed = ParseConfigOnto(device, section.text);
    device = std::move(parsed.ast);
    if (warnings) {
      for (auto& issue : parsed.issues) {
        if (issue.severity == Severity::kWarning) warnings->push_back(std::move(issue));
      }
    }
  }
  return candidate;
}

}  // namespace netcfg
