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

#include "netcfg/intent.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "netcfg/errors.hpp"
#include "text_util.hpp"

namespace netcfg {

using json = nlohmann::json;

std::string_view ToString(IntentClass c) {
  switch (c) {
    case IntentClass::kCP: return "CP";
    case IntentClass::kRP: return "RP";
    case IntentClass::kACL: return "ACL";
    case IntentClass::kTN: return "TN";
    case IntentClass::kOther: return "Other";
  }
  return "Other";
}

std::optional<IntentClass> ParseIntentClass(std::string_view text) {
  for (IntentClass c : {IntentClass::kCP, IntentClass::kRP, IntentClass::kACL,
                        IntentClass::kTN, IntentClass::kOther}) {
    if (ToString(c) == text) return c;
  }
  return std::nullopt;
}

std::string_view ToString(Complexity c) {
  return c == Complexity::kSimple ? "simple" : "complex";
}

Intent ParseIntentRecord(std::string_view line) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("intent record: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("id") || !doc.contains("text") ||
      !doc["id"].is_string() || !doc["text"].is_string()) {
    throw ParseError("intent record needs string fields 'id' and 'text'");
  }
  Intent intent;
  intent.id = doc["id"].get<std::string>();
  intent.text = doc["text"].get<std::string>();
  if (intent.id.empty()) throw ValidationError("intent id is empty");
  if (text::Trim(intent.text).empty()) {
    throw ValidationError("intent " + intent.id + " has empty text");
  }
  if (auto it = doc.find("expected_class"); it != doc.end() && !it->is_null()) {
    auto c = it->is_string() ? ParseIntentClass(it->get<std::string>()) : std::nullopt;
    if (!c || *c == IntentClass::kOther) {
      throw ValidationError("intent " + intent.id + ": expected_class must be one of CP, RP, ACL, TN");
    }
    intent.expected_class = c;
  }
  if (auto it = doc.find("complexity"); it != doc.end() && !it->is_null()) {
    const std::string value = it->is_string() ? it->get<std::string>() : "";
    if (value == "simple") {
      intent.complexity = Complexity::kSimple;
    } else if (value == "complex") {
      intent.complexity = Complexity::kComplex;
    } else {
      throw ValidationError("intent " + intent.id + ": complexity must be simple or complex");
    }
  }
  return intent;
}

std::string EncodeIntentRecord(const Intent& intent) {
  json doc = {{"id", intent.id},
              {"text", intent.text},
              {"complexity", std::string(ToString(intent.complexity))}};
  if (intent.expected_class) doc["expected_class"] = std::string(ToString(*intent.expected_class));
  return doc.dump();
}

std::vector<Intent> LoadDataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read dataset " + path.string());
  std::vector<Intent> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (text::Trim(line).empty()) continue;
    try {
      out.push_back(ParseIntentRecord(line));
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ":" + std::to_string(number) + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

AddressMatch AclParams::Destination() const {
  if (dst_prefix && dst_wildcard) return {*dst_prefix, *dst_wildcard};
  return AddressMatch::Any();
}

IntentClass LowLevelDescription::intent_class() const {
  return kConfigurableClasses[params.index()];
}

namespace {

// --- encoding --------------------------------------------------------------

json EncodeEndpoint(const TunnelEndpoint& e) {
  return {{"device", e.device},
          {"tunnel_if", e.tunnel_if},
          {"source_if", e.source_if},
          {"destination_ip", e.destination_ip.str()},
          {"tunnel_ip", e.tunnel_ip.str()},
          {"tunnel_mask", e.tunnel_mask.str()}};
}

json EncodeParams(const CpParams& p) {
  json j = {{"device", p.device}, {"interface", p.interface}};
  if (p.ip_address) j["ip_address"] = p.ip_address->str();
  if (p.mask) j["mask"] = p.mask->str();
  if (p.admin_state) j["admin_state"] = std::string(ToString(*p.admin_state));
  if (p.description) j["description"] = *p.description;
  return j;
}

json EncodeParams(const AclParams& p) {
  json j = {{"device", p.device},
            {"acl_id", p.acl_id},
            {"action", std::string(ToString(p.action))},
            {"protocol", std::string(ToString(p.protocol))},
            {"src_prefix", p.src_prefix.str()},
            {"src_wildcard", p.src_wildcard.str()}};
  if (p.dst_prefix) j["dst_prefix"] = p.dst_prefix->str();
  if (p.dst_wildcard) j["dst_wildcard"] = p.dst_wildcard->str();
  if (p.dst_port) j["dst_port"] = *p.dst_port;
  if (p.apply_to_interface) j["apply_to_interface"] = *p.apply_to_interface;
  if (p.direction) j["direction"] = std::string(ToString(*p.direction));
  return j;
}

json EncodeParams(const RpParams& p) {
  json networks = json::array();
  for (const auto& n : p.networks) {
    networks.push_back({{"prefix", n.prefix.str()}, {"wildcard", n.wildcard.str()}});
  }
  return {{"device", p.device},
          {"ospf_process_id", p.ospf_process_id},
          {"area", p.area},
          {"networks", networks}};
}

json EncodeParams(const TnParams& p) {
  return {{"endpoint_a", EncodeEndpoint(p.endpoint_a)},
          {"endpoint_b", EncodeEndpoint(p.endpoint_b)},
          {"mode", p.mode}};
}

// --- decoding --------------------------------------------------------------

[[noreturn]] void Mismatch(const std::string& what) { throw SchemaError("lld: " + what); }

const json& Required(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) Mismatch(std::string("missing field '") + key + "'");
  return *it;
}

const json* Optional(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::string String(const json& v, const char* key) {
  if (!v.is_string()) Mismatch(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Ipv4 Address(const json& v, const char* key) {
  auto a = Ipv4::Parse(text::Trim(String(v, key)));
  if (!a) Mismatch(std::string("field '") + key + "' is not a dotted quad");
  return *a;
}

std::uint32_t Unsigned(const json& v, const char* key, std::uint32_t max) {
  std::int64_t n = -1;
  if (v.is_number_integer()) {
    n = v.get<std::int64_t>();
  } else if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (!s.empty() && s.size() <= 10 &&
        std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      n = std::stoll(s);
    } else if (auto dotted = Ipv4::Parse(s); dotted && std::string(key) == "area") {
      n = dotted->value();
    }
  }
  if (n < 0 || n > static_cast<std::int64_t>(max)) {
    Mismatch(std::string("field '") + key + "' must be an integer in range");
  }
  return static_cast<std::uint32_t>(n);
}

std::string InterfaceName(const json& v, const char* key) {
  const std::string raw = String(v, key);
  auto canonical = CanonicalInterfaceName(raw);
  return canonical ? *canonical : raw;
}

std::string Lower(const json& v, const char* key) { return text::ToLower(String(v, key)); }

CpParams DecodeCp(const json& p) {
  CpParams out;
  out.device = String(Required(p, "device"), "device");
  out.interface = InterfaceName(Required(p, "interface"), "interface");
  if (auto* v = Optional(p, "ip_address")) out.ip_address = Address(*v, "ip_address");
  if (auto* v = Optional(p, "mask")) out.mask = Address(*v, "mask");
  if (auto* v = Optional(p, "admin_state")) {
    out.admin_state = ParseAdminState(Lower(*v, "admin_state"));
    if (!out.admin_state) Mismatch("admin_state must be 'up' or 'down'");
  }
  if (auto* v = Optional(p, "description")) out.description = String(*v, "description");
  return out;
}

AclParams DecodeAcl(const json& p) {
  AclParams out;
  out.device = String(Required(p, "device"), "device");
  const json& id = Required(p, "acl_id");
  out.acl_id = id.is_number_integer() ? std::to_string(id.get<std::int64_t>()) : String(id, "acl_id");
  auto action = ParseAclAction(Lower(Required(p, "action"), "action"));
  if (!action) Mismatch("action must be 'permit' or 'deny'");
  out.action = *action;
  auto protocol = ParseProtocol(Lower(Required(p, "protocol"), "protocol"));
  if (!protocol) Mismatch("protocol must be one of ip, tcp, udp, icmp");
  out.protocol = *protocol;
  out.src_prefix = Address(Required(p, "src_prefix"), "src_prefix");
  out.src_wildcard = Address(Required(p, "src_wildcard"), "src_wildcard");
  if (auto* v = Optional(p, "dst_prefix")) out.dst_prefix = Address(*v, "dst_prefix");
  if (auto* v = Optional(p, "dst_wildcard")) out.dst_wildcard = Address(*v, "dst_wildcard");
  if (auto* v = Optional(p, "dst_port")) {
    out.dst_port = static_cast<std::uint16_t>(Unsigned(*v, "dst_port", 65535));
  }
  if (auto* v = Optional(p, "apply_to_interface")) {
    out.apply_to_interface = InterfaceName(*v, "apply_to_interface");
  }
  if (auto* v = Optional(p, "direction")) {
    out.direction = ParseAclDirection(Lower(*v, "direction"));
    if (!out.direction) Mismatch("direction must be 'in' or 'out'");
  }
  return out;
}

RpParams DecodeRp(const json& p) {
  RpParams out;
  out.device = String(Required(p, "device"), "device");
  out.ospf_process_id = Unsigned(Required(p, "ospf_process_id"), "ospf_process_id", 65535);
  out.area = Unsigned(Required(p, "area"), "area", 0xffffffffu);
  const json& networks = Required(p, "networks");
  if (!networks.is_array()) Mismatch("networks must be an array");
  for (const auto& n : networks) {
    if (!n.is_object()) Mismatch("networks entries must be objects");
    out.networks.push_back({Address(Required(n, "prefix"), "prefix"),
                            Address(Required(n, "wildcard"), "wildcard")});
  }
  return out;
}

TunnelEndpoint DecodeEndpoint(const json& e) {
  if (!e.is_object()) Mismatch("tunnel endpoint must be an object");
  TunnelEndpoint out;
  out.device = String(Required(e, "device"), "device");
  out.tunnel_if = InterfaceName(Required(e, "tunnel_if"), "tunnel_if");
  out.source_if = InterfaceName(Required(e, "source_if"), "source_if");
  out.destination_ip = Address(Required(e, "destination_ip"), "destination_ip");
  out.tunnel_ip = Address(Required(e, "tunnel_ip"), "tunnel_ip");
  out.tunnel_mask = Address(Required(e, "tunnel_mask"), "tunnel_mask");
  return out;
}

TnParams DecodeTn(const json& p) {
  TnParams out;
  out.endpoint_a = DecodeEndpoint(Required(p, "endpoint_a"));
  out.endpoint_b = DecodeEndpoint(Required(p, "endpoint_b"));
  if (auto* v = Optional(p, "mode")) out.mode = Lower(*v, "mode");
  return out;
}

}  // namespace

std::string EncodeLld(const LowLevelDescription& lld) {
  json doc = {{"intent_id", lld.intent_id},
              {"class", std::string(ToString(lld.intent_class()))},
              {"targets", lld.targets},
              {"params", std::visit([](const auto& p) { return EncodeParams(p); }, lld.params)}};
  return doc.dump();
}

LowLevelDescription DecodeLld(std::string_view json_text, IntentClass expected_class) {
  if (expected_class == IntentClass::kOther) {
    throw ContractError("DecodeLld: class Other has no low-level description");
  }
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("lld: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) Mismatch("top level must be an object");
  try {
    LowLevelDescription lld;
    if (auto* v = Optional(doc, "intent_id")) lld.intent_id = String(*v, "intent_id");
    if (auto* v = Optional(doc, "class")) {
      auto c = ParseIntentClass(text::Trim(String(*v, "class")));
      if (!c) {
        std::string upper = String(*v, "class");
        std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
        c = ParseIntentClass(upper);
      }
      if (c != expected_class) {
        Mismatch("class '" + v->get<std::string>() + "' does not match expected " +
                 std::string(ToString(expected_class)));
      }
    }
    const json& targets = Required(doc, "targets");
    if (!targets.is_array()) Mismatch("targets must be an array");
    for (const auto& t : targets) lld.targets.push_back(String(t, "targets"));
    const json& params = Required(doc, "params");
    if (!params.is_object()) Mismatch("params must be an object");
    switch (expected_class) {
      case IntentClass::kCP: lld.params = DecodeCp(params); break;
      case IntentClass::kRP: lld.params = DecodeRp(params); break;
      case IntentClass::kACL: lld.params = DecodeAcl(params); break;
      case IntentClass::kTN: lld.params = DecodeTn(params); break;
      case IntentClass::kOther: break;
    }
    return lld;
  } catch (const json::exception& e) {
    Mismatch(e.what());
  }
}

namespace {

class IssueCollector {
 public:
  IssueCollector(const NetworkModel& model, std::vector<ValidationIssue>& out)
      : model_(model), out_(out) {}

  void Add(std::string field, std::string message) {
    out_.push_back({std::move(field), std::move(message)});
  }

  bool Device(const std::string& field, const std::string& name) {
    if (model_.HasDevice(name)) return true;
    Add(field, "unknown device " + name);
    return false;
  }

  // Physical interfaces must exist; virtual ones may be created.
  void Interface(const std::string& field, const std::string& device,
                 const std::string& name) {
    if (!model_.HasDevice(device)) return;
    if (!CanonicalInterfaceName(name)) {
      Add(field, "invalid interface name " + name);
      return;
    }
    if (IsVirtualInterface(name)) return;
    const auto* ast = model_.FindDevice(device);
    if (!ast->FindInterface(name)) Add(field, "unknown interface " + device + ":" + name);
  }

  void Netmask(const std::string& field, Ipv4 mask) {
    if (!mask.IsContiguousMask()) Add(field, "mask " + mask.str() + " is not a contiguous netmask");
  }

  void InTargets(const LowLevelDescription& lld, const std::string& field,
                 const std::string& device) {
    if (std::find(lld.targets.begin(), lld.targets.end(), device) == lld.targets.end()) {
      Add(field, "device " + device + " is not listed in targets");
    }
  }

 private:
  const NetworkModel& model_;
  std::vector<ValidationIssue>& out_;
};

}  // namespace

std::vector<ValidationIssue> ValidateLld(const LowLevelDescription& lld,
                                         const NetworkModel& model) {
  std::vector<ValidationIssue> issues;
  IssueCollector check(model, issues);
  if (lld.targets.empty()) check.Add("targets", "targets is empty");
  for (const auto& t : lld.targets) check.Device("targets", t);

  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, CpParams>) {
          check.InTargets(lld, "params.device", p.device);
          check.Interface("params.interface", p.device, p.interface);
          if (p.ip_address.has_value() != p.mask.has_value()) {
            check.Add("params.ip_address", "ip_address and mask must be given together");
          }
          if (p.mask) check.Netmask("params.mask", *p.mask);
          if (!p.ip_address && !p.admin_state && !p.description) {
            check.Add("params", "no interface property requested");
          }
        } else if constexpr (std::is_same_v<T, AclParams>) {
          check.InTargets(lld, "params.device", p.device);
          if (p.acl_id.empty() ||
              !std::all_of(p.acl_id.begin(), p.acl_id.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            check.Add("params.acl_id", "acl_id must be a numbered access list");
          }
          if (p.dst_prefix.has_value() != p.dst_wildcard.has_value()) {
            check.Add("params.dst_prefix", "dst_prefix and dst_wildcard must be given together");
          }
          if (p.dst_port && p.protocol != Protocol::kTcp && p.protocol != Protocol::kUdp) {
            check.Add("params.dst_port", "port requires tcp/udp");
          }
          if (p.dst_port && *p.dst_port == 0) check.Add("params.dst_port", "port 0 is invalid");
          if (p.apply_to_interface) {
            check.Interface("params.apply_to_interface", p.device, *p.apply_to_interface);
          }
          if (p.direction && !p.apply_to_interface) {
            check.Add("params.direction", "direction given without apply_to_interface");
          }
        } else if constexpr (std::is_same_v<T, RpParams>) {
          check.InTargets(lld, "params.device", p.device);
          if (p.ospf_process_id == 0) check.Add("params.ospf_process_id", "process id must be 1..65535");
          if (p.networks.empty()) check.Add("params.networks", "no networks requested");
        } else {
          for (const auto* e : {&p.endpoint_a, &p.endpoint_b}) {
            const std::string side = e == &p.endpoint_a ? "params.endpoint_a" : "params.endpoint_b";
            if (!check.Device(side + ".device", e->device)) continue;
            check.InTargets(lld, side + ".device", e->device);
            if (!CanonicalInterfaceName(e->tunnel_if) || e->tunnel_if.rfind("Tunnel", 0) != 0) {
              check.Add(side + ".tunnel_if", "tunnel_if must be a Tunnel interface");
            }
            check.Interface(side + ".source_if", e->device, e->source_if);
            check.Netmask(side + ".tunnel_mask", e->tunnel_mask);
          }
          if (p.endpoint_a.device == p.endpoint_b.device) {
            check.Add("params.endpoint_b.device", "tunnel endpoints must be different devices");
          }
          if (p.mode != "gre") check.Add("params.mode", "only gre tunnels are supported");
        }
      },
      lld.params);
  return issues;
}

}  // namespace netcfg
