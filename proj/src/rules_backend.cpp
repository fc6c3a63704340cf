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

// Offline backend: answers every prompt purpose from keyword tables and
// regular-expression captures over the runtime sections of the user message.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <regex>

#include "json.hpp"
#include "netcfg/errors.hpp"
#include "netcfg/extraction.hpp"
#include "netcfg/llm_backend.hpp"
#include "text_util.hpp"

namespace netcfg {
namespace {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Fault selection

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t KindSalt(FaultKind kind) {
  return (static_cast<std::uint64_t>(kind) + 1) * 0x632be59bd9b4e019ull;
}

constexpr std::array<std::pair<FaultKind, std::string_view>, 3> kFaultNames = {{
    {FaultKind::kClass, "class"},
    {FaultKind::kJson, "json"},
    {FaultKind::kSyntax, "syntax"},
}};

// ---------------------------------------------------------------------------
// Network status as seen in the translation prompt

struct StatusInterface {
  std::string name;
  std::optional<Ipv4> ip;
  std::optional<Ipv4> mask;
  bool up = true;
};

struct StatusDevice {
  std::string name;
  std::vector<StatusInterface> interfaces;

  const StatusInterface* Find(std::string_view n) const {
    for (const auto& i : interfaces) {
      if (i.name == n) return &i;
    }
    return nullptr;
  }
};

struct StatusView {
  std::vector<StatusDevice> devices;
  std::vector<Link> links;
  std::vector<Host> hosts;

  const StatusDevice* Find(std::string_view n) const {
    for (const auto& d : devices) {
      if (d.name == n) return &d;
    }
    return nullptr;
  }
};

std::optional<Ipv4> OptionalIp(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) return std::nullopt;
  return Ipv4::Parse(j[key].get<std::string>());
}

InterfaceRef SplitRef(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) return {s, ""};
  return {s.substr(0, colon), s.substr(colon + 1)};
}

StatusView ParseStatus(std::string_view json_text) {
  StatusView view;
  Json doc = Json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (!doc.is_object()) return view;
  if (doc.contains("devices") && doc["devices"].is_array()) {
    for (const Json& d : doc["devices"]) {
      if (!d.is_object() || !d.contains("name") || !d["name"].is_string()) continue;
      StatusDevice dev;
      dev.name = d["name"].get<std::string>();
      const auto add = [&](const char* list) {
        if (!d.contains(list) || !d[list].is_array()) return;
        for (const Json& i : d[list]) {
          if (!i.is_object() || !i.contains("name") || !i["name"].is_string()) continue;
          StatusInterface s;
          s.name = i["name"].get<std::string>();
          s.ip = OptionalIp(i, "ip");
          s.mask = OptionalIp(i, "mask");
          s.up = !(i.contains("state") && i["state"] == "down");
          dev.interfaces.push_back(std::move(s));
        }
      };
      add("interfaces");
      add("tunnels");
      view.devices.push_back(std::move(dev));
    }
  }
  if (doc.contains("links") && doc["links"].is_array()) {
    for (const Json& l : doc["links"]) {
      if (!l.is_object() || !l.contains("a") || !l.contains("b")) continue;
      if (!l["a"].is_string() || !l["b"].is_string()) continue;
      view.links.push_back({SplitRef(l["a"].get<std::string>()),
                            SplitRef(l["b"].get<std::string>())});
    }
  }
  if (doc.contains("hosts") && doc["hosts"].is_array()) {
    for (const Json& h : doc["hosts"]) {
      if (!h.is_object() || !h.contains("name") || !h["name"].is_string()) continue;
      const auto ip = OptionalIp(h, "ip");
      if (!ip) continue;
      Host host;
      host.name = h["name"].get<std::string>();
      host.ip = *ip;
      if (h.contains("device") && h["device"].is_string()) {
        host.attachment.device = h["device"].get<std::string>();
      }
      view.hosts.push_back(std::move(host));
    }
  }
  return view;
}

// ---------------------------------------------------------------------------
// Text captures

bool ContainsWord(std::string_view lower_text, std::string_view lower_word) {
  for (std::size_t pos = lower_text.find(lower_word); pos != std::string_view::npos;
       pos = lower_text.find(lower_word, pos + 1)) {
    const auto is_word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; };
    const bool left = pos == 0 || !is_word(lower_text[pos - 1]);
    const std::size_t end = pos + lower_word.size();
    const bool right = end >= lower_text.size() || !is_word(lower_text[end]);
    if (left && right) return true;
  }
  return false;
}

struct KeywordRule {
  IntentClass intent_class;
  std::vector<std::string_view> keywords;
};

// Checked in order; the first class with a matching keyword wins.
const std::vector<KeywordRule>& KeywordTable() {
  static const std::vector<KeywordRule> table = {
      {IntentClass::kTN, {"tunnel", "gre"}},
      {IntentClass::kRP, {"ospf", "routing", "route", "area", "advertise"}},
      {IntentClass::kACL,
       {"access list", "access-list", "acl", "permit", "deny", "block", "allow", "filter"}},
      {IntentClass::kCP,
       {"interface", "shut", "shutdown", "enable", "disable", "ip address", "description",
        "bring up", "address"}},
  };
  return table;
}

std::vector<std::string> DevicesMentioned(std::string_view text, const StatusView& view) {
  std::vector<std::string> out;
  static const std::regex word(R"([A-Za-z][A-Za-z0-9_]*)");
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), word); it != std::sregex_iterator();
       ++it) {
    const std::string token = it->str();
    for (const StatusDevice& d : view.devices) {
      if (text::IEquals(token, d.name) &&
          std::find(out.begin(), out.end(), d.name) == out.end()) {
        out.push_back(d.name);
      }
    }
  }
  return out;
}

std::vector<std::string> InterfacesMentioned(std::string_view text) {
  static const std::regex iface(
      R"(\b(gigabit\s?ethernet|tengigabitethernet|fastethernet|ethernet|serial|loopback|tunnel|gig|gi|fa|te|eth|se|lo|tu)\s?(\d+(?:/\d+){0,2})(?![.\d/]))",
      std::regex::icase);
  std::vector<std::string> out;
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), iface); it != std::sregex_iterator();
       ++it) {
    std::string prefix = (*it)[1].str();
    prefix.erase(std::remove_if(prefix.begin(), prefix.end(), text::IsSpace), prefix.end());
    if (auto name = CanonicalInterfaceName(prefix + (*it)[2].str())) {
      if (std::find(out.begin(), out.end(), *name) == out.end()) out.push_back(*name);
    }
  }
  return out;
}

struct IpMention {
  Ipv4 address;
  std::optional<int> prefix_length;
};

std::vector<IpMention> IpsMentioned(std::string_view text) {
  static const std::regex ip(R"(\b(\d{1,3}(?:\.\d{1,3}){3})(?:\s*/\s*(\d{1,2}))?)");
  std::vector<IpMention> out;
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), ip); it != std::sregex_iterator();
       ++it) {
    const auto address = Ipv4::Parse((*it)[1].str());
    if (!address) continue;
    IpMention m{*address, std::nullopt};
    if ((*it)[2].matched) {
      const int len = std::stoi((*it)[2].str());
      if (len <= 32) m.prefix_length = len;
    }
    out.push_back(m);
  }
  return out;
}

bool LooksLikeNetmask(Ipv4 v) { return (v.value() >> 24) == 255 && v.IsContiguousMask(); }

std::optional<std::uint32_t> CaptureNumber(std::string_view text, const std::regex& re) {
  std::smatch m;
  const std::string s(text);
  if (!std::regex_search(s, m, re)) return std::nullopt;
  return static_cast<std::uint32_t>(std::stoul(m[1].str()));
}

struct Service {
  std::string_view name;
  Protocol protocol;
  std::optional<std::uint16_t> port;
};

constexpr std::array<Service, 13> kServices = {{
    {"ssh", Protocol::kTcp, 22},
    {"telnet", Protocol::kTcp, 23},
    {"https", Protocol::kTcp, 443},
    {"http", Protocol::kTcp, 80},
    {"web", Protocol::kTcp, 80},
    {"smtp", Protocol::kTcp, 25},
    {"ftp", Protocol::kTcp, 21},
    {"dns", Protocol::kUdp, 53},
    {"snmp", Protocol::kUdp, 161},
    {"tftp", Protocol::kUdp, 69},
    {"ntp", Protocol::kUdp, 123},
    {"icmp", Protocol::kIcmp, std::nullopt},
    {"ping", Protocol::kIcmp, std::nullopt},
}};

// Address phrase following "from"/"to": CIDR, host address, "any" or a host
// name from the status.
std::optional<AddressMatch> ParseAddressToken(std::string_view token, const StatusView& view) {
  std::string t(token);
  while (!t.empty() && (t.back() == ',' || t.back() == '.' || t.back() == ';')) t.pop_back();
  if (text::IEquals(t, "any") || text::IEquals(t, "anywhere")) return AddressMatch::Any();
  if (t.find('/') != std::string::npos) return ParseCidr(t);
  if (auto ip = Ipv4::Parse(t)) return AddressMatch::Host(*ip);
  for (const Host& h : view.hosts) {
    if (text::IEquals(t, h.name)) return AddressMatch::Host(h.ip);
  }
  return std::nullopt;
}

std::optional<AddressMatch> AddressAfter(std::string_view text, const std::regex& re,
                                         const StatusView& view) {
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator();
       ++it) {
    if (auto match = ParseAddressToken((*it)[1].str(), view)) return match;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Translation

class RuleMissOr {
 public:
  explicit RuleMissOr(bool strict) : strict_(strict) {}
  void Require(bool ok, std::string_view what) const {
    if (!ok && strict_) throw RuleMiss("rules backend cannot find " + std::string(what));
  }

 private:
  bool strict_;
};

CpParams TranslateCp(std::string_view text, const StatusView& view, const RuleMissOr& miss) {
  CpParams p;
  const auto devices = DevicesMentioned(text, view);
  miss.Require(!devices.empty(), "a device");
  if (!devices.empty()) p.device = devices.front();
  const auto ifaces = InterfacesMentioned(text);
  miss.Require(!ifaces.empty(), "an interface");
  if (!ifaces.empty()) p.interface = ifaces.front();

  const std::string lower = text::ToLower(text);
  const auto has = [&](std::string_view s) { return lower.find(s) != std::string::npos; };
  if (has("no shut") || has("bring up") || has("bring it up") || ContainsWord(lower, "enable") ||
      ContainsWord(lower, "activate") || has("turn on") || has("administratively up")) {
    p.admin_state = AdminState::kUp;
  } else if (has("shut") || ContainsWord(lower, "disable") || has("bring down") ||
             ContainsWord(lower, "deactivate") || has("turn off") ||
             has("administratively down")) {
    p.admin_state = AdminState::kDown;
  }

  const auto ips = IpsMentioned(text);
  for (std::size_t i = 0; i < ips.size(); ++i) {
    if (LooksLikeNetmask(ips[i].address)) continue;
    p.ip_address = ips[i].address;
    if (ips[i].prefix_length) {
      p.mask = Ipv4::MaskFromLength(*ips[i].prefix_length);
    } else if (i + 1 < ips.size() && LooksLikeNetmask(ips[i + 1].address)) {
      p.mask = ips[i + 1].address;
    } else {
      p.mask = Ipv4::MaskFromLength(24);
    }
    break;
  }

  static const std::regex description(R"re(description[^"'\n]*?(?:"([^"]*)"|'([^']*)'))re",
                                      std::regex::icase);
  std::smatch m;
  const std::string s(text);
  if (std::regex_search(s, m, description)) p.description = m[1].matched ? m[1].str() : m[2].str();
  return p;
}

AclParams TranslateAcl(std::string_view text, const StatusView& view, const RuleMissOr& miss) {
  AclParams p;
  const std::string lower = text::ToLower(text);

  auto devices = DevicesMentioned(text, view);
  if (devices.empty()) {
    for (const Host& h : view.hosts) {
      if (ContainsWord(lower, text::ToLower(h.name)) && !h.attachment.device.empty()) {
        devices.push_back(h.attachment.device);
        break;
      }
    }
  }
  miss.Require(!devices.empty(), "a device");
  if (!devices.empty()) p.device = devices.front();

  static const std::regex acl_id(R"((?:access[- ]list|acl)\s*(?:number\s*|#\s*)?(\d+))",
                                 std::regex::icase);
  const auto id = CaptureNumber(text, acl_id);
  p.acl_id = id ? std::to_string(*id) : "101";

  std::size_t deny_at = std::string::npos;
  for (std::string_view w : {"deny", "deni", "block", "drop", "reject", "filter", "prevent", "stop"}) {
    deny_at = std::min(deny_at, lower.find(w));
  }
  std::size_t permit_at = std::string::npos;
  for (std::string_view w : {"permit", "allow", "accept"}) {
    permit_at = std::min(permit_at, lower.find(w));
  }
  p.action = deny_at < permit_at ? AclAction::kDeny : AclAction::kPermit;

  static const std::regex proto_port(R"(\b(tcp|udp)\s+(?:port\s+)?(\d+))", std::regex::icase);
  static const std::regex bare_port(R"(\bport\s+(\d+))", std::regex::icase);
  std::smatch m;
  const std::string s(text);
  if (std::regex_search(s, m, proto_port)) {
    p.protocol = text::IEquals(m[1].str(), "udp") ? Protocol::kUdp : Protocol::kTcp;
    p.dst_port = static_cast<std::uint16_t>(std::stoul(m[2].str()));
  } else if (std::regex_search(s, m, bare_port)) {
    p.protocol = ContainsWord(lower, "udp") ? Protocol::kUdp : Protocol::kTcp;
    p.dst_port = static_cast<std::uint16_t>(std::stoul(m[1].str()));
  } else {
    bool found = false;
    for (const Service& svc : kServices) {
      if (ContainsWord(lower, svc.name)) {
        p.protocol = svc.protocol;
        p.dst_port = svc.port;
        found = true;
        break;
      }
    }
    if (!found) {
      if (ContainsWord(lower, "tcp")) {
        p.protocol = Protocol::kTcp;
      } else if (ContainsWord(lower, "udp")) {
        p.protocol = Protocol::kUdp;
      }
    }
  }

  static const std::regex from(
      R"(\bfrom\s+(?:the\s+)?(?:host\s+|network\s+|subnet\s+)?([A-Za-z0-9./_-]+))",
      std::regex::icase);
  static const std::regex to(
      R"(\b(?:to|towards)\s+(?:the\s+)?(?:host\s+|network\s+|subnet\s+)?([A-Za-z0-9./_-]+))",
      std::regex::icase);
  const AddressMatch src = AddressAfter(text, from, view).value_or(AddressMatch::Any());
  p.src_prefix = src.prefix;
  p.src_wildcard = src.wildcard;
  if (const auto dst = AddressAfter(text, to, view); dst && !dst->IsAny()) {
    p.dst_prefix = dst->prefix;
    p.dst_wildcard = dst->wildcard;
  }

  const auto ifaces = InterfacesMentioned(text);
  if (!ifaces.empty()) {
    p.apply_to_interface = ifaces.front();
    const bool out = ContainsWord(lower, "outbound") || ContainsWord(lower, "egress") ||
                     ContainsWord(lower, "out");
    p.direction = out ? AclDirection::kOut : AclDirection::kIn;
  }
  return p;
}

RpParams TranslateRp(std::string_view text, const StatusView& view, const RuleMissOr& miss) {
  RpParams p;
  const auto devices = DevicesMentioned(text, view);
  miss.Require(!devices.empty(), "a device");
  if (!devices.empty()) p.device = devices.front();

  static const std::regex process(R"((?:ospf|process)\s+(?:process\s+)?(?:id\s+)?(\d+)(?![.\d]))",
                                  std::regex::icase);
  static const std::regex area(R"(\barea\s+(\d+))", std::regex::icase);
  p.ospf_process_id = CaptureNumber(text, process).value_or(1);
  p.area = CaptureNumber(text, area).value_or(0);

  const auto add = [&](Ipv4 prefix, Ipv4 wildcard) {
    const PrefixWildcard n{Ipv4(prefix.value() & ~wildcard.value()), wildcard};
    if (std::find(p.networks.begin(), p.networks.end(), n) == p.networks.end()) {
      p.networks.push_back(n);
    }
  };
  for (const IpMention& m : IpsMentioned(text)) {
    if (m.prefix_length) add(m.address, Ipv4::MaskFromLength(*m.prefix_length).Inverted());
  }
  if (const StatusDevice* dev = view.Find(p.device)) {
    for (const std::string& name : InterfacesMentioned(text)) {
      const StatusInterface* i = dev->Find(name);
      if (i != nullptr && i->ip && i->mask) add(*i->ip, i->mask->Inverted());
    }
  }
  miss.Require(!p.networks.empty(), "a network to advertise");
  return p;
}

// Interfaces of `a` and `b` facing each other, when the two share a link.
std::optional<std::pair<std::string, std::string>> SharedLink(const StatusView& view,
                                                              std::string_view a,
                                                              std::string_view b) {
  for (const Link& l : view.links) {
    if (l.a.device == a && l.b.device == b) return std::make_pair(l.a.interface, l.b.interface);
    if (l.b.device == a && l.a.device == b) return std::make_pair(l.b.interface, l.a.interface);
  }
  return std::nullopt;
}

// First addressed, enabled physical interface by name order.
std::string FallbackSource(const StatusView& view, std::string_view device) {
  const StatusDevice* dev = view.Find(device);
  if (dev == nullptr) return {};
  std::vector<const StatusInterface*> candidates;
  for (const auto& i : dev->interfaces) {
    if (i.ip && i.up && !IsVirtualInterface(i.name)) candidates.push_back(&i);
  }
  if (candidates.empty()) return {};
  return (*std::min_element(candidates.begin(), candidates.end(),
                            [](auto* x, auto* y) { return x->name < y->name; }))
      ->name;
}

std::optional<Ipv4> AddressOf(const StatusView& view, std::string_view device,
                              std::string_view iface) {
  const StatusDevice* dev = view.Find(device);
  if (dev == nullptr) return std::nullopt;
  const StatusInterface* i = dev->Find(iface);
  return i == nullptr ? std::nullopt : i->ip;
}

TnParams TranslateTn(std::string_view text, const StatusView& view, const RuleMissOr& miss) {
  TnParams p;
  const auto devices = DevicesMentioned(text, view);
  miss.Require(devices.size() >= 2, "two tunnel endpoints");
  p.endpoint_a.device = !devices.empty() ? devices[0] : std::string();
  p.endpoint_b.device = devices.size() > 1 ? devices[1] : std::string();

  static const std::regex tunnel_if(R"(\btunnel\s*(?:interface\s*)?(\d+)(?![.\d]))", std::regex::icase);
  const auto number = CaptureNumber(text, tunnel_if);
  const std::string tunnel = "Tunnel" + std::to_string(number.value_or(0));
  p.endpoint_a.tunnel_if = tunnel;
  p.endpoint_b.tunnel_if = tunnel;

  std::optional<AddressMatch> subnet;
  for (const IpMention& m : IpsMentioned(text)) {
    if (m.prefix_length && *m.prefix_length <= 30) {
      const Ipv4 netmask = Ipv4::MaskFromLength(*m.prefix_length);
      subnet = AddressMatch{Ipv4(m.address.value() & netmask.value()), netmask.Inverted()};
      break;
    }
  }
  if (!subnet) subnet = ParseCidr("172.16.0.0/30");
  const Ipv4 mask = subnet->wildcard.Inverted();
  p.endpoint_a.tunnel_ip = Ipv4(subnet->prefix.value() + 1);
  p.endpoint_b.tunnel_ip = Ipv4(subnet->prefix.value() + 2);
  p.endpoint_a.tunnel_mask = mask;
  p.endpoint_b.tunnel_mask = mask;

  const std::string& a = p.endpoint_a.device;
  const std::string& b = p.endpoint_b.device;
  if (auto link = SharedLink(view, a, b)) {
    p.endpoint_a.source_if = link->first;
    p.endpoint_b.source_if = link->second;
  } else {
    p.endpoint_a.source_if = FallbackSource(view, a);
    p.endpoint_b.source_if = FallbackSource(view, b);
  }
  const auto dst_a = AddressOf(view, b, p.endpoint_b.source_if);
  const auto dst_b = AddressOf(view, a, p.endpoint_a.source_if);
  miss.Require(dst_a && dst_b, "tunnel source addresses");
  p.endpoint_a.destination_ip = dst_a.value_or(Ipv4());
  p.endpoint_b.destination_ip = dst_b.value_or(Ipv4());
  return p;
}

// ---------------------------------------------------------------------------
// Rendering

std::string MatchText(const AddressMatch& m) {
  if (m.IsAny()) return "any";
  if (m.IsHost()) return "host " + m.prefix.str();
  return m.prefix.str() + " " + m.wildcard.str();
}

bool IsStandardAclId(std::string_view id) {
  const int n = std::atoi(std::string(id).c_str());
  return (n >= 1 && n <= 99) || (n >= 1300 && n <= 1999);
}

std::string InjectSyntaxFault(std::string answer) {
  constexpr std::string_view kGood = " ip address";
  if (const auto pos = answer.find(kGood); pos != std::string::npos) {
    answer.replace(pos, kGood.size(), " ip addres");
    return answer;
  }
  const auto eol = answer.find('\n');
  answer.insert(eol == std::string::npos ? answer.size() : eol + 1,
                "ip addres 192.0.2.1 255.255.255.0\n");
  return answer;
}

class RulesBackend final : public Backend {
 public:
  explicit RulesBackend(RulesOptions options) : options_(std::move(options)) {}

  std::string Complete(const PromptBundle& prompt, const DecodingParams& /*params*/) override {
    const auto sections = ParseUserSections(prompt.Content(Role::kUser));
    const auto section = [&](const std::string& name) -> std::string {
      const auto it = sections.find(name);
      return it == sections.end() ? std::string() : it->second;
    };
    switch (prompt.purpose) {
      case Purpose::kClassify:
        return Classify(prompt, section("Intent"));
      case Purpose::kTranslate:
        return Translate(prompt, section("Intent"), section("type"), section("network_status"));
      case Purpose::kGenerate:
      case Purpose::kRefine:
        return Generate(prompt, section("low_level_description"));
    }
    throw RuleMiss("rules backend: unknown prompt purpose");
  }

 private:
  bool Fires(FaultKind kind, const PromptBundle& prompt) const {
    return options_.faults.Fires(kind, prompt.intent_id, prompt.attempt);
  }

  std::string Classify(const PromptBundle& prompt, const std::string& intent_text) const {
    if (Fires(FaultKind::kClass, prompt)) {
      return "SNMP\nThe requirement concerns SNMP traffic.";
    }
    const auto cls = ClassifyByRules(intent_text);
    if (!cls) {
      if (options_.strict) throw RuleMiss("no classification keyword in: " + intent_text);
      return "UNKNOWN\nNo keyword of the rule table matched.";
    }
    return std::string(ToString(*cls)) + "\nMatched the " + std::string(ToString(*cls)) +
           " keyword table.";
  }

  std::string Translate(const PromptBundle& prompt, const std::string& intent_text,
                        const std::string& type, const std::string& status) const {
    const auto cls = ParseIntentClass(text::Trim(type));
    if (!cls || *cls == IntentClass::kOther) {
      throw RuleMiss("rules backend: translation prompt has no usable {type}");
    }
    if (Fires(FaultKind::kJson, prompt)) {
      return "{\"class\": \"" + std::string(ToString(*cls)) + "\", \"targets\": [\"";
    }
    const StatusView view = ParseStatus(status);
    const RuleMissOr miss(options_.strict);
    LowLevelDescription lld;
    lld.intent_id = prompt.intent_id;
    switch (*cls) {
      case IntentClass::kCP: {
        CpParams p = TranslateCp(intent_text, view, miss);
        lld.targets = {p.device};
        lld.params = std::move(p);
        break;
      }
      case IntentClass::kACL: {
        AclParams p = TranslateAcl(intent_text, view, miss);
        lld.targets = {p.device};
        lld.params = std::move(p);
        break;
      }
      case IntentClass::kRP: {
        RpParams p = TranslateRp(intent_text, view, miss);
        lld.targets = {p.device};
        lld.params = std::move(p);
        break;
      }
      case IntentClass::kTN: {
        TnParams p = TranslateTn(intent_text, view, miss);
        lld.targets = {p.endpoint_a.device, p.endpoint_b.device};
        lld.params = std::move(p);
        break;
      }
      case IntentClass::kOther:
        break;
    }
    return EncodeLld(lld);
  }

  std::string Generate(const PromptBundle& prompt, const std::string& lld_text) const {
    const Json doc = Json::parse(lld_text, nullptr, /*allow_exceptions=*/false);
    if (!doc.is_object() || !doc.contains("class") || !doc["class"].is_string()) {
      throw RuleMiss("rules backend: generation prompt has no usable low-level description");
    }
    const auto cls = ParseIntentClass(doc["class"].get<std::string>());
    if (!cls || *cls == IntentClass::kOther) {
      throw RuleMiss("rules backend: generation prompt names no configurable class");
    }
    std::string answer = RenderConfigForLld(DecodeLld(lld_text, *cls));
    if (Fires(FaultKind::kSyntax, prompt)) answer = InjectSyntaxFault(std::move(answer));
    return answer;
  }

  RulesOptions options_;
};

}  // namespace

std::string_view ToString(FaultKind kind) {
  for (const auto& [k, name] : kFaultNames) {
    if (k == kind) return name;
  }
  return "class";
}

std::string_view ToString(FaultSchedule schedule) {
  return schedule == FaultSchedule::kFirstCycleOnly ? "first-cycle-only" : "every-cycle";
}

std::optional<FaultSchedule> ParseFaultSchedule(std::string_view text) {
  if (text == "every-cycle") return FaultSchedule::kEveryCycle;
  if (text == "first-cycle-only") return FaultSchedule::kFirstCycleOnly;
  return std::nullopt;
}

FaultPlan FaultPlan::Parse(std::string_view text_form) {
  FaultPlan plan;
  const std::string trimmed(text::Trim(text_form));
  if (trimmed.empty()) return plan;
  std::size_t start = 0;
  while (start <= trimmed.size()) {
    const std::size_t comma = std::min(trimmed.find(',', start), trimmed.size());
    const std::string_view item = text::Trim(std::string_view(trimmed).substr(start, comma - start));
    start = comma + 1;
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw ValidationError("fault item must be kind:value, got '" + std::string(item) + "'");
    }
    const std::string_view name = text::Trim(item.substr(0, colon));
    const std::string_view value = text::Trim(item.substr(colon + 1));
    std::optional<FaultKind> kind;
    for (const auto& [k, n] : kFaultNames) {
      if (n == name) kind = k;
    }
    if (!kind) throw ValidationError("unknown fault kind '" + std::string(name) + "'");
    if (!value.empty() && value.front() == '@') {
      std::string ids(value.substr(1));
      std::size_t p = 0;
      while (p <= ids.size()) {
        const std::size_t plus = std::min(ids.find('+', p), ids.size());
        const std::string id = ids.substr(p, plus - p);
        if (id.empty()) throw ValidationError("empty intent id in fault list");
        plan.targets[*kind].insert(id);
        p = plus + 1;
      }
      continue;
    }
    char* end = nullptr;
    const std::string number(value);
    const double probability = std::strtod(number.c_str(), &end);
    if (number.empty() || end != number.c_str() + number.size() || !(probability >= 0.0) ||
        probability > 1.0) {
      throw ValidationError("fault probability must be in [0, 1], got '" + number + "'");
    }
    plan.probability[*kind] = probability;
  }
  return plan;
}

bool FaultPlan::empty() const {
  for (const auto& [kind, p] : probability) {
    if (p > 0) return false;
  }
  for (const auto& [kind, ids] : targets) {
    if (!ids.empty()) return false;
  }
  return true;
}

bool FaultPlan::Fires(FaultKind kind, std::string_view intent_id, int attempt) const {
  if (schedule == FaultSchedule::kFirstCycleOnly && attempt != 1) return false;
  if (const auto it = targets.find(kind); it != targets.end()) {
    if (it->second.count(std::string(intent_id)) > 0) return true;
  }
  const auto it = probability.find(kind);
  if (it == probability.end() || it->second <= 0.0) return false;
  if (it->second >= 1.0) return true;
  const std::uint64_t h = SplitMix64(Fnv1a(intent_id) ^ seed ^ KindSalt(kind));
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  return u < it->second;
}

FaultPlan FaultPlan::ResolvedFor(const std::vector<std::string>& intent_ids) const {
  FaultPlan resolved = *this;
  resolved.probability.clear();
  std::vector<std::string> ids = intent_ids;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (const auto& [kind, p] : probability) {
    if (p <= 0.0) continue;
    const auto count = static_cast<std::size_t>(std::llround(p * static_cast<double>(ids.size())));
    std::vector<std::string> order = ids;
    // Fisher-Yates over raw engine output; std::shuffle's use of the engine is
    // implementation-defined, this is not.
    std::mt19937_64 engine(seed ^ KindSalt(kind));
    for (std::size_t i = order.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(engine() % i);
      std::swap(order[i - 1], order[j]);
    }
    for (std::size_t i = 0; i < count && i < order.size(); ++i) {
      resolved.targets[kind].insert(order[i]);
    }
  }
  return resolved;
}

std::optional<IntentClass> ClassifyByRules(std::string_view intent_text) {
  const std::string lower = text::ToLower(intent_text);
  for (const KeywordRule& rule : KeywordTable()) {
    for (std::string_view keyword : rule.keywords) {
      if (ContainsWord(lower, keyword)) return rule.intent_class;
    }
  }
  return std::nullopt;
}

std::unique_ptr<Backend> MakeRulesBackend(RulesOptions options) {
  return std::make_unique<RulesBackend>(std::move(options));
}

std::map<std::string, std::string> ParseUserSections(std::string_view user_message) {
  static const std::regex label(R"(^\{([A-Za-z_]+)\}:\s*$)");
  std::map<std::string, std::string> out;
  std::string current;
  std::vector<std::string_view> body;
  const auto flush = [&] {
    if (current.empty()) return;
    while (!body.empty() && text::Trim(body.back()).empty()) body.pop_back();
    std::size_t first = 0;
    while (first < body.size() && text::Trim(body[first]).empty()) ++first;
    std::string content;
    for (std::size_t i = first; i < body.size(); ++i) {
      if (i > first) content += '\n';
      content += body[i];
    }
    out[current] = std::move(content);
  };
  for (std::string_view line : text::SplitLines(user_message)) {
    std::match_results<std::string_view::const_iterator> m;
    if (std::regex_match(line.begin(), line.end(), m, label)) {
      flush();
      current = m[1].str();
      body.clear();
      continue;
    }
    body.push_back(line);
  }
  flush();
  return out;
}

std::string RenderConfigForLld(const LowLevelDescription& lld) {
  ConfigBundle bundle;
  if (const auto* p = std::get_if<CpParams>(&lld.params)) {
    std::string t = "interface " + p->interface + "\n";
    if (p->description) t += " description " + *p->description + "\n";
    if (p->ip_address && p->mask) {
      t += " ip address " + p->ip_address->str() + " " + p->mask->str() + "\n";
    }
    if (p->admin_state) t += *p->admin_state == AdminState::kDown ? " shutdown\n" : " no shutdown\n";
    bundle.sections.push_back({p->device, t});
  } else if (const auto* p = std::get_if<AclParams>(&lld.params)) {
    const std::string head = "access-list " + p->acl_id + " ";
    std::string t;
    if (IsStandardAclId(p->acl_id)) {
      t += head + std::string(ToString(p->action)) + " " + MatchText(p->Source()) + "\n";
      if (p->action == AclAction::kDeny) t += head + "permit any\n";
    } else {
      t += head + std::string(ToString(p->action)) + " " + std::string(ToString(p->protocol)) +
           " " + MatchText(p->Source()) + " " + MatchText(p->Destination());
      if (p->dst_port) t += " eq " + std::to_string(*p->dst_port);
      t += "\n";
      if (p->action == AclAction::kDeny) t += head + "permit ip any any\n";
    }
    if (p->apply_to_interface) {
      t += "interface " + *p->apply_to_interface + "\n ip access-group " + p->acl_id + " " +
           std::string(ToString(p->direction.value_or(AclDirection::kIn))) + "\n";
    }
    bundle.sections.push_back({p->device, t});
  } else if (const auto* p = std::get_if<RpParams>(&lld.params)) {
    std::string t = "router ospf " + std::to_string(p->ospf_process_id) + "\n";
    for (const PrefixWildcard& n : p->networks) {
      t += " network " + n.prefix.str() + " " + n.wildcard.str() + " area " +
           std::to_string(p->area) + "\n";
    }
    bundle.sections.push_back({p->device, t});
  } else if (const auto* p = std::get_if<TnParams>(&lld.params)) {
    for (const TunnelEndpoint* e : {&p->endpoint_a, &p->endpoint_b}) {
      std::string t = "interface " + e->tunnel_if + "\n";
      t += " ip address " + e->tunnel_ip.str() + " " + e->tunnel_mask.str() + "\n";
      t += " tunnel source " + e->source_if + "\n";
      t += " tunnel destination " + e->destination_ip.str() + "\n";
      t += " tunnel mode " + p->mode + (p->mode == "gre" ? " ip" : "") + "\n";
      bundle.sections.push_back({e->device, t});
    }
  }
  return JoinConfigBundle(bundle);
}

}  // namespace netcfg
