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

// Line-oriented parser and canonical printer for the IOS-like subset.
//
// Sub-command context works the way a pasted IOS config does: after
// "interface X" every indented line belongs to the interface. Models often
// drop the indentation, so an unindented line that is a valid sub-command of
// the open context is also accepted; anything else closes the context and is
// treated as a global command.

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <set>

#include "netcfg/config_model.hpp"
#include "text_util.hpp"

namespace netcfg {
namespace {

using text::IEquals;
using text::SplitWhitespace;
using text::ToLower;
using text::Trim;

bool AllDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

std::optional<std::uint32_t> ParseUint(std::string_view s) {
  if (!AllDigits(s) || s.size() > 10) return std::nullopt;
  std::uint64_t value = 0;
  std::from_chars(s.data(), s.data() + s.size(), value);
  if (value > 0xffffffffull) return std::nullopt;
  return static_cast<std::uint32_t>(value);
}

// Orders numeric ACL ids numerically, anything else lexically after them.
struct AclIdLess {
  bool operator()(const std::string& a, const std::string& b) const {
    const bool an = AllDigits(a), bn = AllDigits(b);
    if (an != bn) return an;
    if (an && a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

struct WorkingConfig {
  std::string device;
  std::map<std::string, InterfaceStanza> interfaces;
  std::map<std::string, TunnelStanza> tunnels;
  std::map<std::string, AclStanza, AclIdLess> acls;
  std::map<std::uint32_t, OspfStanza> ospf;
};

void NormalizeBindings(std::vector<AclBinding>& bindings) {
  std::optional<AclBinding> in, out;
  for (const auto& b : bindings) (b.direction == AclDirection::kIn ? in : out) = b;
  bindings.clear();
  if (in) bindings.push_back(*in);
  if (out) bindings.push_back(*out);
}

void NormalizeNetworks(std::vector<OspfNetwork>& networks) {
  for (auto& n : networks) n.prefix = Ipv4(n.prefix.value() & ~n.wildcard.value());
  std::sort(networks.begin(), networks.end());
  networks.erase(std::unique(networks.begin(), networks.end()), networks.end());
}

AddressMatch Masked(AddressMatch m) {
  return {Ipv4(m.prefix.value() & ~m.wildcard.value()), m.wildcard};
}

std::string NormalizeAclId(std::string_view id) {
  if (!AllDigits(id)) return std::string(id);
  auto n = ParseUint(id);
  return n ? std::to_string(*n) : std::string(id);
}

WorkingConfig ToWorking(const DeviceConfigAst& ast) {
  WorkingConfig w;
  w.device = ast.device;
  for (const auto& stanza : ast.stanzas) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, InterfaceStanza>) {
            w.interfaces[s.name] = s;
          } else if constexpr (std::is_same_v<T, TunnelStanza>) {
            w.tunnels[s.tunnel_if] = s;
          } else if constexpr (std::is_same_v<T, AclStanza>) {
            auto& acl = w.acls[NormalizeAclId(s.acl_id)];
            acl.acl_id = NormalizeAclId(s.acl_id);
            for (AclEntry e : s.entries) {
              e.src = Masked(e.src);
              if (e.dst) e.dst = Masked(*e.dst);
              if (std::find(acl.entries.begin(), acl.entries.end(), e) ==
                  acl.entries.end()) {
                acl.entries.push_back(e);
              }
            }
          } else {
            auto& ospf = w.ospf[s.process_id];
            ospf.process_id = s.process_id;
            ospf.networks.insert(ospf.networks.end(), s.networks.begin(),
                                 s.networks.end());
          }
        },
        stanza);
  }
  return w;
}

DeviceConfigAst FromWorking(WorkingConfig w) {
  DeviceConfigAst ast;
  ast.device = w.device;
  for (auto& [name, s] : w.interfaces) {
    if (!s.ip_address || !s.mask) s.ip_address.reset(), s.mask.reset();
    NormalizeBindings(s.acl_bindings);
    ast.stanzas.emplace_back(std::move(s));
  }
  for (auto& [name, s] : w.tunnels) {
    if (!s.tunnel_ip || !s.tunnel_mask) s.tunnel_ip.reset(), s.tunnel_mask.reset();
    ast.stanzas.emplace_back(std::move(s));
  }
  for (auto& [id, s] : w.acls) ast.stanzas.emplace_back(std::move(s));
  for (auto& [id, s] : w.ospf) {
    NormalizeNetworks(s.networks);
    ast.stanzas.emplace_back(std::move(s));
  }
  return ast;
}

enum class AclKind { kStandard, kExtended, kInvalid };

AclKind KindOfAcl(std::uint32_t id) {
  if ((id >= 1 && id <= 99) || (id >= 1300 && id <= 1999)) return AclKind::kStandard;
  if ((id >= 100 && id <= 199) || (id >= 2000 && id <= 2699)) return AclKind::kExtended;
  return AclKind::kInvalid;
}

std::optional<std::uint16_t> ParsePort(std::string_view token) {
  static const std::map<std::string, std::uint16_t> kNamed = {
      {"ftp", 21},  {"ssh", 22},   {"telnet", 23}, {"smtp", 25},
      {"domain", 53}, {"tftp", 69}, {"www", 80},   {"http", 80},
      {"pop3", 110}, {"ntp", 123}, {"snmp", 161},  {"bgp", 179},
      {"https", 443}, {"syslog", 514}};
  if (auto it = kNamed.find(ToLower(token)); it != kNamed.end()) return it->second;
  auto n = ParseUint(token);
  if (!n || *n == 0 || *n > 65535) return std::nullopt;
  return static_cast<std::uint16_t>(*n);
}

// Directive phrases offered as "did you mean" hints.
constexpr std::array<std::string_view, 15> kKnownDirectives = {
    "interface",      "hostname",        "access-list",   "router ospf",
    "ip address",     "no ip address",   "shutdown",      "no shutdown",
    "description",    "ip access-group", "tunnel source", "tunnel destination",
    "tunnel mode",    "network",         "no access-list"};

std::string ClosestDirective(const std::vector<std::string_view>& tokens) {
  std::string best;
  std::size_t best_distance = 2;
  for (std::string_view phrase : kKnownDirectives) {
    const std::size_t words =
        static_cast<std::size_t>(std::count(phrase.begin(), phrase.end(), ' ')) + 1;
    if (tokens.size() < words) continue;
    std::string candidate;
    for (std::size_t i = 0; i < words; ++i) {
      if (i > 0) candidate += ' ';
      candidate += ToLower(tokens[i]);
    }
    const std::size_t d = text::EditDistance(candidate, phrase);
    if (d > 0 && d < best_distance) {
      best_distance = d;
      best = std::string(phrase);
    }
  }
  return best;
}

bool InSet(std::string_view token, std::initializer_list<std::string_view> set) {
  const std::string lower = ToLower(token);
  return std::find(set.begin(), set.end(), lower) != set.end();
}

// IOS interface-level commands outside the modelled subset.
bool IsIgnoredInterfaceCommand(const std::vector<std::string_view>& t,
                               std::size_t from = 0) {
  if (t.size() <= from) return false;
  if (IEquals(t[from], "no")) return IsIgnoredInterfaceCommand(t, from + 1);
  if (InSet(t[from], {"duplex", "speed", "negotiation", "mtu", "bandwidth",
                      "delay", "media-type", "keepalive", "cdp", "load-interval",
                      "encapsulation", "standby", "vrrp", "ipv6", "logging",
                      "carrier-delay", "arp", "mac-address", "service-policy"})) {
    return true;
  }
  return IEquals(t[from], "ip") && t.size() > from + 1 &&
         InSet(t[from + 1],
               {"ospf", "nat", "mtu", "tcp", "redirects", "unreachables",
                "proxy-arp", "helper-address", "virtual-reassembly", "flow",
                "verify", "policy", "pim", "igmp", "directed-broadcast",
                "route-cache"});
}

bool IsIgnoredTunnelCommand(const std::vector<std::string_view>& t) {
  return t.size() >= 2 && IEquals(t[0], "tunnel") &&
         InSet(t[1], {"key", "path-mtu-discovery", "checksum",
                      "sequence-datagrams", "ttl", "tos"});
}

bool IsIgnoredOspfCommand(const std::vector<std::string_view>& t,
                          std::size_t from = 0) {
  if (t.size() <= from) return false;
  if (IEquals(t[from], "no")) return IsIgnoredOspfCommand(t, from + 1);
  return InSet(t[from], {"router-id", "passive-interface", "log-adjacency-changes",
                         "auto-cost", "default-information", "redistribute",
                         "area", "timers", "maximum-paths", "distance",
                         "default-metric", "bfd", "max-metric",
                         "summary-address", "ispf", "nsf"});
}

// Global commands outside the modelled subset. Each may open a block whose
// indented children are skipped.
bool IsIgnoredGlobalCommand(const std::vector<std::string_view>& t,
                            std::size_t from = 0) {
  if (t.size() <= from) return false;
  if (IEquals(t[from], "no")) return IsIgnoredGlobalCommand(t, from + 1);
  if (InSet(t[from],
            {"service", "version", "logging", "ntp", "snmp-server", "enable",
             "username", "boot-start-marker", "boot-end-marker", "boot", "clock",
             "aaa", "cdp", "lldp", "spanning-tree", "vtp", "archive", "license",
             "vlan", "ipv6", "redundancy", "multilink", "memory", "login",
             "security", "track", "event", "errdisable", "hw-module", "platform",
             "diagnostic", "object-group", "class-map", "policy-map", "crypto",
             "control-plane", "line", "key", "mpls", "call-home", "alias",
             "privilege", "exception", "scheduler", "process", "system",
             "transceiver", "voice", "dial-peer", "template", "mac",
             "subscriber", "virtual-service", "wsma", "netconf", "restconf",
             "file", "route-map", "username", "domain"})) {
    return true;
  }
  return IEquals(t[from], "ip") && t.size() > from + 1 &&
         InSet(t[from + 1],
               {"route", "domain-name", "domain", "domain-lookup", "cef", "http",
                "ssh", "name-server", "dhcp", "forward-protocol", "scp", "ftp",
                "tftp", "classless", "subnet-zero", "host", "nat",
                "multicast-routing", "sla", "prefix-list", "bgp-community",
                "vrf", "flow-export", "tcp", "options", "source-route",
                "finger", "bootp", "icmp"});
}

class Parser {
 public:
  explicit Parser(WorkingConfig config) : config_(std::move(config)) {}

  void Run(std::string_view source) {
    const auto lines = text::SplitLines(source);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      line_number_ = static_cast<int>(i) + 1;
      ParseLine(lines[i]);
    }
  }

  ParseResult Finish() && {
    return ParseResult{FromWorking(std::move(config_)), std::move(issues_)};
  }

 private:
  enum class Context { kNone, kInterface, kTunnel, kOspf, kIgnored };

  void ParseLine(std::string_view raw) {
    const std::string_view trimmed = Trim(raw);
    if (banner_delimiter_) {
      if (trimmed.find(*banner_delimiter_) != std::string_view::npos) {
        banner_delimiter_.reset();
      }
      return;
    }
    if (trimmed.empty()) return;
    if (trimmed.front() == '!' || trimmed.front() == '#') {
      context_ = Context::kNone;
      return;
    }
    line_text_ = std::string(trimmed);
    column_ = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
    const bool indented = raw.front() == ' ' || raw.front() == '\t';
    tokens_ = SplitWhitespace(trimmed);

    if (context_ != Context::kNone) {
      if (context_ == Context::kIgnored) {
        if (indented) return;
      } else if (ParseSubCommand(/*indented=*/indented)) {
        return;
      }
      context_ = Context::kNone;
    }
    ParseGlobal();
  }

  void Issue(Severity severity, std::string message, std::string hint = {}) {
    issues_.push_back(SyntaxIssue{line_number_, column_, severity,
                                  std::move(message), line_text_,
                                  std::move(hint)});
  }
  void Error(std::string message) { Issue(Severity::kError, std::move(message)); }
  void Warn(std::string message) { Issue(Severity::kWarning, std::move(message)); }
  void UnknownDirective() {
    Issue(Severity::kError, "unknown directive", ClosestDirective(tokens_));
  }

  bool Is(std::size_t i, std::string_view word) const {
    return tokens_.size() > i && IEquals(tokens_[i], word);
  }

  // Returns true when the line was consumed by the open context. Indented
  // lines are always consumed; unknown ones are reported.
  bool ParseSubCommand(bool indented) {
    bool handled = false;
    switch (context_) {
      case Context::kInterface: handled = ParseInterfaceCommand(); break;
      case Context::kTunnel: handled = ParseTunnelCommand(); break;
      case Context::kOspf: handled = ParseOspfCommand(); break;
      default: break;
    }
    if (handled) return true;
    if (indented) {
      UnknownDirective();
      return true;
    }
    return false;
  }

  // Shared by interface and tunnel contexts.
  bool ParseAddressCommand(std::optional<Ipv4>& address, std::optional<Ipv4>& mask) {
    if (Is(0, "ip") && Is(1, "address")) {
      if (tokens_.size() == 4) {
        auto a = Ipv4::Parse(tokens_[2]);
        auto m = Ipv4::Parse(tokens_[3]);
        if (!a) {
          Error("invalid address '" + std::string(tokens_[2]) + "'");
        } else if (!m || !m->IsContiguousMask()) {
          Error("invalid netmask '" + std::string(tokens_[3]) + "'");
        } else {
          address = a;
          mask = m;
        }
      } else if (tokens_.size() == 5 && Is(4, "secondary")) {
        Error("secondary addresses are not supported");
      } else {
        Error("malformed ip address command");
      }
      return true;
    }
    if (Is(0, "no") && Is(1, "ip") && Is(2, "address")) {
      address.reset();
      mask.reset();
      return true;
    }
    return false;
  }

  bool ParseStateCommand(AdminState& state) {
    if (tokens_.size() == 1 && Is(0, "shutdown")) {
      state = AdminState::kDown;
      return true;
    }
    if (tokens_.size() == 2 && Is(0, "no") && Is(1, "shutdown")) {
      state = AdminState::kUp;
      return true;
    }
    return false;
  }

  bool ParseInterfaceCommand() {
    InterfaceStanza& s = config_.interfaces[current_];
    if (ParseAddressCommand(s.ip_address, s.mask)) return true;
    if (ParseStateCommand(s.admin_state)) return true;
    if (Is(0, "description")) {
      std::string_view rest = Trim(std::string_view(line_text_).substr(tokens_[0].size()));
      if (rest.empty()) {
        Error("empty description");
      } else {
        s.description = std::string(rest);
      }
      return true;
    }
    if (Is(0, "no") && Is(1, "description")) {
      s.description.reset();
      return true;
    }
    if (Is(0, "ip") && Is(1, "access-group")) {
      ParseAccessGroup(s.acl_bindings, /*remove=*/false, 2);
      return true;
    }
    if (Is(0, "no") && Is(1, "ip") && Is(2, "access-group")) {
      ParseAccessGroup(s.acl_bindings, /*remove=*/true, 3);
      return true;
    }
    if (Is(0, "tunnel") && tokens_.size() >= 2) {
      Error("tunnel command on non-tunnel interface");
      return true;
    }
    if (IsIgnoredInterfaceCommand(tokens_)) {
      Warn("unsupported interface command ignored");
      return true;
    }
    return false;
  }

  void ParseAccessGroup(std::vector<AclBinding>& bindings, bool remove,
                        std::size_t at) {
    if (tokens_.size() != at + 2) {
      Error("malformed ip access-group command");
      return;
    }
    if (!AllDigits(tokens_[at])) {
      Error("named access lists are not supported; use a numbered access-list");
      return;
    }
    auto direction = ParseAclDirection(ToLower(tokens_[at + 1]));
    if (!direction) {
      Error("access-group direction must be 'in' or 'out'");
      return;
    }
    AclBinding binding{NormalizeAclId(tokens_[at]), *direction};
    std::erase_if(bindings, [&](const AclBinding& b) {
      return b.direction == binding.direction &&
             (!remove || b.acl_id == binding.acl_id);
    });
    if (!remove) bindings.push_back(binding);
  }

  bool ParseTunnelCommand() {
    TunnelStanza& s = config_.tunnels[current_];
    if (ParseAddressCommand(s.tunnel_ip, s.tunnel_mask)) return true;
    if (ParseStateCommand(s.admin_state)) return true;
    if (Is(0, "tunnel") && Is(1, "source")) {
      if (tokens_.size() != 3) {
        Error("malformed tunnel source command");
      } else if (Ipv4::Parse(tokens_[2])) {
        s.source_if = std::string(tokens_[2]);
      } else if (auto name = CanonicalInterfaceName(tokens_[2])) {
        s.source_if = *name;
      } else {
        Error("invalid tunnel source '" + std::string(tokens_[2]) + "'");
      }
      return true;
    }
    if (Is(0, "tunnel") && Is(1, "destination")) {
      auto a = tokens_.size() == 3 ? Ipv4::Parse(tokens_[2]) : std::nullopt;
      if (!a) {
        Error("malformed tunnel destination command");
      } else {
        s.destination_ip = a;
      }
      return true;
    }
    if (Is(0, "tunnel") && Is(1, "mode")) {
      std::vector<std::string> rest;
      for (std::size_t i = 2; i < tokens_.size(); ++i) rest.push_back(ToLower(tokens_[i]));
      const std::string mode = text::Join(rest, " ");
      if (mode == "gre" || mode == "gre ip") {
        s.mode = "gre";
      } else if (mode == "gre multipoint" || mode == "ipip" || mode == "ipsec ipv4") {
        s.mode = mode;
      } else {
        Error("unsupported tunnel mode '" + mode + "'");
      }
      return true;
    }
    if (IsIgnoredTunnelCommand(tokens_) || IsIgnoredInterfaceCommand(tokens_) ||
        Is(0, "description") || (Is(0, "ip") && Is(1, "access-group"))) {
      Warn("unsupported tunnel interface command ignored");
      return true;
    }
    return false;
  }

  bool ParseOspfCommand() {
    const bool negated = Is(0, "no");
    const std::size_t at = negated ? 1 : 0;
    if (Is(at, "network")) {
      if (tokens_.size() != at + 5 || !Is(at + 3, "area")) {
        Error("malformed network command; expected 'network <prefix> <wildcard> area <id>'");
        return true;
      }
      auto prefix = Ipv4::Parse(tokens_[at + 1]);
      auto wildcard = Ipv4::Parse(tokens_[at + 2]);
      std::optional<std::uint32_t> area = ParseUint(tokens_[at + 4]);
      if (!area) {
        if (auto dotted = Ipv4::Parse(tokens_[at + 4])) area = dotted->value();
      }
      if (!prefix || !wildcard) {
        Error("invalid network address or wildcard");
      } else if (!area) {
        Error("invalid area '" + std::string(tokens_[at + 4]) + "'");
      } else {
        OspfNetwork n{Ipv4(prefix->value() & ~wildcard->value()), *wildcard, *area};
        auto& networks = config_.ospf[ospf_process_].networks;
        std::erase(networks, n);
        if (!negated) networks.push_back(n);
      }
      return true;
    }
    if (IsIgnoredOspfCommand(tokens_)) {
      Warn("unsupported ospf command ignored");
      return true;
    }
    return false;
  }

  std::optional<AddressMatch> ParseAddressSpec(std::size_t& pos, bool allow_bare) {
    if (pos >= tokens_.size()) {
      Error("missing address");
      return std::nullopt;
    }
    if (Is(pos, "any")) {
      ++pos;
      return AddressMatch::Any();
    }
    if (Is(pos, "host")) {
      auto a = pos + 1 < tokens_.size() ? Ipv4::Parse(tokens_[pos + 1]) : std::nullopt;
      if (!a) {
        Error("invalid host address");
        return std::nullopt;
      }
      pos += 2;
      return AddressMatch::Host(*a);
    }
    auto a = Ipv4::Parse(tokens_[pos]);
    if (!a) {
      Error("invalid address '" + std::string(tokens_[pos]) + "'");
      return std::nullopt;
    }
    auto w = pos + 1 < tokens_.size() ? Ipv4::Parse(tokens_[pos + 1]) : std::nullopt;
    if (!w) {
      if (allow_bare) {
        ++pos;
        return AddressMatch::Host(*a);
      }
      Error("missing wildcard after '" + std::string(tokens_[pos]) + "'");
      return std::nullopt;
    }
    pos += 2;
    return Masked(AddressMatch{*a, *w});
  }

  void ParseAccessList() {
    if (tokens_.size() < 3) {
      Error("malformed access-list");
      return;
    }
    auto number = ParseUint(tokens_[1]);
    if (!number) {
      Error("access-list number must be numeric");
      return;
    }
    const AclKind kind = KindOfAcl(*number);
    if (kind == AclKind::kInvalid) {
      Error("access-list number out of range");
      return;
    }
    if (Is(2, "remark")) return;
    auto action = ParseAclAction(ToLower(tokens_[2]));
    if (!action) {
      Error("expected 'permit' or 'deny'");
      return;
    }
    AclEntry entry;
    entry.action = *action;
    std::size_t pos = 3;
    if (kind == AclKind::kStandard) {
      auto src = ParseAddressSpec(pos, /*allow_bare=*/true);
      if (!src) return;
      entry.src = *src;
    } else {
      if (pos >= tokens_.size()) {
        Error("missing protocol");
        return;
      }
      auto protocol = ParseProtocol(ToLower(tokens_[pos]));
      if (!protocol) {
        Error("unsupported protocol '" + std::string(tokens_[pos]) + "'");
        return;
      }
      entry.protocol = *protocol;
      ++pos;
      auto src = ParseAddressSpec(pos, /*allow_bare=*/false);
      if (!src) return;
      entry.src = *src;
      if (pos < tokens_.size() && InSet(tokens_[pos], {"eq", "gt", "lt", "neq", "range"})) {
        Error("source port matching is not supported");
        return;
      }
      auto dst = ParseAddressSpec(pos, /*allow_bare=*/false);
      if (!dst) return;
      entry.dst = *dst;
      if (Is(pos, "eq")) {
        if (entry.protocol != Protocol::kTcp && entry.protocol != Protocol::kUdp) {
          Error("port requires tcp/udp");
          return;
        }
        auto port = pos + 1 < tokens_.size() ? ParsePort(tokens_[pos + 1]) : std::nullopt;
        if (!port) {
          Error("invalid port");
          return;
        }
        entry.dst_port = port;
        pos += 2;
      } else if (pos < tokens_.size() && InSet(tokens_[pos], {"gt", "lt", "neq", "range"})) {
        Error("unsupported port operator '" + std::string(tokens_[pos]) + "'");
        return;
      }
    }
    bool logged = false;
    while (pos < tokens_.size() && InSet(tokens_[pos], {"log", "log-input"})) {
      logged = true;
      ++pos;
    }
    if (pos < tokens_.size()) {
      Error("unexpected token '" + std::string(tokens_[pos]) + "'");
      return;
    }
    const std::string id = std::to_string(*number);
    AclStanza& acl = config_.acls[id];
    acl.acl_id = id;
    if (std::find(acl.entries.begin(), acl.entries.end(), entry) != acl.entries.end()) {
      Warn("duplicate access-list entry ignored");
      return;
    }
    acl.entries.push_back(entry);
    if (logged) Warn("option 'log' ignored");
  }

  void ParseGlobal() {
    const std::string head = ToLower(tokens_[0]);
    if (head == "end" || head == "exit") return;
    if (head == "hostname") {
      if (tokens_.size() != 2) {
        Error("malformed hostname");
      } else if (tokens_[1] != config_.device) {
        Warn("hostname '" + std::string(tokens_[1]) + "' differs from device '" +
             config_.device + "'");
      }
      return;
    }
    if (head == "interface") {
      OpenInterface();
      return;
    }
    if (head == "access-list") {
      ParseAccessList();
      return;
    }
    if (head == "router") {
      if (Is(1, "ospf")) {
        auto pid = tokens_.size() == 3 ? ParseUint(tokens_[2]) : std::nullopt;
        if (!pid || *pid == 0 || *pid > 65535) {
          Error("malformed router ospf command");
          return;
        }
        ospf_process_ = *pid;
        config_.ospf[*pid].process_id = *pid;
        context_ = Context::kOspf;
      } else {
        Warn("unsupported routing protocol ignored");
        context_ = Context::kIgnored;
      }
      return;
    }
    if (head == "banner") {
      Warn("banner ignored");
      if (tokens_.size() >= 3) {
        std::string_view first = tokens_[2];
        std::string delim = first.substr(0, 2) == "^C" ? "^C" : std::string(first.substr(0, 1));
        std::string_view after = std::string_view(line_text_).substr(
            line_text_.find(first) + delim.size());
        if (after.find(delim) == std::string_view::npos) banner_delimiter_ = delim;
      }
      return;
    }
    if (head == "no") {
      if (ParseNegatedGlobal()) return;
    }
    if (head == "ip" && Is(1, "access-list")) {
      Error("named access lists are not supported; use a numbered access-list");
      context_ = Context::kIgnored;
      return;
    }
    if (IsIgnoredGlobalCommand(tokens_)) {
      Warn("unsupported global command ignored");
      context_ = Context::kIgnored;
      return;
    }
    if ((head == "ip" && (Is(1, "address") || Is(1, "access-group"))) ||
        head == "shutdown" || head == "description" ||
        (head == "no" && (Is(1, "shutdown") || Is(1, "description"))) ||
        (head == "tunnel" && tokens_.size() >= 2)) {
      Error("'" + line_text_ + "' outside interface configuration");
      return;
    }
    if (head == "network") {
      Error("'network' outside router ospf configuration");
      return;
    }
    UnknownDirective();
  }

  bool ParseNegatedGlobal() {
    if (Is(1, "interface") && tokens_.size() >= 3) {
      std::string joined;
      for (std::size_t i = 2; i < tokens_.size(); ++i) joined += tokens_[i];
      if (auto name = CanonicalInterfaceName(joined)) {
        config_.interfaces.erase(*name);
        config_.tunnels.erase(*name);
      } else {
        Warn("unsupported interface type ignored");
      }
      return true;
    }
    if (Is(1, "access-list") && tokens_.size() == 3) {
      config_.acls.erase(NormalizeAclId(tokens_[2]));
      return true;
    }
    if (Is(1, "router") && Is(2, "ospf") && tokens_.size() == 4) {
      if (auto pid = ParseUint(tokens_[3])) config_.ospf.erase(*pid);
      return true;
    }
    return false;
  }

  void OpenInterface() {
    if (tokens_.size() < 2) {
      Error("missing interface name");
      return;
    }
    if (Is(1, "range")) {
      Warn("interface range ignored");
      context_ = Context::kIgnored;
      return;
    }
    std::string joined;
    for (std::size_t i = 1; i < tokens_.size(); ++i) joined += tokens_[i];
    auto name = CanonicalInterfaceName(joined);
    if (!name) {
      Warn("unsupported interface type ignored");
      context_ = Context::kIgnored;
      return;
    }
    current_ = *name;
    if (name->rfind("Tunnel", 0) == 0) {
      config_.tunnels[current_].tunnel_if = current_;
      context_ = Context::kTunnel;
    } else {
      config_.interfaces[current_].name = current_;
      context_ = Context::kInterface;
    }
  }

  WorkingConfig config_;
  std::vector<SyntaxIssue> issues_;
  Context context_ = Context::kNone;
  std::string current_;
  std::uint32_t ospf_process_ = 0;
  std::optional<std::string> banner_delimiter_;
  int line_number_ = 0;
  int column_ = 1;
  std::string line_text_;
  std::vector<std::string_view> tokens_;
};

std::string RenderMatch(const AddressMatch& m) {
  if (m.IsAny() && m.prefix.value() == 0) return "any";
  if (m.IsHost()) return "host " + m.prefix.str();
  return m.prefix.str() + " " + m.wildcard.str();
}

void RenderAddress(std::string& out, const std::optional<Ipv4>& address,
                   const std::optional<Ipv4>& mask) {
  if (address && mask) {
    out += " ip address " + address->str() + " " + mask->str() + "\n";
  } else {
    out += " no ip address\n";
  }
}

void RenderState(std::string& out, AdminState state) {
  out += state == AdminState::kDown ? " shutdown\n" : " no shutdown\n";
}

}  // namespace

ParseResult ParseConfig(std::string_view device, std::string_view text) {
  DeviceConfigAst empty;
  empty.device = std::string(device);
  return ParseConfigOnto(empty, text);
}

ParseResult ParseConfigOnto(const DeviceConfigAst& base, std::string_view text) {
  Parser parser(ToWorking(base));
  parser.Run(text);
  return std::move(parser).Finish();
}

DeviceConfigAst Normalized(const DeviceConfigAst& ast) {
  return FromWorking(ToWorking(ast));
}

std::string CanonicalText(const DeviceConfigAst& input) {
  const DeviceConfigAst ast = Normalized(input);
  std::string out = "hostname " + ast.device + "\n";
  for (const auto& stanza : ast.stanzas) {
    out += "!\n";
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, InterfaceStanza>) {
            out += "interface " + s.name + "\n";
            if (s.description) out += " description " + *s.description + "\n";
            RenderAddress(out, s.ip_address, s.mask);
            for (const auto& b : s.acl_bindings) {
              out += " ip access-group " + b.acl_id + " " +
                     std::string(ToString(b.direction)) + "\n";
            }
            RenderState(out, s.admin_state);
          } else if constexpr (std::is_same_v<T, TunnelStanza>) {
            out += "interface " + s.tunnel_if + "\n";
            RenderAddress(out, s.tunnel_ip, s.tunnel_mask);
            if (s.source_if) out += " tunnel source " + *s.source_if + "\n";
            if (s.destination_ip) {
              out += " tunnel destination " + s.destination_ip->str() + "\n";
            }
            out += " tunnel mode " + (s.mode == "gre" ? std::string("gre ip") : s.mode) + "\n";
            RenderState(out, s.admin_state);
          } else if constexpr (std::is_same_v<T, AclStanza>) {
            for (const auto& e : s.entries) {
              out += "access-list " + s.acl_id + " " + std::string(ToString(e.action));
              if (e.dst) {
                out += " " + std::string(ToString(e.protocol)) + " " +
                       RenderMatch(e.src) + " " + RenderMatch(*e.dst);
                if (e.dst_port) out += " eq " + std::to_string(*e.dst_port);
              } else {
                out += " " + RenderMatch(e.src);
              }
              out += "\n";
            }
          } else {
            out += "router ospf " + std::to_string(s.process_id) + "\n";
            for (const auto& n : s.networks) {
              out += " network " + n.prefix.str() + " " + n.wildcard.str() +
                     " area " + std::to_string(n.area) + "\n";
            }
          }
        },
        stanza);
  }
  if (!ast.stanzas.empty()) out += "!\n";
  return out;
}

}  // namespace netcfg
