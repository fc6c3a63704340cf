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

#include "netcfg/verifier.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <utility>

#include "json.hpp"

#include "netcfg/errors.hpp"

namespace netcfg {
namespace {

using Json = nlohmann::json;

constexpr std::array<std::pair<ErrorCode, std::string_view>, 8> kCodeNames = {{
    {ErrorCode::kSyntax, "SYNTAX"},
    {ErrorCode::kUnknownDevice, "UNKNOWN_DEVICE"},
    {ErrorCode::kIfStateMismatch, "IF_STATE_MISMATCH"},
    {ErrorCode::kAclSemantics, "ACL_SEMANTICS"},
    {ErrorCode::kOspfCoverage, "OSPF_COVERAGE"},
    {ErrorCode::kOspfAdjacency, "OSPF_ADJACENCY"},
    {ErrorCode::kTunnelAsymmetry, "TUNNEL_ASYMMETRY"},
    {ErrorCode::kGoalUnmet, "GOAL_UNMET"},
}};

VerificationError MakeError(ErrorCode code, std::string device,
                            std::optional<std::string> location, std::string message,
                            std::string fix = {}) {
  return {code, std::move(device), std::move(location), std::move(message), std::move(fix)};
}

std::string MatchText(const AddressMatch& m) {
  if (m.IsAny()) return "any";
  if (m.IsHost()) return "host " + m.prefix.str();
  return m.prefix.str() + " " + m.wildcard.str();
}

std::string AddressText(const std::optional<Ipv4>& ip, const std::optional<Ipv4>& mask) {
  if (!ip) return "no address";
  return ip->str() + " " + (mask ? mask->str() : std::string("?"));
}

std::string InterfaceLocation(std::string_view name) {
  return "interface " + std::string(name);
}

std::string AclLocation(std::string_view id) { return "access-list " + std::string(id); }

std::string OspfLocation(std::uint32_t pid) { return "router ospf " + std::to_string(pid); }

std::string RefText(const InterfaceRef& ref) { return ref.device + ":" + ref.interface; }

// The line that would realize `params` as the first matching entry.
std::string AclEntryLine(const AclParams& p) {
  std::string line = AclLocation(p.acl_id) + " " + std::string(ToString(p.action)) + " " +
                     std::string(ToString(p.protocol)) + " " + MatchText(p.Source()) + " " +
                     MatchText(p.Destination());
  if (p.dst_port) line += " eq " + std::to_string(*p.dst_port);
  return line;
}

bool EntryMatches(const AclEntry& e, const Packet& p) {
  if (e.protocol != Protocol::kIp && e.protocol != p.protocol) return false;
  if (!e.src.Matches(p.src)) return false;
  if (e.dst && !e.dst->Matches(p.dst)) return false;
  if (e.dst_port && (!p.dst_port || *p.dst_port != *e.dst_port)) return false;
  return true;
}

// Area of the most specific network statement covering `address` across all
// OSPF processes of the device; ties keep the first statement in order.
std::optional<std::uint32_t> AdvertisedArea(const DeviceConfigAst& dev, Ipv4 address) {
  std::optional<std::uint32_t> area;
  int best_dont_care = 33;
  for (const OspfStanza* ospf : dev.OspfProcesses()) {
    for (const OspfNetwork& n : ospf->networks) {
      if (!AddressMatch{n.prefix, n.wildcard}.Matches(address)) continue;
      const int dont_care = std::popcount(n.wildcard.value());
      if (dont_care < best_dont_care) {
        best_dont_care = dont_care;
        area = n.area;
      }
    }
  }
  return area;
}

struct LinkEnd {
  const DeviceConfigAst* device = nullptr;
  const InterfaceStanza* iface = nullptr;
};

std::optional<LinkEnd> OspfLinkEnd(const NetworkModel& model, const InterfaceRef& ref) {
  const DeviceConfigAst* dev = model.FindDevice(ref.device);
  if (dev == nullptr || dev->OspfProcesses().empty()) return std::nullopt;
  const InterfaceStanza* iface = dev->FindInterface(ref.interface);
  if (iface == nullptr || !iface->ip_address || !iface->mask ||
      iface->admin_state == AdminState::kDown) {
    return std::nullopt;
  }
  return LinkEnd{dev, iface};
}

// Address a tunnel source resolves to: a literal address, or the address
// configured on the named interface.
std::optional<Ipv4> SourceAddress(const DeviceConfigAst& dev, const TunnelStanza& t) {
  if (!t.source_if) return std::nullopt;
  if (auto literal = Ipv4::Parse(*t.source_if)) return literal;
  return dev.InterfaceAddress(*t.source_if);
}

void CheckMirror(const NetworkModel& candidate, const TunnelEndpoint& from,
                 const TunnelStanza& from_tunnel, const TunnelEndpoint& to,
                 const TunnelStanza& to_tunnel, std::vector<VerificationError>& out) {
  const DeviceConfigAst& peer = *candidate.FindDevice(to.device);
  const std::optional<Ipv4> peer_source = SourceAddress(peer, to_tunnel);
  const std::string where = InterfaceLocation(from.tunnel_if);
  if (!peer_source) {
    out.push_back(MakeError(
        ErrorCode::kTunnelAsymmetry, to.device, InterfaceLocation(to.tunnel_if),
        "tunnel source " + to_tunnel.source_if.value_or("(none)") + " has no address",
        "tunnel source " + to.source_if));
    return;
  }
  if (!from_tunnel.destination_ip || *from_tunnel.destination_ip != *peer_source) {
    out.push_back(MakeError(
        ErrorCode::kTunnelAsymmetry, from.device, where,
        "tunnel destination " +
            (from_tunnel.destination_ip ? from_tunnel.destination_ip->str()
                                        : std::string("(none)")) +
            " is not the address of " + to.device + "'s tunnel source (" +
            peer_source->str() + ")",
        "tunnel destination " + peer_source->str()));
  }
}

void CheckEndpointGoal(const TunnelEndpoint& want, const TunnelStanza& got,
                       std::vector<VerificationError>& out) {
  const std::string where = InterfaceLocation(want.tunnel_if);
  const std::string address = want.tunnel_ip.str() + " " + want.tunnel_mask.str();
  if (got.tunnel_ip != want.tunnel_ip || got.tunnel_mask != want.tunnel_mask) {
    out.push_back(MakeError(ErrorCode::kGoalUnmet, want.device, where,
                            "tunnel address expected " + address + ", found " +
                                AddressText(got.tunnel_ip, got.tunnel_mask),
                            "ip address " + address));
  }
  if (got.source_if != want.source_if) {
    out.push_back(MakeError(ErrorCode::kGoalUnmet, want.device, where,
                            "tunnel source expected " + want.source_if + ", found " +
                                got.source_if.value_or("(none)"),
                            "tunnel source " + want.source_if));
  }
  if (got.destination_ip != want.destination_ip) {
    out.push_back(MakeError(
        ErrorCode::kGoalUnmet, want.device, where,
        "tunnel destination expected " + want.destination_ip.str() + ", found " +
            (got.destination_ip ? got.destination_ip->str() : std::string("(none)")),
        "tunnel destination " + want.destination_ip.str()));
  }
  if (got.admin_state == AdminState::kDown) {
    out.push_back(MakeError(ErrorCode::kGoalUnmet, want.device, where,
                            "tunnel interface is shut down", "no shutdown"));
  }
}

std::string Where(const VerificationError& e) {
  std::string where = e.device;
  if (e.location) where += (where.empty() ? "" : " ") + *e.location;
  return where;
}

std::string SuggestOne(const VerificationError& e) {
  switch (e.code) {
    case ErrorCode::kSyntax:
      if (e.device.empty()) {
        return Where(e) + ": follow the required answer format (" + e.message + ")";
      }
      if (!e.fix.empty()) {
        return Where(e) + ": unknown directive; did you mean '" + e.fix + "'?";
      }
      return Where(e) + ": correct or remove the line (" + e.message + ")";
    case ErrorCode::kUnknownDevice:
      return "remove the section for " + e.device +
             "; only devices listed in the network status may be configured";
    case ErrorCode::kIfStateMismatch:
    case ErrorCode::kOspfCoverage:
    case ErrorCode::kGoalUnmet:
      if (!e.fix.empty()) {
        return "add '" + e.fix + "' under " + e.location.value_or("the configuration") +
               " on " + e.device;
      }
      return e.device + ": " + e.message;
    case ErrorCode::kAclSemantics:
      return "on " + e.device + ", add '" + e.fix + "' before any conflicting entry of " +
             e.location.value_or("the access list");
    case ErrorCode::kOspfAdjacency:
      return "advertise subnet " + e.fix + " in the same OSPF area on both ends of link " +
             e.location.value_or("");
    case ErrorCode::kTunnelAsymmetry:
      if (!e.fix.empty()) {
        return "set '" + e.fix + "' under " + e.location.value_or("the tunnel") + " on " +
               e.device + " so the endpoints mirror each other";
      }
      return e.device + ": make the tunnel endpoints mirror each other (" + e.message + ")";
  }
  return e.message;
}

}  // namespace

std::string_view ToString(ErrorCode code) {
  for (const auto& [c, name] : kCodeNames) {
    if (c == code) return name;
  }
  return "SYNTAX";
}

std::optional<ErrorCode> ParseErrorCode(std::string_view text) {
  for (const auto& [c, name] : kCodeNames) {
    if (name == text) return c;
  }
  return std::nullopt;
}

std::string_view ToString(Verdict verdict) {
  return verdict == Verdict::kPermit ? "permit" : "deny";
}

std::string Packet::Describe() const {
  std::string s = std::string(ToString(protocol)) + " " + src.str() + " -> " + dst.str();
  if (dst_port) s += ":" + std::to_string(*dst_port);
  return s;
}

VerificationReport MakeReport(std::string intent_id, IntentClass intent_class,
                              std::vector<VerificationError> errors, WallTime checked_at) {
  VerificationReport report;
  report.passed = errors.empty();
  report.intent_id = std::move(intent_id);
  report.intent_class = intent_class;
  report.suggestions = Suggest(errors);
  report.errors = std::move(errors);
  report.checked_at = checked_at;
  return report;
}

std::string ReportToJson(const VerificationReport& report, int indent) {
  Json errors = Json::array();
  for (const VerificationError& e : report.errors) {
    Json j = {{"code", ToString(e.code)}, {"device", e.device}, {"message", e.message}};
    if (e.location) j["location"] = *e.location;
    errors.push_back(std::move(j));
  }
  const Json j = {{"passed", report.passed},
                  {"intent_id", report.intent_id},
                  {"class", ToString(report.intent_class)},
                  {"errors", std::move(errors)},
                  {"suggestions", report.suggestions},
                  {"checked_at", FormatUtc(report.checked_at)}};
  return j.dump(indent);
}

VerificationReport ReportFromJson(std::string_view json_text) {
  try {
    const Json j = Json::parse(json_text);
    VerificationReport report;
    report.passed = j.at("passed").get<bool>();
    report.intent_id = j.at("intent_id").get<std::string>();
    const auto cls = ParseIntentClass(j.at("class").get<std::string>());
    if (!cls) throw ParseError("report: unknown class");
    report.intent_class = *cls;
    for (const Json& e : j.at("errors")) {
      const auto code = ParseErrorCode(e.at("code").get<std::string>());
      if (!code) throw ParseError("report: unknown error code");
      VerificationError err;
      err.code = *code;
      err.device = e.at("device").get<std::string>();
      if (e.contains("location")) err.location = e.at("location").get<std::string>();
      err.message = e.at("message").get<std::string>();
      report.errors.push_back(std::move(err));
    }
    report.suggestions = j.at("suggestions").get<std::vector<std::string>>();
    const auto at = ParseUtc(j.at("checked_at").get<std::string>());
    if (!at) throw ParseError("report: bad checked_at");
    report.checked_at = *at;
    return report;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

Verdict SimulateAcl(std::span<const AclEntry> entries, const Packet& packet) {
  for (const AclEntry& e : entries) {
    if (EntryMatches(e, packet)) {
      return e.action == AclAction::kPermit ? Verdict::kPermit : Verdict::kDeny;
    }
  }
  return Verdict::kDeny;
}

std::vector<VerificationError> CheckSyntax(const ConfigBundle& bundle) {
  struct Located {
    std::string device;
    int line;
    VerificationError error;
  };
  std::vector<Located> found;
  for (const DeviceSection& section : bundle.sections) {
    const ParseResult parsed = ParseConfig(section.device, section.text);
    for (const SyntaxIssue& issue : parsed.Errors()) {
      found.push_back(
          {section.device, issue.line,
           MakeError(ErrorCode::kSyntax, section.device,
                     "line " + std::to_string(issue.line) + ", col " +
                         std::to_string(issue.column),
                     issue.message + ": '" + issue.text + "'", issue.did_you_mean)});
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const Located& a, const Located& b) {
    return std::tie(a.device, a.line) < std::tie(b.device, b.line);
  });
  std::vector<VerificationError> out;
  out.reserve(found.size());
  for (Located& l : found) out.push_back(std::move(l.error));
  return out;
}

std::vector<VerificationError> CheckDevices(const NetworkModel& model,
                                            const ConfigBundle& bundle) {
  std::vector<VerificationError> out;
  std::set<std::string> reported;
  for (const DeviceSection& section : bundle.sections) {
    if (model.HasDevice(section.device) || !reported.insert(section.device).second) continue;
    out.push_back(MakeError(ErrorCode::kUnknownDevice, section.device, std::nullopt,
                            "device " + section.device + " is not in the topology"));
  }
  return out;
}

std::vector<VerificationError> CheckInterface(const NetworkModel& candidate,
                                              const LowLevelDescription& lld) {
  const auto& p = std::get<CpParams>(lld.params);
  std::vector<VerificationError> out;
  const DeviceConfigAst* dev = candidate.FindDevice(p.device);
  if (dev == nullptr) {
    out.push_back(MakeError(ErrorCode::kUnknownDevice, p.device, std::nullopt,
                            "device " + p.device + " is not in the topology"));
    return out;
  }
  const std::string where = InterfaceLocation(p.interface);

  // Tunnel interfaces live in their own stanza kind; project them onto the
  // interface fields the CP schema talks about.
  InterfaceStanza view;
  if (const InterfaceStanza* iface = dev->FindInterface(p.interface)) {
    view = *iface;
  } else if (const TunnelStanza* t = dev->FindTunnel(p.interface)) {
    view.name = t->tunnel_if;
    view.ip_address = t->tunnel_ip;
    view.mask = t->tunnel_mask;
    view.admin_state = t->admin_state;
  } else {
    out.push_back(MakeError(ErrorCode::kIfStateMismatch, p.device, where,
                            "interface " + p.interface + " is not configured", where));
    return out;
  }

  if (p.admin_state && view.admin_state != *p.admin_state) {
    out.push_back(MakeError(ErrorCode::kIfStateMismatch, p.device, where,
                            "admin state expected " + std::string(ToString(*p.admin_state)) +
                                ", found " + std::string(ToString(view.admin_state)),
                            *p.admin_state == AdminState::kDown ? "shutdown" : "no shutdown"));
  }
  if (p.ip_address && (view.ip_address != p.ip_address || view.mask != p.mask)) {
    out.push_back(MakeError(ErrorCode::kIfStateMismatch, p.device, where,
                            "address expected " + AddressText(p.ip_address, p.mask) +
                                ", found " + AddressText(view.ip_address, view.mask),
                            "ip address " + AddressText(p.ip_address, p.mask)));
  }
  if (p.description && view.description != p.description) {
    out.push_back(MakeError(ErrorCode::kGoalUnmet, p.device, where,
                            "description expected '" + *p.description + "', found " +
                                (view.description ? "'" + *view.description + "'"
                                                  : std::string("none")),
                            "description " + *p.description));
  }
  return out;
}

std::vector<Packet> RepresentativePackets(const AclParams& params) {
  const AddressMatch src = params.Source();
  const AddressMatch dst = params.Destination();
  std::vector<Ipv4> srcs = {src.Low(), src.High()};
  std::vector<Ipv4> dsts = {dst.Low(), dst.High()};
  srcs.erase(std::unique(srcs.begin(), srcs.end()), srcs.end());
  dsts.erase(std::unique(dsts.begin(), dsts.end()), dsts.end());

  // (protocol, port) pairs the intent covers.
  std::vector<std::pair<Protocol, std::optional<std::uint16_t>>> flows;
  switch (params.protocol) {
    case Protocol::kIp:
      flows = {{Protocol::kIp, std::nullopt},
               {Protocol::kTcp, 80},
               {Protocol::kUdp, 53},
               {Protocol::kIcmp, std::nullopt}};
      break;
    case Protocol::kTcp:
    case Protocol::kUdp:
      if (params.dst_port) {
        flows = {{params.protocol, *params.dst_port}};
      } else {
        flows = {{params.protocol, 1}, {params.protocol, 65535}};
      }
      break;
    case Protocol::kIcmp:
      flows = {{Protocol::kIcmp, std::nullopt}};
      break;
  }

  std::vector<Packet> packets;
  for (const auto& [protocol, port] : flows) {
    for (Ipv4 s : srcs) {
      for (Ipv4 d : dsts) packets.push_back({protocol, s, d, port});
    }
  }
  return packets;
}

std::vector<VerificationError> CheckAcl(const NetworkModel& candidate,
                                        const LowLevelDescription& lld) {
  const auto& p = std::get<AclParams>(lld.params);
  std::vector<VerificationError> out;
  const DeviceConfigAst* dev = candidate.FindDevice(p.device);
  if (dev == nullptr) {
    out.push_back(MakeError(ErrorCode::kUnknownDevice, p.device, std::nullopt,
                            "device " + p.device + " is not in the topology"));
    return out;
  }
  const std::string where = AclLocation(p.acl_id);
  const AclStanza* acl = dev->FindAcl(p.acl_id);
  if (acl == nullptr) {
    out.push_back(MakeError(ErrorCode::kAclSemantics, p.device, where,
                            where + " is not configured", AclEntryLine(p)));
  } else {
    const Verdict wanted = p.action == AclAction::kPermit ? Verdict::kPermit : Verdict::kDeny;
    std::size_t wrong = 0;
    std::optional<Packet> first_wrong;
    const std::vector<Packet> packets = RepresentativePackets(p);
    for (const Packet& packet : packets) {
      if (SimulateAcl(acl->entries, packet) == wanted) continue;
      ++wrong;
      if (!first_wrong) first_wrong = packet;
    }
    if (first_wrong) {
      out.push_back(MakeError(
          ErrorCode::kAclSemantics, p.device, where,
          "packet " + first_wrong->Describe() + " gets " +
              std::string(ToString(wanted == Verdict::kPermit ? Verdict::kDeny
                                                               : Verdict::kPermit)) +
              ", intent requires " + std::string(ToString(wanted)) + " (" +
              std::to_string(wrong) + " of " + std::to_string(packets.size()) +
              " representative packets wrong)",
          AclEntryLine(p)));
    }
  }

  if (p.apply_to_interface) {
    const AclDirection direction = p.direction.value_or(AclDirection::kIn);
    const std::string binding =
        "ip access-group " + p.acl_id + " " + std::string(ToString(direction));
    const std::string iface_where = InterfaceLocation(*p.apply_to_interface);
    const InterfaceStanza* iface = dev->FindInterface(*p.apply_to_interface);
    const bool bound =
        iface != nullptr &&
        std::find(iface->acl_bindings.begin(), iface->acl_bindings.end(),
                  AclBinding{p.acl_id, direction}) != iface->acl_bindings.end();
    if (!bound) {
      out.push_back(MakeError(ErrorCode::kGoalUnmet, p.device, iface_where,
                              where + " is not applied " + std::string(ToString(direction)) +
                                  " on " + *p.apply_to_interface,
                              binding));
    }
  }
  return out;
}

std::vector<VerificationError> CheckOspf(const NetworkModel& candidate,
                                         const LowLevelDescription& lld) {
  const auto& p = std::get<RpParams>(lld.params);
  std::vector<VerificationError> out;
  const DeviceConfigAst* dev = candidate.FindDevice(p.device);
  if (dev == nullptr) {
    out.push_back(MakeError(ErrorCode::kUnknownDevice, p.device, std::nullopt,
                            "device " + p.device + " is not in the topology"));
    return out;
  }
  const std::string where = OspfLocation(p.ospf_process_id);
  const OspfStanza* ospf = dev->FindOspf(p.ospf_process_id);
  for (const PrefixWildcard& n : p.networks) {
    const OspfNetwork wanted{Ipv4(n.prefix.value() & ~n.wildcard.value()), n.wildcard, p.area};
    const bool present = ospf != nullptr && std::find(ospf->networks.begin(),
                                                      ospf->networks.end(),
                                                      wanted) != ospf->networks.end();
    if (present) continue;
    const std::string line = "network " + wanted.prefix.str() + " " + wanted.wildcard.str() +
                             " area " + std::to_string(wanted.area);
    out.push_back(MakeError(ErrorCode::kOspfCoverage, p.device, where,
                            "'" + line + "' is missing from " + where, line));
  }

  for (const Link& link : candidate.links) {
    const auto a = OspfLinkEnd(candidate, link.a);
    const auto b = OspfLinkEnd(candidate, link.b);
    if (!a || !b) continue;
    const auto area_a = AdvertisedArea(*a->device, *a->iface->ip_address);
    const auto area_b = AdvertisedArea(*b->device, *b->iface->ip_address);
    if (!area_a && !area_b) continue;
    const Ipv4 mask = *a->iface->mask;
    const std::string subnet = Ipv4(a->iface->ip_address->value() & mask.value()).str() +
                               "/" + std::to_string(mask.PrefixLength());
    const std::string link_text = RefText(link.a) + " <-> " + RefText(link.b);
    if (area_a.has_value() != area_b.has_value()) {
      const InterfaceRef& silent = area_a ? link.b : link.a;
      out.push_back(MakeError(ErrorCode::kOspfAdjacency, silent.device, link_text,
                              "link subnet " + subnet + " is advertised only on " +
                                  (area_a ? link.a.device : link.b.device),
                              subnet));
    } else if (*area_a != *area_b) {
      out.push_back(MakeError(ErrorCode::kOspfAdjacency, link.b.device, link_text,
                              "link subnet " + subnet + " is in area " +
                                  std::to_string(*area_a) + " on " + link.a.device +
                                  " but area " + std::to_string(*area_b) + " on " +
                                  link.b.device,
                              subnet));
    }
  }
  return out;
}

std::vector<VerificationError> CheckTunnel(const NetworkModel& candidate,
                                           const LowLevelDescription& lld) {
  const auto& p = std::get<TnParams>(lld.params);
  std::vector<VerificationError> out;
  const TunnelStanza* tunnels[2] = {nullptr, nullptr};
  const TunnelEndpoint* ends[2] = {&p.endpoint_a, &p.endpoint_b};
  for (int i = 0; i < 2; ++i) {
    const TunnelEndpoint& e = *ends[i];
    const DeviceConfigAst* dev = candidate.FindDevice(e.device);
    if (dev == nullptr) {
      out.push_back(MakeError(ErrorCode::kUnknownDevice, e.device, std::nullopt,
                              "device " + e.device + " is not in the topology"));
      continue;
    }
    tunnels[i] = dev->FindTunnel(e.tunnel_if);
    if (tunnels[i] == nullptr) {
      out.push_back(MakeError(ErrorCode::kTunnelAsymmetry, e.device,
                              InterfaceLocation(e.tunnel_if),
                              "tunnel endpoint " + e.tunnel_if + " is not configured",
                              "interface " + e.tunnel_if));
    }
  }
  if (tunnels[0] == nullptr || tunnels[1] == nullptr) return out;
  const TunnelStanza& ta = *tunnels[0];
  const TunnelStanza& tb = *tunnels[1];

  CheckMirror(candidate, p.endpoint_a, ta, p.endpoint_b, tb, out);
  CheckMirror(candidate, p.endpoint_b, tb, p.endpoint_a, ta, out);

  const bool same_subnet = ta.tunnel_ip && tb.tunnel_ip && ta.tunnel_mask && tb.tunnel_mask &&
                           *ta.tunnel_mask == *tb.tunnel_mask &&
                           *ta.tunnel_ip != *tb.tunnel_ip &&
                           SameSubnet(*ta.tunnel_ip, *tb.tunnel_ip, *ta.tunnel_mask);
  if (!same_subnet) {
    out.push_back(MakeError(ErrorCode::kTunnelAsymmetry, p.endpoint_b.device,
                            InterfaceLocation(p.endpoint_b.tunnel_if),
                            "tunnel addresses " + AddressText(ta.tunnel_ip, ta.tunnel_mask) +
                                " and " + AddressText(tb.tunnel_ip, tb.tunnel_mask) +
                                " do not share one subnet"));
  }
  if (ta.mode != tb.mode) {
    out.push_back(MakeError(ErrorCode::kTunnelAsymmetry, p.endpoint_b.device,
                            InterfaceLocation(p.endpoint_b.tunnel_if),
                            "tunnel modes differ (" + ta.mode + " vs " + tb.mode + ")",
                            "tunnel mode " + ta.mode + (ta.mode == "gre" ? " ip" : "")));
  }

  CheckEndpointGoal(p.endpoint_a, ta, out);
  CheckEndpointGoal(p.endpoint_b, tb, out);
  return out;
}

VerificationReport Verify(const NetworkModel& /*baseline*/, const NetworkModel& candidate,
                          const LowLevelDescription& lld, WallTime checked_at) {
  std::vector<VerificationError> errors;
  switch (lld.intent_class()) {
    case IntentClass::kCP:
      errors = CheckInterface(candidate, lld);
      break;
    case IntentClass::kRP:
      errors = CheckOspf(candidate, lld);
      break;
    case IntentClass::kACL:
      errors = CheckAcl(candidate, lld);
      break;
    case IntentClass::kTN:
      errors = CheckTunnel(candidate, lld);
      break;
    case IntentClass::kOther:
      break;
  }
  return MakeReport(lld.intent_id, lld.intent_class(), std::move(errors), checked_at);
}

VerificationReport VerifyBundle(const NetworkModel& baseline, const ConfigBundle& bundle,
                                const LowLevelDescription& lld, WallTime checked_at) {
  std::vector<VerificationError> errors = CheckSyntax(bundle);
  if (errors.empty()) errors = CheckDevices(baseline, bundle);
  if (!errors.empty()) {
    return MakeReport(lld.intent_id, lld.intent_class(), std::move(errors), checked_at);
  }
  return Verify(baseline, ApplyCandidate(baseline, bundle), lld, checked_at);
}

std::vector<std::string> Suggest(const std::vector<VerificationError>& errors) {
  std::vector<std::string> out;
  out.reserve(errors.size());
  for (const VerificationError& e : errors) out.push_back(SuggestOne(e));
  return out;
}

}  // namespace netcfg
