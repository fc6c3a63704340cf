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

#include "netcfg/network_status.hpp"

#include <variant>

#include "json.hpp"

namespace netcfg {
namespace {

using Json = nlohmann::json;

std::string MatchText(const AddressMatch& m) {
  if (m.IsAny()) return "any";
  if (m.IsHost()) return "host " + m.prefix.str();
  return m.prefix.str() + " " + m.wildcard.str();
}

std::string EntryText(const AclEntry& e) {
  std::string s = std::string(ToString(e.action)) + " ";
  if (e.dst) s += std::string(ToString(e.protocol)) + " ";
  s += MatchText(e.src);
  if (e.dst) s += " " + MatchText(*e.dst);
  if (e.dst_port) s += " eq " + std::to_string(*e.dst_port);
  return s;
}

Json DeviceJson(const NetworkModel& model, const DeviceConfigAst& dev) {
  Json interfaces = Json::array();
  Json acls = Json::array();
  Json ospf = Json::array();
  Json tunnels = Json::array();
  for (const Stanza& stanza : dev.stanzas) {
    if (const auto* i = std::get_if<InterfaceStanza>(&stanza)) {
      Json j = {{"name", i->name}, {"state", ToString(i->admin_state)}};
      if (i->ip_address) j["ip"] = i->ip_address->str();
      if (i->mask) j["mask"] = i->mask->str();
      if (i->description) j["description"] = *i->description;
      for (const AclBinding& b : i->acl_bindings) {
        j["acl_" + std::string(ToString(b.direction))] = b.acl_id;
      }
      interfaces.push_back(std::move(j));
    } else if (const auto* t = std::get_if<TunnelStanza>(&stanza)) {
      Json j = {{"name", t->tunnel_if}, {"mode", t->mode}, {"state", ToString(t->admin_state)}};
      if (t->source_if) j["source"] = *t->source_if;
      if (t->destination_ip) j["destination"] = t->destination_ip->str();
      if (t->tunnel_ip) j["ip"] = t->tunnel_ip->str();
      if (t->tunnel_mask) j["mask"] = t->tunnel_mask->str();
      tunnels.push_back(std::move(j));
    } else if (const auto* a = std::get_if<AclStanza>(&stanza)) {
      Json entries = Json::array();
      for (const AclEntry& e : a->entries) entries.push_back(EntryText(e));
      acls.push_back({{"id", a->acl_id}, {"entries", std::move(entries)}});
    } else if (const auto* o = std::get_if<OspfStanza>(&stanza)) {
      Json networks = Json::array();
      for (const OspfNetwork& n : o->networks) {
        networks.push_back(
            {{"prefix", n.prefix.str()}, {"wildcard", n.wildcard.str()}, {"area", n.area}});
      }
      ospf.push_back({{"process", o->process_id}, {"networks", std::move(networks)}});
    }
  }
  Json j = {{"name", dev.device}, {"interfaces", std::move(interfaces)}};
  if (auto it = model.platforms.find(dev.device); it != model.platforms.end()) {
    if (!it->second.brand.empty()) j["brand"] = it->second.brand;
    if (!it->second.model.empty()) j["model"] = it->second.model;
  }
  if (!acls.empty()) j["acls"] = std::move(acls);
  if (!ospf.empty()) j["ospf"] = std::move(ospf);
  if (!tunnels.empty()) j["tunnels"] = std::move(tunnels);
  return j;
}

NetworkStatusSnapshot Build(const NetworkModel& model, const std::set<std::string>* only) {
  const auto included = [&](const std::string& name) {
    return only == nullptr || only->count(name) > 0;
  };
  NetworkStatusSnapshot snapshot;
  Json devices = Json::array();
  for (const auto& [name, dev] : model.devices) {
    if (!included(name)) continue;
    snapshot.devices.push_back(name);
    devices.push_back(DeviceJson(model, dev));
  }
  Json links = Json::array();
  for (const Link& l : model.links) {
    if (!included(l.a.device) || !included(l.b.device)) continue;
    links.push_back({{"a", l.a.device + ":" + l.a.interface},
                     {"b", l.b.device + ":" + l.b.interface}});
  }
  Json hosts = Json::array();
  for (const Host& h : model.hosts) {
    if (!included(h.attachment.device)) continue;
    hosts.push_back({{"name", h.name},
                     {"device", h.attachment.device},
                     {"if", h.attachment.interface},
                     {"ip", h.ip.str()}});
  }
  const Json doc = {{"devices", std::move(devices)},
                    {"links", std::move(links)},
                    {"hosts", std::move(hosts)}};
  snapshot.json = doc.dump();
  return snapshot;
}

}  // namespace

NetworkStatusSnapshot NetworkStatus(const NetworkModel& model) {
  return Build(model, nullptr);
}

NetworkStatusSnapshot NetworkStatus(const NetworkModel& model,
                                    const std::set<std::string>& only) {
  return Build(model, &only);
}

}  // namespace netcfg
