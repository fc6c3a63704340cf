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


#ifndef NETCFG_NETWORK_STATUS_HPP_
#define NETCFG_NETWORK_STATUS_HPP_

#include <set>
#include <string>
#include <vector>

#include "netcfg/config_model.hpp"

namespace netcfg {

// Compact JSON view of a NetworkModel, the form embedded in translation
// prompts. Keys are sorted and arrays follow model order, so equal models
// give byte-equal snapshots.
struct NetworkStatusSnapshot {
  std::string json;
  std::vector<std::string> devices;  // names included, sorted
};

NetworkStatusSnapshot NetworkStatus(const NetworkModel& model);

// Same shape restricted to `only`; links and hosts are kept when every device
// they touch is included.
NetworkStatusSnapshot NetworkStatus(const NetworkModel& model,
                                    const std::set<std::string>& only);

}  // namespace netcfg

#endif  // NETCFG_NETWORK_STATUS_HPP_
