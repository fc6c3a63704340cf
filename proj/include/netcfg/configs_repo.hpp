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

// Versioned on-disk store of approved configurations plus the audit trail of
// every orchestration run.
//
// Layout under the root, with <id> the percent-encoded intent id:
//
//   <id>/v<N>/<device>.cfg          approved section text
//   <id>/v<N>/running/<device>.cfg  full resulting device configuration
//   <id>/v<N>/report.json
//   <id>/v<N>/meta.json             {intent_id, version, created_at, status, devices}
//   <id>/audit/run-<R>/cycle-<K>/bundle.txt + report.json
//
// Every directory is built under a temporary name and renamed into place.

#ifndef NETCFG_CONFIGS_REPO_HPP_
#define NETCFG_CONFIGS_REPO_HPP_

#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "netcfg/clock.hpp"
#include "netcfg/config_model.hpp"
#include "netcfg/verifier.hpp"

namespace netcfg {

struct RepoEntry {
  std::string intent_id;
  int version = 0;  // assigned by StoreApproved
  ConfigBundle bundle;
  VerificationReport report;
  WallTime created_at;
};

struct AuditRecord {
  ConfigBundle bundle;
  VerificationReport report;
};

// Strips trailing whitespace, drops blank lines and normalizes line endings
// of every section; the form in which bundles are stored.
ConfigBundle NormalizeBundle(const ConfigBundle& bundle);

// Keeps [A-Za-z0-9_-]; every other byte becomes %XX.
std::string EncodeIntentId(std::string_view id);
std::string DecodeIntentId(std::string_view encoded);

class ConfigsRepo {
 public:
  explicit ConfigsRepo(std::filesystem::path root);

  // Writes the next version for entry.intent_id and returns it. When
  // `candidate` is given, the full configuration of every touched device is
  // stored alongside. Throws ContractError when the report failed or a
  // section does not re-parse cleanly, StorageError on I/O failure.
  int StoreApproved(const RepoEntry& entry, const NetworkModel* candidate = nullptr);

  // Throws NotFound.
  RepoEntry Get(std::string_view intent_id, int version) const;
  RepoEntry Latest(std::string_view intent_id) const;
  std::vector<int> Versions(std::string_view intent_id) const;
  // Stored full device configuration for one version, keyed by device.
  std::map<std::string, std::string> Running(std::string_view intent_id, int version) const;

  // Records one orchestration run (possibly with zero cycles) and returns its
  // run number.
  int RecordRun(std::string_view intent_id, const std::vector<AuditRecord>& cycles);
  // Cycles of the most recent run, in order. Throws NotFound for an intent
  // that never ran.
  std::vector<AuditRecord> AuditTrail(std::string_view intent_id) const;

  // Decoded ids of every intent with a directory in the repo, sorted.
  std::vector<std::string> Intents() const;

  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path IntentDir(std::string_view intent_id) const;

  std::filesystem::path root_;
  std::mutex write_mutex_;
};

}  // namespace netcfg

#endif  // NETCFG_CONFIGS_REPO_HPP_
