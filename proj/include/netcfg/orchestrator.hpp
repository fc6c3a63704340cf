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

// The closed loop run for each intent: classify, translate, then up to
// `threshold` generate/verify cycles with refinement, and storage of the
// approved result.

#ifndef NETCFG_ORCHESTRATOR_HPP_
#define NETCFG_ORCHESTRATOR_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netcfg/clock.hpp"
#include "netcfg/config_model.hpp"
#include "netcfg/configs_repo.hpp"
#include "netcfg/intent.hpp"
#include "netcfg/llm_backend.hpp"
#include "netcfg/prompt.hpp"
#include "netcfg/verifier.hpp"

namespace netcfg {

enum class RunStatus { kApproved, kRejectedOther, kExhausted, kBackendFailed };
std::string_view ToString(RunStatus status);

// Milliseconds spent per stage, summed over all cycles.
struct StageTimings {
  double classify_ms = 0;
  double translate_ms = 0;
  double generate_ms = 0;
  double verify_ms = 0;
  double total_ms = 0;
};

struct OrchestrationResult {
  std::string intent_id;
  RunStatus status = RunStatus::kBackendFailed;
  IntentClass intent_class = IntentClass::kOther;
  int cycles = 0;
  std::optional<ConfigBundle> final_bundle;
  // One report per cycle, in order.
  std::vector<VerificationReport> reports;
  StageTimings timings;
  // Number of backend requests made for this intent.
  int backend_calls = 0;
  std::optional<int> repo_version;
  // Reason for backend_failed.
  std::string failure;
};

// Stable machine-readable form used by the command line.
std::string ResultToJson(const OrchestrationResult& result, int indent = -1);
// "approved, class=CP, cycles=1" plus the repo version when stored.
std::string ResultSummary(const OrchestrationResult& result);

struct OrchestratorConfig {
  int threshold = 5;
  DecodingParams decoding;
  BackendDescriptor backend;

  // Throws ValidationError for threshold < 1.
  void Validate() const;
};

struct BatchMetrics {
  double accuracy = 0;
  double other_rate = 0;
  // expected class -> predicted class -> count.
  std::map<std::string, std::map<std::string, int>> confusion;
  // complexity -> cycle count -> intents.
  std::map<std::string, std::map<int, int>> cycles;
  std::map<std::string, int> statuses;
  // stage -> {p50, mean, max}.
  std::map<std::string, std::map<std::string, double>> timings_ms;
  int intents = 0;
};

struct BatchResult {
  // Sorted by intent id.
  std::vector<OrchestrationResult> results;
  BatchMetrics metrics;
};

// Metrics over `results`; accuracy counts only intents with a ground truth.
BatchMetrics ComputeMetrics(const std::vector<Intent>& dataset,
                            const std::vector<OrchestrationResult>& results);
// Sorted keys, two-space indent, trailing newline.
std::string MetricsToJson(const BatchMetrics& metrics);

class Orchestrator {
 public:
  // `repo` may be null, in which case nothing is persisted. The backend,
  // repo and clock must outlive the orchestrator.
  Orchestrator(Backend& backend, OrchestratorConfig config, const Clock& clock,
               ConfigsRepo* repo = nullptr, PromptForge forge = PromptForge());

  // Never throws for backend or extraction failures; they end up in the
  // result status.
  OrchestrationResult RunIntent(const Intent& intent, const NetworkModel& model) const;

  // Runs every intent against `model` on up to `workers` threads. Throws
  // ContractError for an empty dataset and ValidationError for duplicate ids.
  BatchResult RunBatch(const std::vector<Intent>& dataset, const NetworkModel& model,
                       int workers = 1) const;

  const OrchestratorConfig& config() const { return config_; }

 private:
  Backend& backend_;
  OrchestratorConfig config_;
  const Clock& clock_;
  ConfigsRepo* repo_;
  PromptForge forge_;
};

}  // namespace netcfg

#endif  // NETCFG_ORCHESTRATOR_HPP_
