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

// Text-generation backends: a chat-completion HTTP client and an offline
// rule-based stand-in with deterministic fault injection.

#ifndef NETCFG_LLM_BACKEND_HPP_
#define NETCFG_LLM_BACKEND_HPP_

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "netcfg/intent.hpp"
#include "netcfg/prompt.hpp"

namespace netcfg {

struct DecodingParams {
  double temperature = 0.0;
  int max_tokens = 1024;
  std::vector<std::string> stop_sequences;
};

enum class BackendKind { kHttp, kRules };
std::string_view ToString(BackendKind kind);
std::optional<BackendKind> ParseBackendKind(std::string_view text);

struct BackendDescriptor {
  BackendKind kind = BackendKind::kRules;
  std::optional<std::string> endpoint_url;
  std::optional<std::string> model_name;
  double timeout_s = 600.0;
  // Concurrent requests allowed against the endpoint.
  int max_in_flight = 1;
  // Transport retries after the first attempt, and the first backoff delay.
  int retries = 2;
  std::chrono::milliseconds initial_backoff{200};

  // Fills url/model/timeout from NETCFG_LLM_URL, NETCFG_LLM_MODEL and
  // NETCFG_LLM_TIMEOUT_S when set.
  static BackendDescriptor FromEnv(BackendKind kind);
  // Throws ValidationError unless endpoint_url is present iff kind is http
  // and the numeric fields are positive.
  void Validate() const;
};

class Backend {
 public:
  virtual ~Backend() = default;
  // Raw model text, never empty. Throws BackendTimeout, BackendUnavailable,
  // EmptyCompletion or RuleMiss.
  virtual std::string Complete(const PromptBundle& prompt, const DecodingParams& params) = 0;
};

// Chat-completion client over plain HTTP. Throws ValidationError for an
// invalid descriptor or an unsupported URL scheme.
std::unique_ptr<Backend> MakeHttpBackend(const BackendDescriptor& descriptor);

// The request body sent for `prompt`; exposed for wire-format tests.
std::string ChatCompletionRequest(const PromptBundle& prompt, const DecodingParams& params,
                                  const std::optional<std::string>& model_name);
// choices[0].message.content of a response body. Throws BackendUnavailable
// for a malformed body and EmptyCompletion for empty content.
std::string ChatCompletionContent(std::string_view body);

enum class FaultKind { kClass, kJson, kSyntax };
std::string_view ToString(FaultKind kind);

enum class FaultSchedule { kEveryCycle, kFirstCycleOnly };
std::string_view ToString(FaultSchedule schedule);
std::optional<FaultSchedule> ParseFaultSchedule(std::string_view text);

// Which prompts the rules backend answers wrongly. A fault fires for an
// intent when the intent is targeted explicitly, or else with the kind's
// probability through a seeded hash of the intent id.
struct FaultPlan {
  std::map<FaultKind, double> probability;
  std::map<FaultKind, std::set<std::string>> targets;
  FaultSchedule schedule = FaultSchedule::kEveryCycle;
  std::uint64_t seed = 0;

  // "kind:probability[,kind:probability]*", kinds class/json/syntax. A value
  // of the form "@id1+id2" targets intents by id instead. Throws
  // ValidationError on bad input.
  static FaultPlan Parse(std::string_view text_form);

  bool empty() const;
  // `attempt` is the 1-based orchestration cycle of the prompt.
  bool Fires(FaultKind kind, std::string_view intent_id, int attempt) const;

  // Replaces each probability with an exact target set for `intent_ids`:
  // round(p * n) ids chosen by a shuffle seeded from `seed` and the kind.
  FaultPlan ResolvedFor(const std::vector<std::string>& intent_ids) const;
};

struct RulesOptions {
  // Throw RuleMiss instead of answering "UNKNOWN" for unclassifiable text.
  bool strict = false;
  FaultPlan faults;
};

// Keyword classification used by the rules backend; nullopt when no keyword
// matches.
std::optional<IntentClass> ClassifyByRules(std::string_view intent_text);

std::unique_ptr<Backend> MakeRulesBackend(RulesOptions options = {});

// Rules backend for kRules, HTTP client for kHttp.
std::unique_ptr<Backend> MakeBackend(const BackendDescriptor& descriptor,
                                     RulesOptions rules = {});

// Labelled sections of a rendered user message ("{Intent}:" -> text).
std::map<std::string, std::string> ParseUserSections(std::string_view user_message);

// The configuration the rules backend generates for an LLD.
std::string RenderConfigForLld(const LowLevelDescription& lld);

}  // namespace netcfg

#endif  // NETCFG_LLM_BACKEND_HPP_
