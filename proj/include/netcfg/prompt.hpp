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

// Prompt construction for the four model calls of an orchestration cycle.
//
// Each prompt is three messages in a fixed order (system, assistant, user),
// rendered from text templates. The assistant message is a one-shot
// exemplar of the expected answer; the user message carries all runtime
// inputs under labelled sections such as "{Intent}:" and "{type}:".

#ifndef NETCFG_PROMPT_HPP_
#define NETCFG_PROMPT_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netcfg/config_model.hpp"
#include "netcfg/intent.hpp"
#include "netcfg/network_status.hpp"
#include "netcfg/verifier.hpp"

namespace netcfg {

enum class Role { kSystem, kAssistant, kUser };
enum class Purpose { kClassify, kTranslate, kGenerate, kRefine };

std::string_view ToString(Role role);
std::string_view ToString(Purpose purpose);

struct PromptMessage {
  Role role = Role::kUser;
  std::string content;
  friend bool operator==(const PromptMessage&, const PromptMessage&) = default;
};

struct PromptBundle {
  std::vector<PromptMessage> messages;
  Purpose purpose = Purpose::kClassify;
  // Bookkeeping that never goes over the wire: which intent the prompt is for
  // and the 1-based orchestration cycle it belongs to.
  std::string intent_id;
  int attempt = 1;

  // Content of the single message with that role. Throws ContractError when
  // the bundle does not have exactly one.
  const std::string& Content(Role role) const;

  friend bool operator==(const PromptBundle&, const PromptBundle&) = default;
};

// Human-readable dump used by golden files and `--verbose` output.
std::string Describe(const PromptBundle& bundle);

// Substitutes {name} placeholders from `values`. "{{" and "}}" render as
// literal braces. Throws ValidationError for an unknown placeholder or a lone
// brace.
std::string RenderTemplate(std::string_view tmpl,
                           const std::map<std::string, std::string, std::less<>>& values);

// Named template files, e.g. "classify_system.txt", "exemplars/lld_CP.json".
class TemplateSet {
 public:
  // The templates compiled into the library.
  static TemplateSet Builtin();
  // Builtin templates overridden by any same-named file under `dir`.
  static TemplateSet FromDirectory(const std::filesystem::path& dir);

  // Throws NotFound for a missing template.
  const std::string& Get(std::string_view name) const;
  const std::map<std::string, std::string, std::less<>>& files() const { return files_; }

 private:
  std::map<std::string, std::string, std::less<>> files_;
};

struct PromptOptions {
  // Serialized network status above this size is narrowed to the devices
  // named in the intent and their direct neighbours.
  std::size_t status_budget_bytes = 8 * 1024;
};

// Collapses every run of three or more '~' in runtime text to a single '~'
// so that the separator only ever appears where the templates put it.
std::string SanitizeRuntimeText(std::string_view text);

class PromptForge {
 public:
  explicit PromptForge(TemplateSet templates = TemplateSet::Builtin(),
                       PromptOptions options = {});

  // Throws ContractError when `classes` is empty or contains kOther.
  PromptBundle Classification(const Intent& intent,
                              std::span<const IntentClass> classes) const;
  // Throws ContractError for kOther.
  PromptBundle Translation(const Intent& intent, IntentClass intent_class,
                           const NetworkStatusSnapshot& status) const;
  PromptBundle Generation(const LowLevelDescription& lld,
                          const DeviceInventory& inventory) const;
  // Throws ContractError when `report` passed.
  PromptBundle Refinement(const ConfigBundle& previous, const VerificationReport& report,
                          const LowLevelDescription& lld) const;

  // The status to embed for `intent`, narrowed when over budget.
  NetworkStatusSnapshot StatusFor(const Intent& intent, const NetworkModel& model) const;

  const PromptOptions& options() const { return options_; }

 private:
  PromptBundle Build(Purpose purpose, std::string_view stem, std::string assistant,
                     const std::map<std::string, std::string, std::less<>>& values) const;

  TemplateSet templates_;
  PromptOptions options_;
};

// One-line definitions shown to the classifier.
std::string_view ClassDefinition(IntentClass c);

// "R1: Cisco ISR4321" per line.
std::string RenderInventory(const DeviceInventory& inventory);

// Previous answer as "[R1]" headed blocks (no separator).
std::string RenderPreviousConfig(const ConfigBundle& bundle);

}  // namespace netcfg

#endif  // NETCFG_PROMPT_HPP_
