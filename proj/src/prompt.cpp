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

#include "netcfg/prompt.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "netcfg/errors.hpp"
#include "text_util.hpp"

namespace netcfg {
namespace internal {
const std::map<std::string, std::string>& BuiltinTemplates();
}  // namespace internal

namespace {

using Values = std::map<std::string, std::string, std::less<>>;

bool IsNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

// Whole-word, case-insensitive occurrence of `word` in `text`.
bool MentionsWord(std::string_view text, std::string_view word) {
  const std::string haystack = text::ToLower(text);
  const std::string needle = text::ToLower(word);
  for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + 1)) {
    const bool left = pos == 0 || !IsNameChar(haystack[pos - 1]);
    const std::size_t end = pos + needle.size();
    const bool right = end == haystack.size() || !IsNameChar(haystack[end]);
    if (left && right) return true;
  }
  return false;
}

std::string Numbered(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += '\n';
    out += std::to_string(i + 1) + ". " + items[i];
  }
  return out;
}

std::string ErrorLine(const VerificationError& e) {
  std::string s = "[" + std::string(ToString(e.code)) + "]";
  if (!e.device.empty()) s += " " + e.device;
  if (e.location) s += " " + *e.location;
  return s + ": " + e.message;
}

std::string TrimTrailing(std::string s) {
  while (!s.empty() && text::IsSpace(s.back())) s.pop_back();
  return s;
}

}  // namespace

std::string_view ToString(Role role) {
  switch (role) {
    case Role::kSystem: return "system";
    case Role::kAssistant: return "assistant";
    case Role::kUser: return "user";
  }
  return "user";
}

std::string_view ToString(Purpose purpose) {
  switch (purpose) {
    case Purpose::kClassify: return "classify";
    case Purpose::kTranslate: return "translate";
    case Purpose::kGenerate: return "generate";
    case Purpose::kRefine: return "refine";
  }
  return "classify";
}

const std::string& PromptBundle::Content(Role role) const {
  const std::string* found = nullptr;
  for (const PromptMessage& m : messages) {
    if (m.role != role) continue;
    if (found != nullptr) {
      throw ContractError("prompt has more than one " + std::string(ToString(role)) +
                          " message");
    }
    found = &m.content;
  }
  if (found == nullptr) {
    throw ContractError("prompt has no " + std::string(ToString(role)) + " message");
  }
  return *found;
}

std::string Describe(const PromptBundle& bundle) {
  std::string out = "purpose: " + std::string(ToString(bundle.purpose)) + "\n";
  for (const PromptMessage& m : bundle.messages) {
    out += "--- " + std::string(ToString(m.role)) + " ---\n" + m.content + "\n";
  }
  return out;
}

std::string RenderTemplate(std::string_view tmpl, const Values& values) {
  std::string out;
  out.reserve(tmpl.size());
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    const char c = tmpl[i];
    if (c == '}') {
      if (i + 1 < tmpl.size() && tmpl[i + 1] == '}') {
        out += '}';
        ++i;
        continue;
      }
      throw ValidationError("template: lone '}' at offset " + std::to_string(i));
    }
    if (c != '{') {
      out += c;
      continue;
    }
    if (i + 1 < tmpl.size() && tmpl[i + 1] == '{') {
      out += '{';
      ++i;
      continue;
    }
    const std::size_t close = tmpl.find('}', i + 1);
    if (close == std::string_view::npos) {
      throw ValidationError("template: unterminated placeholder at offset " +
                            std::to_string(i));
    }
    const std::string_view name = tmpl.substr(i + 1, close - i - 1);
    const auto it = values.find(name);
    if (it == values.end()) {
      throw ValidationError("template: unknown placeholder {" + std::string(name) + "}");
    }
    out += it->second;
    i = close;
  }
  return out;
}

TemplateSet TemplateSet::Builtin() {
  TemplateSet set;
  for (const auto& [name, body] : internal::BuiltinTemplates()) set.files_.emplace(name, body);
  return set;
}

TemplateSet TemplateSet::FromDirectory(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw NotFound("template directory not found: " + dir.string());
  }
  TemplateSet set = Builtin();
  for (auto& [name, body] : set.files_) {
    const fs::path file = dir / name;
    if (!fs::is_regular_file(file)) continue;
    std::ifstream in(file, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (!in && !in.eof()) throw ParseError("cannot read template " + file.string());
    body = buffer.str();
  }
  return set;
}

const std::string& TemplateSet::Get(std::string_view name) const {
  const auto it = files_.find(name);
  if (it == files_.end()) throw NotFound("template not found: " + std::string(name));
  return it->second;
}

std::string SanitizeRuntimeText(std::string_view text) {
  std::string out(text);
  for (std::size_t pos = out.find("~~~"); pos != std::string::npos; pos = out.find("~~~")) {
    std::size_t end = pos;
    while (end < out.size() && out[end] == '~') ++end;
    out.replace(pos, end - pos, "~");
  }
  return out;
}

std::string_view ClassDefinition(IntentClass c) {
  switch (c) {
    case IntentClass::kCP:
      return "interface configuration properties such as addresses, administrative state "
             "(shutdown or no shutdown) and descriptions";
    case IntentClass::kRP:
      return "routing with OSPF: processes, areas and the networks a router advertises";
    case IntentClass::kACL:
      return "access control lists that permit or deny traffic and their binding to "
             "interfaces";
    case IntentClass::kTN:
      return "tunnels (GRE) between two devices, with their source, destination and "
             "tunnel addresses";
    case IntentClass::kOther:
      break;
  }
  return "none of the listed types";
}

std::string RenderInventory(const DeviceInventory& inventory) {
  std::vector<std::string> lines;
  for (const DeviceInfo& d : inventory) {
    std::string line = d.name + ":";
    if (!d.brand.empty()) line += " " + d.brand;
    if (!d.model.empty()) line += " " + d.model;
    if (d.brand.empty() && d.model.empty()) line += " unknown platform";
    lines.push_back(SanitizeRuntimeText(line));
  }
  return text::Join(lines, "\n");
}

std::string RenderPreviousConfig(const ConfigBundle& bundle) {
  std::vector<std::string> blocks;
  for (const DeviceSection& s : bundle.sections) {
    blocks.push_back("[" + s.device + "]\n" + TrimTrailing(SanitizeRuntimeText(s.text)));
  }
  return SanitizeRuntimeText(text::Join(blocks, "\n\n"));
}

PromptForge::PromptForge(TemplateSet templates, PromptOptions options)
    : templates_(std::move(templates)), options_(options) {}

PromptBundle PromptForge::Build(Purpose purpose, std::string_view stem, std::string assistant,
                                const Values& values) const {
  const std::string prefix(stem);
  PromptBundle bundle;
  bundle.purpose = purpose;
  bundle.messages = {
      {Role::kSystem, TrimTrailing(RenderTemplate(templates_.Get(prefix + "_system.txt"), values))},
      {Role::kAssistant, TrimTrailing(std::move(assistant))},
      {Role::kUser, TrimTrailing(RenderTemplate(templates_.Get(prefix + "_user.txt"), values))},
  };
  return bundle;
}

PromptBundle PromptForge::Classification(const Intent& intent,
                                         std::span<const IntentClass> classes) const {
  if (classes.empty()) throw ContractError("classification prompt needs at least one class");
  std::vector<std::string> lines;
  for (IntentClass c : classes) {
    if (c == IntentClass::kOther) {
      throw ContractError("Other is not a classification target");
    }
    lines.push_back(std::string(ToString(c)) + ": " + std::string(ClassDefinition(c)));
  }
  const Values values = {{"Intent", SanitizeRuntimeText(intent.text)},
                         {"classes", text::Join(lines, "\n")}};
  PromptBundle bundle =
      Build(Purpose::kClassify, "classify",
            RenderTemplate(templates_.Get("classify_assistant.txt"), values), values);
  bundle.intent_id = intent.id;
  return bundle;
}

PromptBundle PromptForge::Translation(const Intent& intent, IntentClass intent_class,
                                      const NetworkStatusSnapshot& status) const {
  if (intent_class == IntentClass::kOther) {
    throw ContractError("Other intents are never translated");
  }
  const std::string cls(ToString(intent_class));
  const Values values = {
      {"Intent", SanitizeRuntimeText(intent.text)},
      {"type", cls},
      {"network_status", SanitizeRuntimeText(status.json)},
      {"exemplar", templates_.Get("exemplars/lld_" + cls + ".json")},
  };
  PromptBundle bundle =
      Build(Purpose::kTranslate, "translate",
            RenderTemplate(templates_.Get("translate_assistant.txt"), values), values);
  bundle.intent_id = intent.id;
  return bundle;
}

PromptBundle PromptForge::Generation(const LowLevelDescription& lld,
                                     const DeviceInventory& inventory) const {
  const std::string cls(ToString(lld.intent_class()));
  const Values values = {
      {"low_level_description", SanitizeRuntimeText(EncodeLld(lld))},
      {"device_inventory", RenderInventory(inventory)},
      {"exemplar", templates_.Get("exemplars/config_" + cls + ".txt")},
  };
  PromptBundle bundle =
      Build(Purpose::kGenerate, "generate",
            RenderTemplate(templates_.Get("generate_assistant.txt"), values), values);
  bundle.intent_id = lld.intent_id;
  return bundle;
}

PromptBundle PromptForge::Refinement(const ConfigBundle& previous,
                                     const VerificationReport& report,
                                     const LowLevelDescription& lld) const {
  if (report.passed) throw ContractError("refinement needs a failing report");
  std::vector<std::string> errors;
  for (const VerificationError& e : report.errors) {
    errors.push_back(SanitizeRuntimeText(ErrorLine(e)));
  }
  std::vector<std::string> suggestions;
  for (const std::string& s : report.suggestions) {
    suggestions.push_back(SanitizeRuntimeText(s));
  }
  const std::string cls(ToString(lld.intent_class()));
  const Values values = {
      {"low_level_description", SanitizeRuntimeText(EncodeLld(lld))},
      {"previous_configuration", RenderPreviousConfig(previous)},
      {"errors", Numbered(errors)},
      {"suggestions", Numbered(suggestions)},
      {"exemplar", templates_.Get("exemplars/config_" + cls + ".txt")},
  };
  PromptBundle bundle =
      Build(Purpose::kRefine, "refine",
            RenderTemplate(templates_.Get("generate_assistant.txt"), values), values);
  bundle.intent_id = lld.intent_id;
  return bundle;
}

NetworkStatusSnapshot PromptForge::StatusFor(const Intent& intent,
                                             const NetworkModel& model) const {
  NetworkStatusSnapshot full = NetworkStatus(model);
  if (full.json.size() <= options_.status_budget_bytes) return full;
  std::set<std::string> keep;
  for (const auto& [name, dev] : model.devices) {
    if (MentionsWord(intent.text, name)) keep.insert(name);
  }
  if (keep.empty()) return full;
  const std::set<std::string> named = keep;
  for (const std::string& name : named) {
    for (const std::string& n : model.Neighbors(name)) keep.insert(n);
  }
  return NetworkStatus(model, keep);
}

}  // namespace netcfg
