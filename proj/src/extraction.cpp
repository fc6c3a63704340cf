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

#include "netcfg/extraction.hpp"

#include <vector>

#include "netcfg/errors.hpp"
#include "text_util.hpp"

namespace netcfg {
namespace {

std::string_view StripDecoration(std::string_view s) {
  constexpr std::string_view kDecoration = "*`'\"#.:_ \t";
  const auto begin = s.find_first_not_of(kDecoration);
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(kDecoration);
  return s.substr(begin, end - begin + 1);
}

bool IsFence(std::string_view line) { return text::Trim(line).substr(0, 3) == "```"; }

void FinishSection(std::string_view header, std::vector<std::string_view>& body,
                   ConfigBundle& bundle) {
  if (header.empty()) return;
  while (!body.empty() && text::Trim(body.back()).empty()) body.pop_back();
  const std::string device = ParseDeviceHeader(header);
  if (body.empty()) {
    throw MalformedSection("section '" + device + "' has no configuration lines");
  }
  std::string content;
  for (std::string_view line : body) {
    content += text::TrimRight(line);
    content += '\n';
  }
  bundle.sections.push_back({device, std::move(content)});
}

}  // namespace

IntentClass ExtractClass(std::string_view raw) {
  for (std::string_view line : text::SplitLines(raw)) {
    const std::string_view token = StripDecoration(text::Trim(line));
    if (token.empty()) continue;
    for (IntentClass c : kConfigurableClasses) {
      if (text::IEquals(token, ToString(c))) return c;
    }
    return IntentClass::kOther;
  }
  return IntentClass::kOther;
}

std::optional<std::string_view> FindFirstJsonObject(std::string_view raw) {
  for (std::size_t start = raw.find('{'); start != std::string_view::npos;
       start = raw.find('{', start + 1)) {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = start; i < raw.size(); ++i) {
      const char c = raw[i];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (c == '\\') {
          escaped = true;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}' && --depth == 0) {
        return raw.substr(start, i - start + 1);
      }
    }
  }
  return std::nullopt;
}

LowLevelDescription ExtractLld(std::string_view raw, IntentClass intent_class) {
  if (intent_class == IntentClass::kOther) {
    throw ContractError("ExtractLld: class Other has no low-level description");
  }
  const auto object = FindFirstJsonObject(raw);
  if (!object) throw ExtractionError("no JSON object found in the answer");
  return DecodeLld(*object, intent_class);
}

std::string ParseDeviceHeader(std::string_view line) {
  std::string_view s = StripDecoration(text::Trim(line));
  if (s.size() > 6 && text::IEquals(s.substr(0, 6), "device")) {
    const std::string_view rest = StripDecoration(s.substr(6));
    if (!rest.empty() && rest.size() < s.size() - 6) s = rest;
  }
  const auto words = text::SplitWhitespace(s);
  if (words.empty()) return {};
  return std::string(StripDecoration(words.front()));
}

ConfigBundle SplitConfigBundle(std::string_view raw) {
  ConfigBundle bundle;
  std::string_view header;
  std::vector<std::string_view> body;
  for (std::string_view line : text::SplitLines(raw)) {
    if (IsFence(line)) continue;
    if (text::Trim(line) == kSectionSeparator) {
      FinishSection(header, body, bundle);
      header = {};
      body.clear();
      continue;
    }
    if (header.empty()) {
      if (!text::Trim(line).empty()) header = line;
      continue;
    }
    if (body.empty() && text::Trim(line).empty()) continue;
    body.push_back(line);
  }
  FinishSection(header, body, bundle);
  if (bundle.empty()) throw ExtractionError("no device sections found in the answer");
  return bundle;
}

std::string JoinConfigBundle(const ConfigBundle& bundle) {
  std::string out;
  for (std::size_t i = 0; i < bundle.sections.size(); ++i) {
    if (i > 0) out += std::string(kSectionSeparator) + "\n";
    out += bundle.sections[i].device + "\n" + bundle.sections[i].text;
    if (!out.empty() && out.back() != '\n') out += '\n';
  }
  return out;
}

}  // namespace netcfg
