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

// Pulls structured results out of raw model text.

#ifndef NETCFG_EXTRACTION_HPP_
#define NETCFG_EXTRACTION_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "netcfg/config_model.hpp"
#include "netcfg/intent.hpp"

namespace netcfg {

inline constexpr std::string_view kSectionSeparator = "~~~";

// Total: the first non-blank line, trimmed of whitespace and markdown
// emphasis, matched case-insensitively against CP/RP/ACL/TN. Anything else,
// including empty input, is kOther.
IntentClass ExtractClass(std::string_view raw);

// The first balanced {...} in `raw`, skipping braces inside JSON strings.
std::optional<std::string_view> FindFirstJsonObject(std::string_view raw);

// Throws ContractError for kOther, ExtractionError when no object is found and
// SchemaError when the object does not decode against the class schema.
LowLevelDescription ExtractLld(std::string_view raw, IntentClass intent_class);

// Splits on lines that are exactly "~~~" (surrounding whitespace allowed).
// The first non-blank line of each section names the device; the rest is the
// configuration. Markdown code fences are dropped and sections with no
// content at all are skipped. Throws MalformedSection for a header with no
// configuration lines and ExtractionError when no section remains.
ConfigBundle SplitConfigBundle(std::string_view raw);

// Inverse of SplitConfigBundle on canonical bundles.
std::string JoinConfigBundle(const ConfigBundle& bundle);

// Device name from a section header line: "R1", "R1:", "Device: R1", "## R1".
std::string ParseDeviceHeader(std::string_view line);

}  // namespace netcfg

#endif  // NETCFG_EXTRACTION_HPP_
