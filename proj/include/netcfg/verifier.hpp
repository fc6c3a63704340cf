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

// Syntax and semantic checks for a generated configuration bundle.
//
// Verification runs on models, not text: the bundle is applied to the
// baseline and each intent class is checked structurally against the
// resulting candidate. Every finding carries a stable code from a closed
// catalog; those codes are what the refine prompt feeds back to the model.

#ifndef NETCFG_VERIFIER_HPP_
#define NETCFG_VERIFIER_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netcfg/clock.hpp"
#include "netcfg/config_model.hpp"
#include "netcfg/intent.hpp"

namespace netcfg {

enum class ErrorCode {
  kSyntax,
  kUnknownDevice,
  kIfStateMismatch,
  kAclSemantics,
  kOspfCoverage,
  kOspfAdjacency,
  kTunnelAsymmetry,
  kGoalUnmet,
};

inline constexpr std::array<ErrorCode, 8> kErrorCatalog = {
    ErrorCode::kSyntax,        ErrorCode::kUnknownDevice,  ErrorCode::kIfStateMismatch,
    ErrorCode::kAclSemantics,  ErrorCode::kOspfCoverage,   ErrorCode::kOspfAdjacency,
    ErrorCode::kTunnelAsymmetry, ErrorCode::kGoalUnmet};

// "SYNTAX", "UNKNOWN_DEVICE", "IF_STATE_MISMATCH", ...
std::string_view ToString(ErrorCode code);
std::optional<ErrorCode> ParseErrorCode(std::string_view text);

struct VerificationError {
  ErrorCode code = ErrorCode::kSyntax;
  std::string device;
  // Where on the device: "line 3, col 2", "interface GigabitEthernet0/1",
  // "access-list 101", "router ospf 1", a link, ...
  std::optional<std::string> location;
  std::string message;
  // The configuration line that would repair the finding, when one is known.
  // Suggestions are rendered from it; it is not part of the report JSON.
  std::string fix;

  friend bool operator==(const VerificationError&, const VerificationError&) = default;
};

struct VerificationReport {
  bool passed = false;
  std::string intent_id;
  IntentClass intent_class = IntentClass::kOther;
  std::vector<VerificationError> errors;
  std::vector<std::string> suggestions;
  WallTime checked_at;
};

// Builds a report whose `passed` and `suggestions` are derived from `errors`.
VerificationReport MakeReport(std::string intent_id, IntentClass intent_class,
                              std::vector<VerificationError> errors, WallTime checked_at);

// {passed, intent_id, class, errors:[{code, device, location?, message}],
//  suggestions, checked_at}; keys sorted.
std::string ReportToJson(const VerificationReport& report, int indent = -1);
// Throws ParseError on malformed input.
VerificationReport ReportFromJson(std::string_view json_text);

struct Packet {
  Protocol protocol = Protocol::kIp;
  Ipv4 src;
  Ipv4 dst;
  std::optional<std::uint16_t> dst_port;  // present iff tcp/udp

  std::string Describe() const;
};

enum class Verdict { kPermit, kDeny };
std::string_view ToString(Verdict verdict);

// First match wins; no match is an implicit deny.
Verdict SimulateAcl(std::span<const AclEntry> entries, const Packet& packet);

// Parser errors from every section, ordered by (device, line).
std::vector<VerificationError> CheckSyntax(const ConfigBundle& bundle);

// One UNKNOWN_DEVICE error per section naming a device outside the model.
std::vector<VerificationError> CheckDevices(const NetworkModel& model,
                                            const ConfigBundle& bundle);

std::vector<VerificationError> CheckInterface(const NetworkModel& candidate,
                                              const LowLevelDescription& lld);
std::vector<VerificationError> CheckAcl(const NetworkModel& candidate,
                                        const LowLevelDescription& lld);
std::vector<VerificationError> CheckOspf(const NetworkModel& candidate,
                                         const LowLevelDescription& lld);
std::vector<VerificationError> CheckTunnel(const NetworkModel& candidate,
                                           const LowLevelDescription& lld);

// Representative packets for an ACL intent: low/high sample of the source
// and destination sets, for each protocol the intent covers.
std::vector<Packet> RepresentativePackets(const AclParams& params);

// Class-specific goal check of `candidate` (the baseline with the bundle
// applied). The bundle is expected to be syntactically clean already.
VerificationReport Verify(const NetworkModel& baseline, const NetworkModel& candidate,
                          const LowLevelDescription& lld, WallTime checked_at);

// Full check of one generated bundle: syntax, device inventory, then the
// semantic checks on the applied candidate. Earlier stages short-circuit.
VerificationReport VerifyBundle(const NetworkModel& baseline, const ConfigBundle& bundle,
                                const LowLevelDescription& lld, WallTime checked_at);

// One deterministic suggestion per error.
std::vector<std::string> Suggest(const std::vector<VerificationError>& errors);

}  // namespace netcfg

#endif  // NETCFG_VERIFIER_HPP_
