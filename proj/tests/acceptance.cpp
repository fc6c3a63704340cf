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

// Acceptance run: one PASS, FAIL or SKIP line per criterion. Exits nonzero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "acl_naive.hpp"
#include "netcfg/clock.hpp"
#include "netcfg/config_model.hpp"
#include "netcfg/configs_repo.hpp"
#include "netcfg/extraction.hpp"
#include "netcfg/intent.hpp"
#include "netcfg/llm_backend.hpp"
#include "netcfg/orchestrator.hpp"
#include "netcfg/verifier.hpp"
#include "semantic_catalog.hpp"
#include "test_support.hpp"

namespace netcfg {
namespace {

namespace fs = std::filesystem;
using testing::Baseline;
using testing::TempDir;

enum class CriterionState { kPass, kFail, kSkip };

struct Outcome {
  CriterionState verdict = CriterionState::kPass;
  std::vector<std::string> notes;

  // Records a failure with `what` unless `ok`.
  void Check(bool ok, const std::string& what) {
    if (!ok) {
      verdict = CriterionState::kFail;
      notes.push_back(what);
    }
  }
  void Note(const std::string& what) { notes.push_back(what); }
};

double SecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string Fixed(double value, int digits = 3) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << value;
  return out.str();
}

const std::vector<Intent>& Dataset() {
  static const std::vector<Intent> dataset = LoadDataset(testing::DatasetPath());
  return dataset;
}

std::vector<std::string> DatasetIds() {
  std::vector<std::string> ids;
  for (const Intent& intent : Dataset()) ids.push_back(intent.id);
  return ids;
}

// Relative path -> file contents for every regular file under `root`.
std::map<std::string, std::string> TreeContents(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      out[fs::relative(e.path(), root).generic_string()] = testing::ReadFile(e.path());
    }
  }
  return out;
}

BatchResult RunRules(const FaultPlan& faults, ConfigsRepo* repo, int workers = 4) {
  RulesOptions options;
  options.faults = faults.ResolvedFor(DatasetIds());
  auto rules = MakeRulesBackend(options);
  const FrozenClock clock;
  OrchestratorConfig config;
  config.threshold = 5;
  return Orchestrator(*rules, config, clock, repo).RunBatch(Dataset(), Baseline(), workers);
}

Outcome DeterministicEndToEnd() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  TempDir first_dir;
  TempDir second_dir;
  ConfigsRepo first_repo(first_dir.path());
  ConfigsRepo second_repo(second_dir.path());
  const BatchResult first = RunRules(FaultPlan{}, &first_repo);
  const BatchResult second = RunRules(FaultPlan{}, &second_repo);
  const double seconds = SecondsSince(start);

  std::map<IntentClass, int> per_class;
  for (const Intent& intent : Dataset()) {
    if (intent.expected_class) ++per_class[*intent.expected_class];
  }
  out.Check(Dataset().size() == 40, "dataset has " + std::to_string(Dataset().size()) +
                                         " intents");
  for (IntentClass cls : kConfigurableClasses) {
    out.Check(per_class[cls] == 10, std::string(ToString(cls)) + " has " +
                                        std::to_string(per_class[cls]) + " intents");
  }
  out.Check(first.metrics.accuracy == 1.0, "accuracy " + Fixed(first.metrics.accuracy));
  out.Check(first.metrics.other_rate == 0.0, "other rate " + Fixed(first.metrics.other_rate));
  for (const OrchestrationResult& r : first.results) {
    out.Check(r.status == RunStatus::kApproved && r.cycles == 1,
              r.intent_id + ": " + ResultSummary(r));
  }
  out.Check(MetricsToJson(first.metrics) == MetricsToJson(second.metrics),
            "metrics differ between runs");
  const auto first_tree = TreeContents(first_dir.path());
  const auto second_tree = TreeContents(second_dir.path());
  out.Check(!first_tree.empty(), "repo is empty");
  out.Check(first_tree == second_tree, "repo contents differ between runs");
  out.Check(seconds < 10.0, "took " + Fixed(seconds, 2) + " s");
  out.Note("accuracy=" + Fixed(first.metrics.accuracy) +
           " other=" + Fixed(first.metrics.other_rate) + " files=" +
           std::to_string(first_tree.size()) + " time=" + Fixed(seconds, 2) + "s");
  return out;
}

Outcome HallucinationSink() {
  Outcome out;
  FaultPlan plan = FaultPlan::Parse("class:0.1");
  plan.seed = 7;
  const FaultPlan resolved = plan.ResolvedFor(DatasetIds());
  const std::set<std::string> targets = resolved.targets.count(FaultKind::kClass)
                                            ? resolved.targets.at(FaultKind::kClass)
                                            : std::set<std::string>{};
  const auto expected_count =
      static_cast<std::size_t>(std::llround(0.1 * static_cast<double>(Dataset().size())));
  out.Check(targets.size() == expected_count,
            "seeded targets " + std::to_string(targets.size()));

  const BatchResult batch = RunRules(plan, nullptr);
  std::set<std::string> rejected;
  for (const OrchestrationResult& r : batch.results) {
    if (r.status == RunStatus::kRejectedOther) {
      rejected.insert(r.intent_id);
      out.Check(r.cycles == 0 && r.intent_class == IntentClass::kOther,
                r.intent_id + ": " + ResultSummary(r));
    } else {
      out.Check(r.status == RunStatus::kApproved, r.intent_id + ": " + ResultSummary(r));
    }
  }
  out.Check(rejected == targets, "rejected set differs from the seeded targets");
  out.Check(batch.metrics.other_rate == 0.1, "other rate " + Fixed(batch.metrics.other_rate));

  const BatchResult scripted = RunRules(FaultPlan::Parse("class:@acl-07"), nullptr);
  for (const OrchestrationResult& r : scripted.results) {
    if (r.intent_id != "acl-07") continue;
    out.Check(r.status == RunStatus::kRejectedOther && r.cycles == 0,
              "acl-07: " + ResultSummary(r));
  }
  std::string seeded;
  for (const std::string& id : rejected) seeded += (seeded.empty() ? "" : ",") + id;
  out.Note("rejected_other=" + std::to_string(rejected.size()) + " [" + seeded +
           "] other=" + Fixed(batch.metrics.other_rate));
  return out;
}

Outcome RefineLoopConvergence() {
  Outcome out;
  FaultPlan once = FaultPlan::Parse("syntax:1.0");
  once.schedule = FaultSchedule::kFirstCycleOnly;
  TempDir dir;
  ConfigsRepo repo(dir.path());
  const BatchResult converged = RunRules(once, &repo);
  for (const OrchestrationResult& r : converged.results) {
    out.Check(r.status == RunStatus::kApproved && r.cycles == 2,
              r.intent_id + ": " + ResultSummary(r));
    const std::vector<AuditRecord> trail = repo.AuditTrail(r.intent_id);
    bool shape = trail.size() == 2 && !trail[0].report.passed && trail[1].report.passed;
    if (shape) {
      for (const VerificationError& e : trail[0].report.errors) {
        shape = shape && e.code == ErrorCode::kSyntax;
      }
      shape = shape && !trail[0].report.errors.empty();
    }
    out.Check(shape, r.intent_id + ": audit trail is not [fail SYNTAX, pass]");
  }

  const BatchResult exhausted = RunRules(FaultPlan::Parse("syntax:1.0"), nullptr);
  for (const OrchestrationResult& r : exhausted.results) {
    out.Check(r.status == RunStatus::kExhausted && r.cycles == 5 && r.reports.size() == 5,
              r.intent_id + ": " + ResultSummary(r));
  }
  out.Note("first-cycle-only approved at 2 cycles: " +
           std::to_string(converged.metrics.statuses.count("approved")
                              ? converged.metrics.statuses.at("approved")
                              : 0) +
           "/" + std::to_string(converged.results.size()) + ", every-cycle exhausted: " +
           std::to_string(exhausted.metrics.statuses.count("exhausted")
                              ? exhausted.metrics.statuses.at("exhausted")
                              : 0));
  return out;
}

Outcome AclOracleEquivalence() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  long cases = 0;
  long mismatches = 0;
  int lists = 0;
  const auto fixtures = testing::ConfigFixtures("acl_");
  for (const auto& path : fixtures) {
    const std::string text = testing::ReadFile(path);
    const ParseResult parsed = ParseConfig(testing::FixtureDevice(text), text);
    out.Check(!parsed.HasErrors(), path.filename().string() + " does not parse");
    for (const auto& [id, entries] : testing::NaiveAcls(text)) {
      const AclStanza* acl = parsed.ast.FindAcl(id);
      if (acl == nullptr) {
        out.Check(false, path.filename().string() + ": access-list " + id + " missing");
        continue;
      }
      ++lists;
      for (Protocol protocol : testing::kProtocols) {
        const bool ported = protocol == Protocol::kTcp || protocol == Protocol::kUdp;
        for (const char* src : testing::kAddresses) {
          for (const char* dst : testing::kAddresses) {
            for (std::uint16_t port : testing::kPorts) {
              Packet packet;
              packet.protocol = protocol;
              packet.src = *Ipv4::Parse(src);
              packet.dst = *Ipv4::Parse(dst);
              if (ported) packet.dst_port = port;
              const bool expected =
                  testing::NaivePermits(entries, testing::ProtocolName(protocol),
                                        *testing::Quad(src), *testing::Quad(dst),
                                        ported ? port : -1);
              ++cases;
              if ((SimulateAcl(acl->entries, packet) == Verdict::kPermit) != expected) {
                if (mismatches++ == 0) {
                  out.Note("first mismatch: " + path.filename().string() + " acl " + id +
                           " " + packet.Describe());
                }
              }
            }
          }
        }
      }
    }
  }
  const double seconds = SecondsSince(start);
  out.Check(mismatches == 0, std::to_string(mismatches) + " mismatches");
  out.Check(cases >= 50000, "only " + std::to_string(cases) + " cases");
  out.Check(seconds < 5.0, "took " + Fixed(seconds, 2) + " s");
  out.Note("cases=" + std::to_string(cases) + " lists=" + std::to_string(lists) + " fixtures=" +
           std::to_string(fixtures.size()) + " time=" + Fixed(seconds, 2) + "s");
  return out;
}

Outcome ParserRoundTrip() {
  Outcome out;
  const auto all = testing::ConfigFixtures();
  out.Check(all.size() >= 30, "only " + std::to_string(all.size()) + " fixtures");
  for (const char* family : {"if_", "acl_", "ospf_", "tunnel_", "bad_"}) {
    out.Check(!testing::ConfigFixtures(family).empty(), std::string("no ") + family + " fixtures");
  }
  int malformed = 0;
  for (const auto& path : all) {
    const std::string name = path.filename().string();
    const std::string text = testing::ReadFile(path);
    const std::string device = testing::FixtureDevice(text);
    const ParseResult first = ParseConfig(device, text);
    const std::string canonical = CanonicalText(first.ast);
    const ParseResult second = ParseConfig(device, canonical);
    out.Check(second.issues.empty() && second.ast == Normalized(first.ast) &&
                  CanonicalText(second.ast) == canonical,
              name + ": round trip differs");
    std::vector<std::string> actual;
    for (const SyntaxIssue& issue : first.issues) actual.push_back(testing::FormatIssue(issue));
    out.Check(actual == testing::ExpectedIssues(path), name + ": issues differ");
    const bool bad = name.rfind("bad_", 0) == 0;
    malformed += bad ? 1 : 0;
    out.Check(first.HasErrors() == bad, name + ": error state is wrong");
  }
  out.Note("fixtures=" + std::to_string(all.size()) + " malformed=" + std::to_string(malformed));
  return out;
}

Outcome SemanticCatalog() {
  Outcome out;
  const auto catalog = testing::Catalog();
  out.Check(catalog.size() >= 20, "only " + std::to_string(catalog.size()) + " cases");
  std::map<IntentClass, std::pair<int, int>> counts;
  std::set<ErrorCode> seen;
  for (const testing::CatalogCase& c : catalog) {
    auto& [pass, fail] = counts[c.lld.intent_class()];
    (c.expected.empty() ? pass : fail)++;
    const VerificationReport report =
        VerifyBundle(Baseline(), SplitConfigBundle(c.bundle), c.lld, WallTime{});
    std::vector<ErrorCode> codes;
    for (const VerificationError& e : report.errors) codes.push_back(e.code);
    out.Check(codes == c.expected && report.passed == c.expected.empty(),
              c.name + ": " + ReportToJson(report));
    if (codes == c.expected) seen.insert(codes.begin(), codes.end());
  }
  for (IntentClass cls : kConfigurableClasses) {
    out.Check(counts[cls].first >= 3 && counts[cls].second >= 2,
              std::string(ToString(cls)) + " needs 3 passing and 2 failing cases");
  }
  out.Check(seen.count(ErrorCode::kOspfAdjacency) == 1, "no OSPF_ADJACENCY case");
  out.Check(seen.count(ErrorCode::kTunnelAsymmetry) == 1, "no TUNNEL_ASYMMETRY case");
  out.Note("cases=" + std::to_string(catalog.size()));
  return out;
}

Outcome LiveBackendSmoke() {
  Outcome out;
  if (std::getenv("NETCFG_LLM_URL") == nullptr) {
    out.verdict = CriterionState::kSkip;
    out.Note("NETCFG_LLM_URL is not set");
    return out;
  }
  const Intent* intent = nullptr;
  for (const Intent& candidate : Dataset()) {
    if (candidate.expected_class == IntentClass::kCP &&
        candidate.complexity == Complexity::kSimple) {
      intent = &candidate;
      break;
    }
  }
  out.Check(intent != nullptr, "no simple CP intent in the dataset");
  if (intent == nullptr) return out;
  OrchestratorConfig config;
  config.backend = BackendDescriptor::FromEnv(BackendKind::kHttp);
  config.Validate();
  auto backend = MakeHttpBackend(config.backend);
  const SystemClock clock;
  TempDir dir;
  ConfigsRepo repo(dir.path());
  const OrchestrationResult r =
      Orchestrator(*backend, config, clock, &repo).RunIntent(*intent, Baseline());
  out.Check(r.status == RunStatus::kApproved || r.status == RunStatus::kExhausted ||
                r.status == RunStatus::kRejectedOther,
            intent->id + ": " + ResultSummary(r) + " " + r.failure);
  out.Check(r.cycles <= config.threshold, "cycles above threshold");
  out.Note(intent->id + ": " + ResultSummary(r));
  return out;
}

}  // namespace
}  // namespace netcfg

int main() {
  using netcfg::Outcome;
  struct Criterion {
    int number;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "deterministic end-to-end", netcfg::DeterministicEndToEnd},
      {2, "hallucination sink", netcfg::HallucinationSink},
      {3, "refine-loop convergence", netcfg::RefineLoopConvergence},
      {4, "ACL oracle equivalence", netcfg::AclOracleEquivalence},
      {5, "parser round trip", netcfg::ParserRoundTrip},
      {6, "semantic check catalog", netcfg::SemanticCatalog},
      {7, "live-backend smoke", netcfg::LiveBackendSmoke},
  };
  bool failed = false;
  for (const Criterion& c : criteria) {
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.Check(false, std::string("exception: ") + e.what());
    }
    const char* label = outcome.verdict == netcfg::CriterionState::kPass   ? "PASS"
                        : outcome.verdict == netcfg::CriterionState::kSkip ? "SKIP"
                                                                           : "FAIL";
    failed = failed || outcome.verdict == netcfg::CriterionState::kFail;
    std::cout << label << " " << c.number << " " << c.name;
    const std::size_t shown = std::min<std::size_t>(outcome.notes.size(), 5);
    for (std::size_t i = 0; i < shown; ++i) {
      std::cout << (i == 0 ? ": " : "; ") << outcome.notes[i];
    }
    if (outcome.notes.size() > shown) std::cout << "; ...";
    std::cout << "\n";
  }
  return failed ? 1 : 0;
}
