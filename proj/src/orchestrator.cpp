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

#include "netcfg/orchestrator.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>
#include <thread>

#include "json.hpp"
#include "netcfg/errors.hpp"
#include "netcfg/extraction.hpp"
#include "text_util.hpp"

namespace netcfg {
namespace {

using Json = nlohmann::json;

constexpr std::string_view kLldLocation = "low-level description";
constexpr std::string_view kAnswerLocation = "answer format";
constexpr std::string_view kUnparsedDevice = "unparsed";

double MillisSince(const Clock& clock, MonoTime start) {
  return std::chrono::duration<double, std::milli>(clock.Monotonic() - start).count();
}

VerificationError LldError(ErrorCode code, std::string device, std::string location,
                           std::string message) {
  VerificationError e;
  e.code = code;
  e.device = std::move(device);
  e.location = std::move(location);
  e.message = std::move(message);
  return e;
}

std::vector<VerificationError> IssuesToErrors(const std::vector<ValidationIssue>& issues) {
  constexpr std::string_view kUnknownDevice = "unknown device ";
  std::vector<VerificationError> out;
  for (const ValidationIssue& issue : issues) {
    if (issue.message.rfind(kUnknownDevice, 0) == 0) {
      out.push_back(LldError(ErrorCode::kUnknownDevice, issue.message.substr(kUnknownDevice.size()),
                             issue.field, issue.message));
    } else {
      out.push_back(LldError(ErrorCode::kSyntax, "", std::string(kLldLocation) + " " + issue.field,
                             issue.message));
    }
  }
  return out;
}

// The raw answer kept as one pseudo-section so that the audit trail and the
// refine prompt still show what the model said.
ConfigBundle UnparsedBundle(std::string_view raw) {
  std::string text;
  for (std::string_view line : text::SplitLines(raw)) {
    if (text::Trim(line) == kSectionSeparator) continue;
    text += line;
    text += '\n';
  }
  ConfigBundle bundle;
  if (!text::Trim(text).empty()) bundle.sections.push_back({std::string(kUnparsedDevice), text});
  return bundle;
}

Json TimingsJson(const StageTimings& t) {
  return {{"classify", t.classify_ms},
          {"translate", t.translate_ms},
          {"generate", t.generate_ms},
          {"verify", t.verify_ms},
          {"total", t.total_ms}};
}

}  // namespace

std::string_view ToString(RunStatus status) {
  switch (status) {
    case RunStatus::kApproved:
      return "approved";
    case RunStatus::kRejectedOther:
      return "rejected_other";
    case RunStatus::kExhausted:
      return "exhausted";
    case RunStatus::kBackendFailed:
      return "backend_failed";
  }
  return "backend_failed";
}

void OrchestratorConfig::Validate() const {
  if (threshold < 1) throw ValidationError("threshold must be at least 1");
  if (decoding.max_tokens < 1) throw ValidationError("max_tokens must be positive");
}

std::string ResultToJson(const OrchestrationResult& result, int indent) {
  Json reports = Json::array();
  for (const VerificationReport& r : result.reports) reports.push_back(Json::parse(ReportToJson(r)));
  Json j = {{"schema_version", 1},
            {"intent_id", result.intent_id},
            {"status", ToString(result.status)},
            {"class", ToString(result.intent_class)},
            {"cycles", result.cycles},
            {"backend_calls", result.backend_calls},
            {"reports", std::move(reports)},
            {"timings_ms", TimingsJson(result.timings)}};
  j["final_bundle"] = result.final_bundle ? Json(JoinConfigBundle(*result.final_bundle)) : Json();
  j["repo_version"] = result.repo_version ? Json(*result.repo_version) : Json();
  if (!result.failure.empty()) j["failure"] = result.failure;
  return j.dump(indent);
}

std::string ResultSummary(const OrchestrationResult& result) {
  std::string out = std::string(ToString(result.status)) +
                    ", class=" + std::string(ToString(result.intent_class)) +
                    ", cycles=" + std::to_string(result.cycles);
  if (result.repo_version) out += ", version=" + std::to_string(*result.repo_version);
  if (!result.failure.empty()) out += ", error=" + result.failure;
  return out;
}

Orchestrator::Orchestrator(Backend& backend, OrchestratorConfig config, const Clock& clock,
                           ConfigsRepo* repo, PromptForge forge)
    : backend_(backend),
      config_(std::move(config)),
      clock_(clock),
      repo_(repo),
      forge_(std::move(forge)) {
  config_.Validate();
}

OrchestrationResult Orchestrator::RunIntent(const Intent& intent,
                                            const NetworkModel& model) const {
  OrchestrationResult result;
  result.intent_id = intent.id;
  std::vector<AuditRecord> audit;
  const MonoTime started = clock_.Monotonic();

  auto call = [&](PromptBundle prompt, int attempt, double& stage_ms) {
    prompt.intent_id = intent.id;
    prompt.attempt = attempt;
    ++result.backend_calls;
    const MonoTime t = clock_.Monotonic();
    struct Charge {
      const Clock& clock;
      MonoTime t;
      double& ms;
      ~Charge() { ms += MillisSince(clock, t); }
    } charge{clock_, t, stage_ms};
    return backend_.Complete(prompt, config_.decoding);
  };
  auto finish = [&]() -> OrchestrationResult {
    result.timings.total_ms = MillisSince(clock_, started);
    if (repo_ != nullptr) repo_->RecordRun(intent.id, audit);
    return std::move(result);
  };

  try {
    // Classification.
    const std::string class_answer =
        call(forge_.Classification(intent, kConfigurableClasses), 1, result.timings.classify_ms);
    result.intent_class = ExtractClass(class_answer);
    if (result.intent_class == IntentClass::kOther) {
      result.status = RunStatus::kRejectedOther;
      return finish();
    }
    const IntentClass cls = result.intent_class;

    // Translation; failures are reported in the next cycle and retried.
    const NetworkStatusSnapshot status = forge_.StatusFor(intent, model);
    std::optional<LowLevelDescription> lld;
    std::vector<VerificationError> lld_errors;
    auto translate = [&](int attempt) {
      lld.reset();
      lld_errors.clear();
      try {
        const std::string raw =
            call(forge_.Translation(intent, cls, status), attempt, result.timings.translate_ms);
        LowLevelDescription decoded = ExtractLld(raw, cls);
        decoded.intent_id = intent.id;
        lld_errors = IssuesToErrors(ValidateLld(decoded, model));
        if (lld_errors.empty()) lld = std::move(decoded);
      } catch (const EmptyCompletion& e) {
        lld_errors = {LldError(ErrorCode::kSyntax, "", std::string(kLldLocation), e.what())};
      } catch (const ExtractionError& e) {
        lld_errors = {LldError(ErrorCode::kSyntax, "", std::string(kLldLocation), e.what())};
      }
    };
    translate(1);

    std::optional<ConfigBundle> previous;
    VerificationReport previous_report;
    for (int cycle = 1; cycle <= config_.threshold; ++cycle) {
      if (!lld) {
        VerificationReport report = MakeReport(intent.id, cls, lld_errors, clock_.Now());
        audit.push_back({ConfigBundle{}, report});
        result.reports.push_back(std::move(report));
        result.cycles = cycle;
        if (cycle < config_.threshold) translate(cycle + 1);
        continue;
      }

      const PromptBundle prompt =
          previous ? forge_.Refinement(*previous, previous_report, *lld)
                   : forge_.Generation(*lld, model.Inventory(lld->targets));
      std::string raw;
      try {
        raw = call(prompt, cycle, result.timings.generate_ms);
      } catch (const EmptyCompletion&) {
        raw.clear();
      }

      const MonoTime verify_start = clock_.Monotonic();
      ConfigBundle bundle;
      VerificationReport report;
      try {
        bundle = SplitConfigBundle(raw);
        report = VerifyBundle(model, bundle, *lld, clock_.Now());
      } catch (const ExtractionError& e) {
        bundle = UnparsedBundle(raw);
        const std::string message = raw.empty() ? "empty answer" : e.what();
        report = MakeReport(intent.id, cls,
                            {LldError(ErrorCode::kSyntax, "", std::string(kAnswerLocation),
                                      message)},
                            clock_.Now());
      }
      report.intent_id = intent.id;
      result.timings.verify_ms += MillisSince(clock_, verify_start);
      audit.push_back({bundle, report});
      result.reports.push_back(report);
      // A cycle counts once its report exists.
      result.cycles = cycle;

      if (report.passed) {
        if (repo_ != nullptr) {
          const NetworkModel candidate = ApplyCandidate(model, bundle);
          RepoEntry entry;
          entry.intent_id = intent.id;
          entry.bundle = bundle;
          entry.report = report;
          entry.created_at = clock_.Now();
          result.repo_version = repo_->StoreApproved(entry, &candidate);
        }
        result.final_bundle = std::move(bundle);
        result.status = RunStatus::kApproved;
        return finish();
      }
      previous = std::move(bundle);
      previous_report = std::move(report);
    }
    result.status = RunStatus::kExhausted;
    return finish();
  } catch (const BackendError& e) {
    result.status = RunStatus::kBackendFailed;
    result.failure = e.what();
    return finish();
  }
}

BatchResult Orchestrator::RunBatch(const std::vector<Intent>& dataset, const NetworkModel& model,
                                   int workers) const {
  if (dataset.empty()) throw ContractError("batch dataset is empty");
  std::set<std::string> seen;
  for (const Intent& intent : dataset) {
    if (!seen.insert(intent.id).second) {
      throw ValidationError("duplicate intent id in dataset: " + intent.id);
    }
  }

  std::vector<Intent> order = dataset;
  std::sort(order.begin(), order.end(),
            [](const Intent& a, const Intent& b) { return a.id < b.id; });
  std::vector<OrchestrationResult> results(order.size());
  std::vector<std::exception_ptr> failures(order.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < order.size(); i = next++) {
      try {
        results[i] = RunIntent(order[i], model);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const int threads = std::clamp(workers, 1, static_cast<int>(order.size()));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
  }
  for (const std::exception_ptr& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  BatchResult batch;
  batch.metrics = ComputeMetrics(order, results);
  batch.results = std::move(results);
  return batch;
}

BatchMetrics ComputeMetrics(const std::vector<Intent>& dataset,
                            const std::vector<OrchestrationResult>& results) {
  std::map<std::string, const Intent*> by_id;
  for (const Intent& intent : dataset) by_id[intent.id] = &intent;

  BatchMetrics m;
  m.intents = static_cast<int>(results.size());
  int labelled = 0;
  int correct = 0;
  int other = 0;
  std::map<std::string, std::vector<double>> stage_samples;
  for (const OrchestrationResult& r : results) {
    const auto it = by_id.find(r.intent_id);
    const Intent* intent = it == by_id.end() ? nullptr : it->second;
    if (r.intent_class == IntentClass::kOther) ++other;
    ++m.statuses[std::string(ToString(r.status))];
    if (intent != nullptr && intent->expected_class) {
      ++labelled;
      if (*intent->expected_class == r.intent_class) ++correct;
      ++m.confusion[std::string(ToString(*intent->expected_class))]
                   [std::string(ToString(r.intent_class))];
    }
    const Complexity complexity = intent != nullptr ? intent->complexity : Complexity::kSimple;
    ++m.cycles[std::string(ToString(complexity))][r.cycles];
    stage_samples["classify"].push_back(r.timings.classify_ms);
    stage_samples["translate"].push_back(r.timings.translate_ms);
    stage_samples["generate"].push_back(r.timings.generate_ms);
    stage_samples["verify"].push_back(r.timings.verify_ms);
    stage_samples["total"].push_back(r.timings.total_ms);
  }
  m.accuracy = labelled == 0 ? 0.0 : static_cast<double>(correct) / labelled;
  m.other_rate = results.empty() ? 0.0 : static_cast<double>(other) / results.size();
  for (auto& [stage, samples] : stage_samples) {
    std::sort(samples.begin(), samples.end());
    double sum = 0;
    for (double s : samples) sum += s;
    m.timings_ms[stage] = {{"p50", samples[(samples.size() - 1) / 2]},
                           {"mean", sum / samples.size()},
                           {"max", samples.back()}};
  }
  return m;
}

std::string MetricsToJson(const BatchMetrics& m) {
  Json cycles = Json::object();
  for (const auto& [complexity, histogram] : m.cycles) {
    for (const auto& [n, count] : histogram) cycles[complexity][std::to_string(n)] = count;
  }
  const Json j = {{"accuracy", m.accuracy},   {"other_rate", m.other_rate},
                  {"confusion", m.confusion}, {"cycles", std::move(cycles)},
                  {"statuses", m.statuses},   {"timings_ms", m.timings_ms},
                  {"intents", m.intents}};
  return j.dump(2) + "\n";
}

}  // namespace netcfg
