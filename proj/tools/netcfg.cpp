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

// netcfg: run intents through the configuration loop, replay datasets and
// inspect the results.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 rejected as Other,
// 3 exhausted or invalid configuration, 4 backend failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "netcfg/clock.hpp"
#include "netcfg/config_model.hpp"
#include "netcfg/configs_repo.hpp"
#include "netcfg/errors.hpp"
#include "netcfg/extraction.hpp"
#include "netcfg/intent.hpp"
#include "netcfg/llm_backend.hpp"
#include "netcfg/network_status.hpp"
#include "netcfg/orchestrator.hpp"
#include "netcfg/prompt.hpp"
#include "netcfg/verifier.hpp"

namespace {

using Json = nlohmann::json;
using namespace netcfg;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRejected = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitBackend = 4;

struct LoopFlags {
  std::string topology = "data/topology.json";
  std::string backend = "rules";
  int threshold = 5;
  std::string out = "netcfg-repo";
  std::string faults;
  std::string fault_schedule = "every-cycle";
  std::uint64_t seed = 0;
  std::string templates;
  std::string llm_url;
  bool frozen_clock = false;
  bool json = false;
};

void AddLoopFlags(CLI::App& cmd, LoopFlags& f) {
  cmd.add_option("--topology", f.topology, "Baseline topology JSON")->capture_default_str();
  cmd.add_option("--backend", f.backend, "Text-generation backend")
      ->check(CLI::IsMember({"http", "rules"}))
      ->capture_default_str();
  cmd.add_option("--threshold", f.threshold, "Maximum generate/verify cycles")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--out", f.out, "Configuration repository directory")->capture_default_str();
  cmd.add_option("--faults", f.faults, "Rules-backend faults, e.g. class:0.1,syntax:@i3");
  cmd.add_option("--fault-schedule", f.fault_schedule, "every-cycle or first-cycle-only")
      ->check(CLI::IsMember({"every-cycle", "first-cycle-only"}))
      ->capture_default_str();
  cmd.add_option("--seed", f.seed, "Fault-injection seed")->capture_default_str();
  cmd.add_option("--templates", f.templates, "Directory overriding the built-in prompts");
  cmd.add_option("--llm-url", f.llm_url, "Chat-completion endpoint (overrides NETCFG_LLM_URL)");
  cmd.add_flag("--frozen-clock", f.frozen_clock, "Fixed timestamps and zero timings");
  cmd.add_flag("--json", f.json, "Machine-readable output");
}

// Everything a loop run needs, built from the flags.
struct Pipeline {
  NetworkModel model;
  std::unique_ptr<Backend> backend;
  std::unique_ptr<Clock> clock;
  std::unique_ptr<ConfigsRepo> repo;
  std::unique_ptr<Orchestrator> orchestrator;
};

Pipeline BuildPipeline(const LoopFlags& f, const std::vector<std::string>& intent_ids) {
  Pipeline p;
  p.model = LoadTopology(f.topology);

  const BackendKind kind = *ParseBackendKind(f.backend);
  BackendDescriptor descriptor = BackendDescriptor::FromEnv(kind);
  if (!f.llm_url.empty()) {
    if (kind != BackendKind::kHttp) throw ValidationError("--llm-url needs --backend http");
    descriptor.endpoint_url = f.llm_url;
  }
  RulesOptions rules;
  if (!f.faults.empty()) {
    if (kind != BackendKind::kRules) throw ValidationError("--faults needs --backend rules");
    rules.faults = FaultPlan::Parse(f.faults);
  }
  rules.faults.schedule = *ParseFaultSchedule(f.fault_schedule);
  rules.faults.seed = f.seed;
  rules.faults = rules.faults.ResolvedFor(intent_ids);
  p.backend = MakeBackend(descriptor, rules);

  if (f.frozen_clock) {
    p.clock = std::make_unique<FrozenClock>();
  } else {
    p.clock = std::make_unique<SystemClock>();
  }
  p.repo = std::make_unique<ConfigsRepo>(f.out);

  OrchestratorConfig config;
  config.threshold = f.threshold;
  config.backend = descriptor;
  PromptForge forge(f.templates.empty() ? TemplateSet::Builtin()
                                        : TemplateSet::FromDirectory(f.templates));
  p.orchestrator =
      std::make_unique<Orchestrator>(*p.backend, config, *p.clock, p.repo.get(), std::move(forge));
  return p;
}

int ExitCodeFor(RunStatus status) {
  switch (status) {
    case RunStatus::kApproved:
      return kExitOk;
    case RunStatus::kRejectedOther:
      return kExitRejected;
    case RunStatus::kExhausted:
      return kExitInvalid;
    case RunStatus::kBackendFailed:
      return kExitBackend;
  }
  return kExitUsage;
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw StorageError("cannot write " + path);
}

void PrintReport(const VerificationReport& report) {
  std::cout << "  " << (report.passed ? "passed" : "failed") << "\n";
  for (const VerificationError& e : report.errors) {
    std::cout << "    [" << ToString(e.code) << "] " << e.device;
    if (e.location) std::cout << " " << *e.location;
    std::cout << ": " << e.message << "\n";
  }
  for (const std::string& s : report.suggestions) std::cout << "    hint: " << s << "\n";
}

int CmdRun(const std::string& text, const std::string& id, const LoopFlags& f) {
  Intent intent;
  intent.id = id;
  intent.text = text;
  Pipeline p = BuildPipeline(f, {id});
  const OrchestrationResult result = p.orchestrator->RunIntent(intent, p.model);
  if (f.json) {
    std::cout << ResultToJson(result, 2) << "\n";
  } else {
    std::cout << ResultSummary(result) << "\n";
    for (std::size_t i = 0; i < result.reports.size(); ++i) {
      std::cout << "cycle " << i + 1 << ":\n";
      PrintReport(result.reports[i]);
    }
    if (result.final_bundle) std::cout << JoinConfigBundle(*result.final_bundle);
  }
  return ExitCodeFor(result.status);
}

void PrintMetrics(const BatchMetrics& m) {
  std::printf("intents:    %d\n", m.intents);
  std::printf("accuracy:   %.3f\n", m.accuracy);
  std::printf("other rate: %.3f\n", m.other_rate);
  std::printf("statuses:\n");
  for (const auto& [status, n] : m.statuses) std::printf("  %-15s %d\n", status.c_str(), n);
  std::printf("cycles (complexity: cycles=intents):\n");
  for (const auto& [complexity, histogram] : m.cycles) {
    std::printf("  %-8s", complexity.c_str());
    for (const auto& [cycles, n] : histogram) std::printf(" %d=%d", cycles, n);
    std::printf("\n");
  }
  std::printf("confusion (expected -> predicted):\n");
  for (const auto& [expected, row] : m.confusion) {
    std::printf("  %-5s", expected.c_str());
    for (const auto& [predicted, n] : row) std::printf(" %s=%d", predicted.c_str(), n);
    std::printf("\n");
  }
  std::printf("timings ms (p50 / mean / max):\n");
  for (const auto& [stage, t] : m.timings_ms) {
    std::printf("  %-10s %.1f / %.1f / %.1f\n", stage.c_str(), t.at("p50"), t.at("mean"),
                t.at("max"));
  }
}

BatchMetrics MetricsFromJson(const std::string& text) {
  const Json j = Json::parse(text);
  BatchMetrics m;
  m.accuracy = j.at("accuracy").get<double>();
  m.other_rate = j.at("other_rate").get<double>();
  m.intents = j.value("intents", 0);
  m.confusion = j.at("confusion").get<decltype(m.confusion)>();
  for (const auto& [complexity, histogram] : j.at("cycles").items()) {
    for (const auto& [n, count] : histogram.items()) {
      m.cycles[complexity][std::stoi(n)] = count.get<int>();
    }
  }
  m.statuses = j.value("statuses", decltype(m.statuses){});
  m.timings_ms = j.at("timings_ms").get<decltype(m.timings_ms)>();
  return m;
}

int CmdBatch(const std::string& dataset_path, const LoopFlags& f, const std::string& metrics_path,
             const std::string& results_path, int workers) {
  const std::vector<Intent> dataset = LoadDataset(dataset_path);
  if (dataset.empty()) throw ValidationError("dataset " + dataset_path + " has no intents");
  std::vector<std::string> ids;
  for (const Intent& intent : dataset) ids.push_back(intent.id);
  Pipeline p = BuildPipeline(f, ids);
  const BatchResult batch = p.orchestrator->RunBatch(dataset, p.model, workers);

  WriteTextFile(metrics_path, MetricsToJson(batch.metrics));
  if (!results_path.empty()) {
    std::string lines;
    for (const OrchestrationResult& r : batch.results) lines += ResultToJson(r) + "\n";
    WriteTextFile(results_path, lines);
  }
  if (f.json) {
    std::cout << MetricsToJson(batch.metrics);
  } else {
    for (const OrchestrationResult& r : batch.results) {
      std::cout << r.intent_id << ": " << ResultSummary(r) << "\n";
    }
    PrintMetrics(batch.metrics);
    std::cout << "metrics written to " << metrics_path << "\n";
  }
  return kExitOk;
}

int CmdShow(const std::string& id, const std::string& out, int version, bool audit, bool json) {
  ConfigsRepo repo(out);
  if (audit) {
    const std::vector<AuditRecord> trail = repo.AuditTrail(id);
    if (json) {
      Json j = Json::array();
      for (const AuditRecord& r : trail) {
        j.push_back({{"bundle", JoinConfigBundle(r.bundle)},
                     {"report", Json::parse(ReportToJson(r.report))}});
      }
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }
    for (std::size_t i = 0; i < trail.size(); ++i) {
      std::cout << "cycle " << i + 1 << ":\n";
      PrintReport(trail[i].report);
      std::cout << JoinConfigBundle(trail[i].bundle);
    }
    return kExitOk;
  }
  const RepoEntry entry = version > 0 ? repo.Get(id, version) : repo.Latest(id);
  if (json) {
    const Json j = {{"intent_id", entry.intent_id},
                    {"version", entry.version},
                    {"created_at", FormatUtc(entry.created_at)},
                    {"bundle", JoinConfigBundle(entry.bundle)},
                    {"report", Json::parse(ReportToJson(entry.report))}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << entry.intent_id << " v" << entry.version << " (" << FormatUtc(entry.created_at)
            << ")\n";
  PrintReport(entry.report);
  std::cout << JoinConfigBundle(entry.bundle);
  return kExitOk;
}

int CmdMetrics(const std::string& path, bool json) {
  const std::string text = ReadTextFile(path);
  const BatchMetrics m = MetricsFromJson(text);
  if (json) {
    std::cout << MetricsToJson(m);
  } else {
    PrintMetrics(m);
  }
  return kExitOk;
}

int CmdTopology(const std::string& action, const std::string& topology) {
  const NetworkModel model = LoadTopology(topology);
  if (action == "show") {
    std::cout << Json::parse(TopologyToJson(model)).dump(2) << "\n";
  } else {
    std::cout << Json::parse(NetworkStatus(model).json).dump(2) << "\n";
  }
  return kExitOk;
}

int CmdValidateConfig(const std::string& path, const std::string& topology,
                      const std::string& device, bool json) {
  const std::string text = ReadTextFile(path);
  ConfigBundle bundle;
  if (!device.empty()) {
    bundle.sections.push_back({device, text});
  } else if (text.find(kSectionSeparator) != std::string::npos) {
    bundle = SplitConfigBundle(text);
  } else {
    bundle.sections.push_back({std::filesystem::path(path).stem().string(), text});
  }
  std::vector<VerificationError> errors = CheckSyntax(bundle);
  if (!topology.empty()) {
    const NetworkModel model = LoadTopology(topology);
    for (VerificationError& e : CheckDevices(model, bundle)) errors.push_back(std::move(e));
  }
  if (json) {
    Json j = Json::array();
    for (const VerificationError& e : errors) {
      j.push_back({{"code", ToString(e.code)},
                   {"device", e.device},
                   {"location", e.location ? Json(*e.location) : Json()},
                   {"message", e.message}});
    }
    std::cout << j.dump(2) << "\n";
  } else if (errors.empty()) {
    std::cout << "ok\n";
  } else {
    for (const VerificationError& e : errors) {
      std::cout << e.device << (e.location ? " " + *e.location : "") << ": [" << ToString(e.code)
                << "] " << e.message << "\n";
    }
  }
  return errors.empty() ? kExitOk : kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-loop network configuration from natural-language intents"};
  app.require_subcommand(1);

  LoopFlags run_flags;
  std::string run_text;
  std::string run_id = "adhoc";
  CLI::App* run = app.add_subcommand("run", "Run one intent through the loop");
  run->add_option("intent", run_text, "Intent text")->required();
  run->add_option("--id", run_id, "Intent id")->capture_default_str();
  AddLoopFlags(*run, run_flags);

  LoopFlags batch_flags;
  std::string dataset;
  std::string metrics_path = "./netcfg-metrics.json";
  std::string results_path;
  int workers = 1;
  CLI::App* batch = app.add_subcommand("batch", "Run every intent of a JSONL dataset");
  batch->add_option("dataset", dataset, "Dataset file")->required();
  batch->add_option("--metrics", metrics_path, "Metrics output file")->capture_default_str();
  batch->add_option("--results", results_path, "Per-intent results as JSON lines");
  batch->add_option("--workers", workers, "Concurrent intents")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  AddLoopFlags(*batch, batch_flags);

  std::string show_id;
  std::string show_out = "netcfg-repo";
  int show_version = 0;
  bool show_audit = false;
  bool show_json = false;
  CLI::App* show = app.add_subcommand("show", "Show a stored configuration or audit trail");
  show->add_option("intent_id", show_id, "Intent id")->required();
  show->add_option("--out", show_out, "Configuration repository directory")
      ->capture_default_str();
  show->add_option("--version", show_version, "Version (default latest)");
  show->add_flag("--audit", show_audit, "Show every cycle of the latest run");
  show->add_flag("--json", show_json, "Machine-readable output");

  std::string metrics_file = "./netcfg-metrics.json";
  bool metrics_json = false;
  CLI::App* metrics = app.add_subcommand("metrics", "Print a metrics file");
  metrics->add_option("path", metrics_file, "Metrics file")->capture_default_str();
  metrics->add_flag("--json", metrics_json, "Machine-readable output");

  std::string topology_action;
  std::string topology_path = "data/topology.json";
  CLI::App* topology = app.add_subcommand("topology", "Inspect the baseline topology");
  topology->add_option("action", topology_action, "show or status")
      ->required()
      ->check(CLI::IsMember({"show", "status"}));
  topology->add_option("--topology", topology_path, "Topology JSON")->capture_default_str();

  std::string config_path;
  std::string config_topology;
  std::string config_device;
  bool config_json = false;
  CLI::App* validate = app.add_subcommand("validate-config", "Check a configuration file");
  validate->add_option("path", config_path, "Configuration file")->required();
  validate->add_option("--topology", config_topology, "Topology JSON for the device check");
  validate->add_option("--device", config_device, "Device the whole file applies to");
  validate->add_flag("--json", config_json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return CmdRun(run_text, run_id, run_flags);
    if (*batch) return CmdBatch(dataset, batch_flags, metrics_path, results_path, workers);
    if (*show) return CmdShow(show_id, show_out, show_version, show_audit, show_json);
    if (*metrics) return CmdMetrics(metrics_file, metrics_json);
    if (*topology) return CmdTopology(topology_action, topology_path);
    if (*validate) return CmdValidateConfig(config_path, config_topology, config_device, config_json);
  } catch (const std::exception& e) {
    std::cerr << "netcfg: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
