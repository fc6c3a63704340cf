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

#include "netcfg/configs_repo.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "netcfg/errors.hpp"
#include "netcfg/extraction.hpp"
#include "text_util.hpp"

namespace netcfg {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

void WriteFile(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw StorageError("cannot write " + path.string());
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Largest N among entries named `<prefix>N`, or 0.
int HighestNumbered(const fs::path& dir, std::string_view prefix) {
  int highest = 0;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return 0;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) continue;
    const std::string digits = name.substr(prefix.size());
    if (!std::all_of(digits.begin(), digits.end(), ::isdigit)) continue;
    highest = std::max(highest, std::stoi(digits));
  }
  return highest;
}

// Builds `final_dir` by filling a fresh temporary sibling and renaming it.
template <typename Fill>
void WriteDirectoryAtomically(const fs::path& final_dir, Fill fill) {
  const fs::path tmp = final_dir.parent_path() / (".tmp-" + final_dir.filename().string());
  try {
    fs::remove_all(tmp);
    fs::create_directories(tmp);
    fill(tmp);
    fs::rename(tmp, final_dir);
  } catch (const fs::filesystem_error& e) {
    std::error_code ignored;
    fs::remove_all(tmp, ignored);
    throw StorageError(e.what());
  } catch (...) {
    std::error_code ignored;
    fs::remove_all(tmp, ignored);
    throw;
  }
}

std::string SectionFileName(std::string_view device) { return EncodeIntentId(device) + ".cfg"; }

// Device order of first appearance, with the sections of a repeated device
// concatenated.
std::vector<std::pair<std::string, std::string>> GroupByDevice(const ConfigBundle& bundle) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const DeviceSection& s : bundle.sections) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == s.device; });
    if (it == out.end()) {
      out.emplace_back(s.device, s.text);
    } else {
      it->second += s.text;
    }
  }
  return out;
}

}  // namespace

ConfigBundle NormalizeBundle(const ConfigBundle& bundle) {
  ConfigBundle out;
  for (const DeviceSection& s : bundle.sections) {
    std::string content;
    for (std::string_view line : text::SplitLines(s.text)) {
      const std::string_view trimmed = text::TrimRight(line);
      if (text::Trim(trimmed).empty() || text::Trim(trimmed) == kSectionSeparator) continue;
      content += trimmed;
      content += '\n';
    }
    if (content.empty()) continue;
    out.sections.push_back({std::string(text::Trim(s.device)), std::move(content)});
  }
  return out;
}

std::string EncodeIntentId(std::string_view id) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : id) {
    if (std::isalnum(c) != 0 || c == '-' || c == '_') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xf];
    }
  }
  return out;
}

std::string DecodeIntentId(std::string_view encoded) {
  std::string out;
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    if (encoded[i] == '%' && i + 2 < encoded.size() &&
        std::isxdigit(static_cast<unsigned char>(encoded[i + 1])) != 0 &&
        std::isxdigit(static_cast<unsigned char>(encoded[i + 2])) != 0) {
      out += static_cast<char>(std::stoi(std::string(encoded.substr(i + 1, 2)), nullptr, 16));
      i += 2;
    } else {
      out += encoded[i];
    }
  }
  return out;
}

ConfigsRepo::ConfigsRepo(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec || !fs::is_directory(root_)) {
    throw StorageError("cannot create repository at " + root_.string());
  }
}

fs::path ConfigsRepo::IntentDir(std::string_view intent_id) const {
  if (intent_id.empty()) throw ContractError("intent id must not be empty");
  return root_ / EncodeIntentId(intent_id);
}

int ConfigsRepo::StoreApproved(const RepoEntry& entry, const NetworkModel* candidate) {
  if (!entry.report.passed) throw ContractError("only approved configurations are stored");
  const ConfigBundle bundle = NormalizeBundle(entry.bundle);
  if (bundle.empty()) throw ContractError("approved bundle has no configuration");
  for (const DeviceSection& s : bundle.sections) {
    if (ParseConfig(s.device, s.text).HasErrors()) {
      throw ContractError("approved section for " + s.device + " does not parse cleanly");
    }
  }
  const auto grouped = GroupByDevice(bundle);

  std::lock_guard<std::mutex> lock(write_mutex_);
  const fs::path dir = IntentDir(entry.intent_id);
  try {
    fs::create_directories(dir);
  } catch (const fs::filesystem_error& e) {
    throw StorageError(e.what());
  }
  const int version = HighestNumbered(dir, "v") + 1;
  Json devices = Json::array();
  for (const auto& [device, text] : grouped) devices.push_back(device);
  const Json meta = {{"intent_id", entry.intent_id},
                     {"version", version},
                     {"created_at", FormatUtc(entry.created_at)},
                     {"status", "approved"},
                     {"devices", std::move(devices)}};

  WriteDirectoryAtomically(dir / ("v" + std::to_string(version)), [&](const fs::path& tmp) {
    for (const auto& [device, text] : grouped) WriteFile(tmp / SectionFileName(device), text);
    WriteFile(tmp / "report.json", ReportToJson(entry.report, 2) + "\n");
    WriteFile(tmp / "meta.json", meta.dump(2) + "\n");
    if (candidate != nullptr) {
      fs::create_directories(tmp / "running");
      for (const auto& [device, text] : grouped) {
        if (const DeviceConfigAst* ast = candidate->FindDevice(device)) {
          WriteFile(tmp / "running" / SectionFileName(device), CanonicalText(*ast));
        }
      }
    }
  });
  return version;
}

std::vector<int> ConfigsRepo::Versions(std::string_view intent_id) const {
  std::vector<int> out;
  const fs::path dir = IntentDir(intent_id);
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (name.size() < 2 || name[0] != 'v') continue;
    const std::string digits = name.substr(1);
    if (!std::all_of(digits.begin(), digits.end(), ::isdigit)) continue;
    if (fs::is_regular_file(entry.path() / "meta.json")) out.push_back(std::stoi(digits));
  }
  std::sort(out.begin(), out.end());
  return out;
}

RepoEntry ConfigsRepo::Get(std::string_view intent_id, int version) const {
  const fs::path dir = IntentDir(intent_id) / ("v" + std::to_string(version));
  if (!fs::is_regular_file(dir / "meta.json")) {
    throw NotFound("no version " + std::to_string(version) + " for intent " +
                   std::string(intent_id));
  }
  try {
    const Json meta = Json::parse(ReadFile(dir / "meta.json"));
    RepoEntry entry;
    entry.intent_id = meta.at("intent_id").get<std::string>();
    entry.version = meta.at("version").get<int>();
    const auto created = ParseUtc(meta.at("created_at").get<std::string>());
    if (!created) throw ParseError("bad created_at in " + (dir / "meta.json").string());
    entry.created_at = *created;
    for (const Json& d : meta.at("devices")) {
      const std::string device = d.get<std::string>();
      entry.bundle.sections.push_back({device, ReadFile(dir / SectionFileName(device))});
    }
    entry.report = ReportFromJson(ReadFile(dir / "report.json"));
    return entry;
  } catch (const Json::exception& e) {
    throw ParseError("corrupt repository entry " + dir.string() + ": " + e.what());
  }
}

RepoEntry ConfigsRepo::Latest(std::string_view intent_id) const {
  const auto versions = Versions(intent_id);
  if (versions.empty()) {
    throw NotFound("no approved configuration for intent " + std::string(intent_id));
  }
  return Get(intent_id, versions.back());
}

std::map<std::string, std::string> ConfigsRepo::Running(std::string_view intent_id,
                                                        int version) const {
  const fs::path dir = IntentDir(intent_id) / ("v" + std::to_string(version)) / "running";
  std::map<std::string, std::string> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.path().extension() != ".cfg") continue;
    out[DecodeIntentId(entry.path().stem().string())] = ReadFile(entry.path());
  }
  return out;
}

int ConfigsRepo::RecordRun(std::string_view intent_id, const std::vector<AuditRecord>& cycles) {
  std::lock_guard<std::mutex> lock(write_mutex_);
  const fs::path audit = IntentDir(intent_id) / "audit";
  try {
    fs::create_directories(audit);
  } catch (const fs::filesystem_error& e) {
    throw StorageError(e.what());
  }
  const int run = HighestNumbered(audit, "run-") + 1;
  WriteDirectoryAtomically(audit / ("run-" + std::to_string(run)), [&](const fs::path& tmp) {
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      const fs::path cycle = tmp / ("cycle-" + std::to_string(i + 1));
      fs::create_directories(cycle);
      WriteFile(cycle / "bundle.txt", JoinConfigBundle(NormalizeBundle(cycles[i].bundle)));
      WriteFile(cycle / "report.json", ReportToJson(cycles[i].report, 2) + "\n");
    }
  });
  return run;
}

std::vector<AuditRecord> ConfigsRepo::AuditTrail(std::string_view intent_id) const {
  const fs::path audit = IntentDir(intent_id) / "audit";
  const int run = HighestNumbered(audit, "run-");
  if (run == 0) throw NotFound("intent " + std::string(intent_id) + " has never run");
  const fs::path dir = audit / ("run-" + std::to_string(run));
  const int count = HighestNumbered(dir, "cycle-");
  std::vector<AuditRecord> out;
  for (int k = 1; k <= count; ++k) {
    const fs::path cycle = dir / ("cycle-" + std::to_string(k));
    AuditRecord record;
    const std::string text = ReadFile(cycle / "bundle.txt");
    if (!text.empty()) {
      try {
        record.bundle = SplitConfigBundle(text);
      } catch (const ExtractionError&) {
        throw ParseError("corrupt audit bundle " + (cycle / "bundle.txt").string());
      }
    }
    record.report = ReportFromJson(ReadFile(cycle / "report.json"));
    out.push_back(std::move(record));
  }
  return out;
}

std::vector<std::string> ConfigsRepo::Intents() const {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(root_, ec)) {
    const std::string name = entry.path().filename().string();
    if (!entry.is_directory() || name.empty() || name[0] == '.') continue;
    out.push_back(DecodeIntentId(name));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace netcfg
