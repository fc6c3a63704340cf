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

// Helpers shared by the test binaries.

#ifndef NETCFG_TESTS_TEST_SUPPORT_HPP_
#define NETCFG_TESTS_TEST_SUPPORT_HPP_

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "netcfg/config_model.hpp"

namespace netcfg::testing {

inline std::filesystem::path SourceDir() { return NETCFG_SOURCE_DIR; }
inline std::filesystem::path FixtureDir() { return SourceDir() / "tests" / "fixtures"; }
inline std::filesystem::path TopologyPath() { return SourceDir() / "data" / "topology.json"; }
inline std::filesystem::path DatasetPath() { return SourceDir() / "data" / "intents.jsonl"; }

inline std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

inline const NetworkModel& Baseline() {
  static const NetworkModel model = LoadTopology(TopologyPath());
  return model;
}

// Config fixtures sorted by file name, optionally limited to a name prefix.
inline std::vector<std::filesystem::path> ConfigFixtures(const std::string& prefix = "") {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(FixtureDir() / "configs")) {
    const std::string name = e.path().filename().string();
    if (e.path().extension() == ".cfg" && name.rfind(prefix, 0) == 0) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// The device a fixture describes: the argument of its first hostname line.
inline std::string FixtureDevice(const std::string& text) {
  std::istringstream in(text);
  std::string word;
  while (in >> word) {
    if (word == "hostname" && in >> word) return word;
  }
  return "R1";
}

// "line:col severity message", the form used by the .issues files.
inline std::string FormatIssue(const SyntaxIssue& issue) {
  return std::to_string(issue.line) + ":" + std::to_string(issue.column) + " " +
         (issue.severity == Severity::kError ? "error" : "warning") + " " + issue.message;
}

// Lines of the .issues file next to `cfg`; empty when there is none.
inline std::vector<std::string> ExpectedIssues(const std::filesystem::path& cfg) {
  std::filesystem::path path = cfg;
  path.replace_extension(".issues");
  std::vector<std::string> out;
  if (!std::filesystem::exists(path)) return out;
  std::istringstream in(ReadFile(path));
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

// Fresh directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("netcfg-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ignored;
    std::filesystem::remove_all(path_, ignored);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace netcfg::testing

#endif  // NETCFG_TESTS_TEST_SUPPORT_HPP_
