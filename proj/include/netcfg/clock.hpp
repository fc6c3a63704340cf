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

#ifndef NETCFG_CLOCK_HPP_
#define NETCFG_CLOCK_HPP_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace netcfg {

using WallTime = std::chrono::system_clock::time_point;
using MonoTime = std::chrono::steady_clock::time_point;

// Source of timestamps (reports, repo metadata) and stage durations.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual WallTime Now() const = 0;
  virtual MonoTime Monotonic() const = 0;
};

class SystemClock final : public Clock {
 public:
  WallTime Now() const override { return std::chrono::system_clock::now(); }
  MonoTime Monotonic() const override { return std::chrono::steady_clock::now(); }
};

// Always returns the same instant, so every measured duration is zero and
// every artifact written under it is byte-reproducible.
class FrozenClock final : public Clock {
 public:
  // 2024-01-01T00:00:00Z
  static constexpr std::int64_t kDefaultEpochSeconds = 1704067200;

  explicit FrozenClock(std::int64_t epoch_seconds = kDefaultEpochSeconds)
      : wall_(std::chrono::seconds(epoch_seconds)) {}
  WallTime Now() const override { return wall_; }
  MonoTime Monotonic() const override { return MonoTime{}; }

 private:
  WallTime wall_;
};

// "2024-01-01T00:00:00Z" (UTC, whole seconds).
std::string FormatUtc(WallTime t);
std::optional<WallTime> ParseUtc(std::string_view text);

}  // namespace netcfg

#endif  // NETCFG_CLOCK_HPP_
