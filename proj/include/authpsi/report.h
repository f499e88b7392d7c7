// Copyright 2026 The AuthPSI Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "authpsi/transport.h"

// Communication and timing summary of one protocol session.
namespace authpsi::report {

// Wall-clock durations of consecutive named phases.
class PhaseClock {
 public:
  PhaseClock() : last_(std::chrono::steady_clock::now()) {}
  // Closes the current phase under `name` and starts the next one.
  void Mark(const std::string& name);
  const std::vector<std::pair<std::string, double>>& phases() const { return phases_; }

 private:
  std::chrono::steady_clock::time_point last_;
  std::vector<std::pair<std::string, double>> phases_;
};

struct Report {
  std::string construction;  // "2pc" or "npc"
  SessionId session{};
  uint64_t n = 0;            // elements per party
  uint32_t parties = 0;
  uint32_t t = 0;
  uint64_t bytes_total = 0;  // protocol bytes, dealer traffic excluded
  double bits_per_element = 0;
  std::map<uint8_t, uint64_t> per_type;
  uint64_t setup_bytes = 0;
  std::vector<std::pair<std::string, double>> phase_ms;
  bool aborted = false;
  std::string abort_phase;
  std::string abort_reason;
  std::optional<uint64_t> intersection_size;
};

// Adds one endpoint's traffic. A party's own report counts both directions
// of its links; a whole-run report counts only what each party sent, so
// every frame is counted once.
void AddTraffic(Report& report, const transport::Meter& meter,
                bool include_received);
// bits_per_element = bytes_total * 8 / n.
void Finish(Report& report);

std::string ToJson(const Report& report);

}  // namespace authpsi::report
