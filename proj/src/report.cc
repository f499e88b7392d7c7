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

#include "authpsi/report.h"

#include <cstdio>

#include "json.hpp"

namespace authpsi::report {

void PhaseClock::Mark(const std::string& name) {
  auto now = std::chrono::steady_clock::now();
  phases_.emplace_back(
      name, std::chrono::duration<double, std::milli>(now - last_).count());
  last_ = now;
}

void AddTraffic(Report& report, const transport::Meter& meter,
                bool include_received) {
  std::vector<transport::Direction> dirs = {transport::Direction::kSent};
  if (include_received) dirs.push_back(transport::Direction::kReceived);
  for (auto dir : dirs) {
    for (const auto& [type, bytes] : meter.PerType(dir)) {
      if (transport::IsSetupType(type)) {
        report.setup_bytes += bytes;
      } else {
        report.per_type[type] += bytes;
        report.bytes_total += bytes;
      }
    }
  }
}

void Finish(Report& report) {
  report.bits_per_element =
      report.n == 0 ? 0.0 : static_cast<double>(report.bytes_total) * 8.0 /
                                static_cast<double>(report.n);
}

std::string ToJson(const Report& report) {
  nlohmann::ordered_json j;
  j["construction"] = report.construction;
  j["session"] = ToHex(report.session);
  j["n"] = report.n;
  j["parties"] = report.parties;
  j["t"] = report.t;
  j["bytes_total"] = report.bytes_total;
  j["bits_per_element"] = report.bits_per_element;
  nlohmann::ordered_json per_type = nlohmann::ordered_json::object();
  for (const auto& [type, bytes] : report.per_type) {
    char key[8];
    std::snprintf(key, sizeof(key), "0x%02x", type);
    per_type[key] = bytes;
  }
  j["per_type"] = per_type;
  j["setup_bytes"] = report.setup_bytes;
  nlohmann::ordered_json phases = nlohmann::ordered_json::object();
  for (const auto& [name, ms] : report.phase_ms) phases[name] = ms;
  j["phase_ms"] = phases;
  j["aborted"] = report.aborted;
  if (report.aborted) {
    j["abort_phase"] = report.abort_phase;
    j["abort_reason"] = report.abort_reason;
  }
  if (report.intersection_size) j["intersection_size"] = *report.intersection_size;
  return j.dump(2);
}

}  // namespace authpsi::report
