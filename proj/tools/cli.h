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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "authpsi/bytes.h"
#include "authpsi/transport.h"

// Operator entry points of the `authpsi` tool.
namespace authpsi::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // unexpected internal error
  kExitUsage = 2,    // bad flags, malformed inputs, inconsistent configuration
  kExitAbort = 3,    // the protocol aborted (integrity violation detected)
  kExitTransport = 4,
};

struct PartyEntry {
  transport::PartyId index = 0;
  std::string address;               // host:port, networked runs only
  std::filesystem::path dataset;
  std::filesystem::path root;        // root wire file written by `commit`
};

// JSON run configuration. Relative paths resolve against the file's
// directory.
//   {"session": "<32 hex>", "salted": true, "t": 1, "seed": 7,
//    "timeout_ms": 60000, "dealer": "host:port",
//    "parties": [{"index": 1, "address": "host:port",
//                 "dataset": "p1.txt", "root": "p1.root"}, ...]}
struct RunConfig {
  SessionId session{};
  bool salted = true;
  uint16_t t = 0;
  std::optional<uint64_t> seed;  // fixed randomness for reproducible runs
  transport::Duration timeout{60000};
  std::string dealer_address;
  std::vector<PartyEntry> parties;  // sorted by index, indices 1..n
};

// Throws DomainError for malformed or inconsistent configuration.
RunConfig ParseRunConfig(const std::string& json_text,
                         const std::filesystem::path& base_dir);
RunConfig LoadRunConfig(const std::filesystem::path& path);

// Reference figures printed next to measured ones by `bench`.
struct TwoPartyReference {
  uint64_t n;
  double ms;
  double bits_per_element;
};
const std::vector<TwoPartyReference>& TwoPartyReferenceRows();

struct MultiPartyReference {
  uint16_t n;
  uint16_t t;
  std::map<uint64_t, double> ms_by_set_size;
};
const std::vector<MultiPartyReference>& MultiPartyReferenceColumns();

// Parses argv and runs the selected command; returns the process exit code.
int Main(int argc, char** argv);

}  // namespace authpsi::cli
