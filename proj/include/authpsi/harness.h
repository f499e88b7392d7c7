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

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "authpsi/psi2.h"
#include "authpsi/psin.h"
#include "authpsi/report.h"
#include "authpsi/tamper.h"
#include "authpsi/transport.h"

// Runs every party of a session (plus the dealer) as threads in one
// process, over either backend. Party randomness derives from one seed, so
// transcripts are reproducible.
namespace authpsi::harness {

enum class Backend { kInProc, kTcp };

struct CommonOptions {
  SessionId session{};
  uint64_t seed = 0;
  bool salted = true;
  Backend backend = Backend::kInProc;
  transport::Duration timeout{60000};
};

// Deterministic per-party generator and dealer seed.
crypto::Prg PartyRng(uint64_t seed, transport::PartyId party);
Block32 DealerSeed(uint64_t seed);

struct TwoPartyOptions : CommonOptions {
  std::optional<tamper::Spec> receiver_tamper;
  std::optional<tamper::Spec> sender_tamper;
};

struct RunResult {
  report::Report report;  // whole run: each frame counted once
  // Per party (index = party id, 0 = dealer): hash over the frames it sent
  // to each peer, in peer order.
  std::map<transport::PartyId, crypto::Digest> transcripts;
};

struct TwoPartyResult : RunResult {
  psi2::Outcome receiver;
  psi2::Outcome sender;
};

// Roots are committed from the honest sets, then any tamper is applied.
TwoPartyResult RunLocal2(const std::vector<Bytes>& receiver_set,
                         const std::vector<Bytes>& sender_set,
                         const TwoPartyOptions& options);

struct MultiPartyOptions : CommonOptions {
  uint16_t t = 1;
  // Party index and deviation of a single adversarial party.
  std::optional<std::pair<transport::PartyId, tamper::Spec>> tamper;
};

struct MultiPartyResult : RunResult {
  std::vector<psin::Outcome> outcomes;  // outcomes[i - 1] for P_i
};

MultiPartyResult RunLocalN(const std::vector<std::vector<Bytes>>& sets,
                           const MultiPartyOptions& options);

}  // namespace authpsi::harness
