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

#include <atomic>
#include <optional>

#include "authpsi/crypto.h"
#include "authpsi/gf128.h"
#include "authpsi/opprf.h"
#include "authpsi/transport.h"

// Trusted setup endpoint (party 0): hands out VOLE seed pairs and answers
// ideal-OPRF key requests and queries.
namespace authpsi::dealer {

struct VoleRequest {
  uint32_t length = 0;
  transport::PartyId receiver = 0;
  transport::PartyId sender = 0;
};

// length (4B BE) || receiver id (2B BE) || sender id (2B BE); the VOLE
// session is the envelope session.
Bytes EncodeVoleRequest(const VoleRequest& request);
VoleRequest ParseVoleRequest(ByteView bytes);

class DealerService {
 public:
  // All randomness derives from `master_seed` and the request session, so
  // repeated runs with the same seed hand out identical material.
  DealerService(transport::Endpoint& endpoint, const Block32& master_seed);

  // Serves requests until Stop() is called or every peer has closed.
  void Run();
  void Stop() { stop_ = true; }

  // Test hook: every VOLE pair uses this delta.
  void ForceDelta(Gf128 delta) { forced_delta_ = delta; }

  uint64_t requests_served() const { return served_; }

 private:
  void Handle(const transport::Delivery& delivery);

  transport::Endpoint& endpoint_;
  crypto::Prg vole_rng_;
  opprf::IdealOprf oprf_;
  std::optional<Gf128> forced_delta_;
  std::atomic<bool> stop_{false};
  std::atomic<uint64_t> served_{0};
};

}  // namespace authpsi::dealer
