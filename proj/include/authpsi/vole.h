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
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "authpsi/bytes.h"
#include "authpsi/crypto.h"
#include "authpsi/gf128.h"

// VOLE correlations C = A * delta + B, issued by a trusted dealer.
//
// A and B are expanded from 32-byte seeds; the receiver additionally gets the
// C vector (its "correction"), the sender gets delta.
namespace authpsi::vole {

enum class Role : uint8_t { kReceiver = 0x00, kSender = 0x01 };

struct VoleSeed {
  Role role = Role::kReceiver;
  SessionId session_id{};
  Block32 expansion_seed{};
  uint32_t length = 0;
  std::optional<Gf128> delta;       // sender only
  std::vector<Gf128> correction;    // receiver only: the C vector
};

struct ReceiverCorrelation {
  std::vector<Gf128> a_vec;
  std::vector<Gf128> c_vec;
};

struct SenderCorrelation {
  std::vector<Gf128> b_vec;
  Gf128 delta;
};

struct SeedPair {
  VoleSeed receiver;
  VoleSeed sender;
};

// Dealer-side seed generation. Throws DomainError when length == 0.
SeedPair GenSeed(uint32_t length, const SessionId& session, crypto::Prg& rng);
// Same, with a fresh random session id.
SeedPair GenSeed(uint32_t length, crypto::Prg& rng);

std::vector<Gf128> ExpandVector(const Block32& seed, uint32_t length);

ReceiverCorrelation ExtendReceiver(const VoleSeed& seed);
SenderCorrelation ExtendSender(const VoleSeed& seed);
std::variant<ReceiverCorrelation, SenderCorrelation> Extend(const VoleSeed& seed);

// Backend seam: anything that hands out correlated seed pairs.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual SeedPair Generate(uint32_t length, const SessionId& session) = 0;
};

class DealerBackend : public Backend {
 public:
  explicit DealerBackend(crypto::Prg rng) : rng_(std::move(rng)) {}
  // Test hook: every generated pair uses this delta.
  void ForceDelta(Gf128 delta) { forced_delta_ = delta; }

  SeedPair Generate(uint32_t length, const SessionId& session) override;

 private:
  crypto::Prg rng_;
  std::optional<Gf128> forced_delta_;
};

SeedPair GenSeedWithDelta(uint32_t length, const SessionId& session,
                          Gf128 delta, crypto::Prg& rng);

// Dealer message: session_id (16B) || role || length (4B BE) || payload.
// Receiver payload: expansion seed || C vector. Sender: expansion seed || delta.
Bytes SerializeSeed(const VoleSeed& seed);
VoleSeed ParseSeed(ByteView bytes);

}  // namespace authpsi::vole
