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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "authpsi/bytes.h"
#include "authpsi/crypto.h"
#include "authpsi/gf128.h"
#include "authpsi/merkle.h"
#include "authpsi/okvs.h"
#include "authpsi/tamper.h"
#include "authpsi/transport.h"
#include "authpsi/vole.h"

// Two-party authenticated PSI: Merkle-gated inputs, an OKVS of H^B values
// masked by a VOLE correlation, and digest comparison at the receiver.
namespace authpsi::psi2 {

enum class Role : uint8_t { kReceiver = 0, kSender = 1 };
enum class Phase : uint8_t { kFresh, kTransformed, kInteracted, kDone, kAborted };
const char* PhaseName(Phase phase);

inline constexpr transport::PartyId kReceiverId = 1;
inline constexpr transport::PartyId kSenderId = 2;

// H^B: element -> field, SHA-256(0x42 || x) truncated to 16 bytes.
Gf128 HashToField(ByteView element);
// H°: SHA-256(0x4F || 16-byte field element) truncated to `out_bytes`.
Bytes OutputHash(const Gf128& value, size_t out_bytes);
// ceil((lambda + ceil(log2(nx * ny))) / 8) * 8.
uint32_t OutBits(uint64_t nx, uint64_t ny, uint32_t lambda = okvs::kDefaultLambda);

// Sender algebra: B' = B + A' * delta, and Decode(B', y) + delta * H^B(y),
// which equals the receiver's Decode(C, y) whenever y was encoded.
std::vector<Gf128> MaskSenderVector(std::span<const Gf128> b,
                                    std::span<const Gf128> a_prime, Gf128 delta);
Gf128 SenderValue(const okvs::OkvsParams& params, std::span<const Gf128> b_prime,
                  Gf128 delta, ByteView element);

// Leaf salt: the session id, or nothing in strict mode.
Bytes LeafSalt(const SessionId& session, bool salted);
merkle::Root Commit(std::span<const Bytes> input, const SessionId& session,
                    bool salted);

struct Config {
  Role role = Role::kReceiver;
  std::vector<Bytes> input;
  merkle::Root announced_root;
  merkle::Root peer_root;
  SessionId session{};
  bool salted = true;
  uint32_t lambda = okvs::kDefaultLambda;
  uint32_t okvs_attempts = 8;
  std::optional<tamper::Spec> tamper;
};

// Single-threaded state machine for one party. Calls outside the expected
// phase throw ProtocolError.
class Engine {
 public:
  // Throws DomainError for empty or non-distinct input.
  Engine(Config config, crypto::Prg rng);

  Phase phase() const { return phase_; }
  Role role() const { return config_.role; }
  const Config& config() const { return config_; }

  // fresh -> transformed. Returns the root + proofs message. Throws
  // ConfigError if the input does not hash to the announced root (checked
  // only for honest parties). Returns nullopt and aborts if the OKVS cannot
  // be encoded.
  std::optional<Bytes> Transform();

  // Verifies the counterpart's proofs; false means the engine aborted.
  bool AcceptPeerProofs(ByteView payload);

  // Receiver: length of the VOLE correlation it needs.
  uint32_t vole_length() const;
  // Receiver: A' = A + P, moves to interacted.
  Bytes MaskTable(const vole::ReceiverCorrelation& correlation);
  // Sender: permuted digest set R, moves to done.
  Bytes RespondDigests(ByteView masked_table,
                       const vole::SenderCorrelation& correlation);
  // Receiver: {x : H°(Decode(C, x)) in R}, moves to done.
  std::vector<Bytes> Reconstruct(ByteView digests);

  void Abort(std::string reason);
  const std::string& abort_reason() const { return abort_reason_; }
  // Phase in which the abort happened.
  Phase abort_phase() const { return abort_phase_; }

  // Receiver's OKVS table P (white-box access).
  const okvs::OkvsTable& table() const { return table_; }
  // Input actually used in the protocol (differs from config under tamper).
  const std::vector<Bytes>& protocol_input() const { return input_; }

 private:
  void Expect(Phase phase, Role role, const char* what) const;
  size_t out_bytes() const;

  Config config_;
  crypto::Prg rng_;
  Phase phase_ = Phase::kFresh;
  Phase abort_phase_ = Phase::kFresh;
  bool peer_verified_ = false;
  std::string abort_reason_;
  std::vector<Bytes> input_;
  okvs::OkvsTable table_;
  vole::ReceiverCorrelation correlation_;
};

// Payload helpers for the registered message types.
Bytes EncodeDigests(const std::vector<Bytes>& digests, size_t out_bytes);
std::vector<Bytes> DecodeDigests(ByteView payload, size_t out_bytes);

struct Outcome {
  bool aborted = false;
  std::string abort_phase;
  std::string abort_reason;
  std::optional<std::vector<Bytes>> intersection;  // receiver only
  std::vector<std::pair<std::string, double>> phase_ms;
};

// Drives one party over `endpoint`: the receiver is party 1, the sender
// party 2 and the dealer party 0. A verification failure or a malformed
// peer message aborts the session and notifies the counterpart. Throws
// ConfigError for inconsistent configuration and TransportError when the
// network fails or `timeout` elapses while waiting.
Outcome RunParty(transport::Endpoint& endpoint, const Config& config,
                 crypto::Prg rng, transport::Duration timeout);

}  // namespace authpsi::psi2
