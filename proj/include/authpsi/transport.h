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
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "authpsi/bytes.h"
#include "authpsi/crypto.h"

// Framed, metered point-to-point messaging between numbered parties.
namespace authpsi::transport {

using PartyId = uint16_t;
using Duration = std::chrono::milliseconds;

// Correlated-randomness dealer (VOLE seeds, OPRF evaluations).
inline constexpr PartyId kDealer = 0;

// Registered message types.
namespace msg {
// Two-party engine.
inline constexpr uint8_t kProofs2 = 0x01;
inline constexpr uint8_t kMaskedTable = 0x02;
inline constexpr uint8_t kDigests = 0x03;
inline constexpr uint8_t kAbort2 = 0x0F;
// n-party engine.
inline constexpr uint8_t kProofsN = 0x11;
inline constexpr uint8_t kGroupKey = 0x12;
inline constexpr uint8_t kShareTable = 0x13;
inline constexpr uint8_t kHint = 0x14;
inline constexpr uint8_t kOprfDealer = 0x15;
inline constexpr uint8_t kZeroShareSeed = 0x16;
inline constexpr uint8_t kAbortN = 0x1F;
// VOLE dealer.
inline constexpr uint8_t kVoleRequest = 0x21;
inline constexpr uint8_t kVoleSeed = 0x22;
}  // namespace msg

bool IsRegisteredType(uint8_t type);
// Dealer traffic is metered as setup, everything else as protocol bytes.
bool IsSetupType(uint8_t type);

struct Envelope {
  SessionId session{};
  uint8_t type = 0;
  Bytes payload;

  bool operator==(const Envelope&) const = default;
};

// frame = total length (4B BE) || session (16B) || type || payload length
// (4B BE) || payload. The total length counts everything after itself.
inline constexpr size_t kFrameOverhead = 4 + 16 + 1 + 4;
inline constexpr size_t kDefaultMaxPayload = size_t{1} << 28;

Bytes EncodeFrame(const Envelope& envelope);
// Throws DomainError on malformed frames.
Envelope DecodeFrame(ByteView frame);

enum class Direction : uint8_t { kSent = 0, kReceived = 1 };

struct MeterKey {
  SessionId session{};
  Direction direction = Direction::kSent;
  uint8_t type = 0;

  auto operator<=>(const MeterKey&) const = default;
};

struct TranscriptEntry {
  PartyId peer = 0;
  Direction direction = Direction::kSent;
  SessionId session{};
  uint8_t type = 0;
  uint64_t frame_bytes = 0;
};

// Byte counters for one endpoint. Thread-safe.
class Meter {
 public:
  void Record(PartyId peer, Direction direction, const Envelope& envelope,
              ByteView frame);

  uint64_t Total(Direction direction) const;
  uint64_t ProtocolBytes(Direction direction) const;
  uint64_t SetupBytes(Direction direction) const;
  std::map<uint8_t, uint64_t> PerType(Direction direction) const;
  std::map<MeterKey, uint64_t> counters() const;
  std::vector<TranscriptEntry> transcript() const;
  // Hash chain over every frame exchanged with `peer` in one direction.
  crypto::Digest TranscriptDigest(PartyId peer, Direction direction) const;

 private:
  mutable std::mutex mu_;
  std::map<MeterKey, uint64_t> counters_;
  uint64_t totals_[2] = {0, 0};
  std::vector<TranscriptEntry> transcript_;
  std::map<std::pair<PartyId, Direction>, crypto::Digest> chains_;
};

struct Delivery {
  PartyId from = 0;
  Envelope envelope;
};

// One party's view of the network. Safe for one sending and one receiving
// thread at a time; delivery is FIFO per directed pair.
class Endpoint {
 public:
  Endpoint(PartyId self, std::vector<PartyId> peers,
           size_t max_payload = kDefaultMaxPayload);
  virtual ~Endpoint() = default;
  Endpoint(const Endpoint&) = delete;
  Endpoint& operator=(const Endpoint&) = delete;

  PartyId self() const { return self_; }
  const std::vector<PartyId>& peers() const { return peers_; }

  // Throws DomainError for oversized payloads and TransportError when this
  // endpoint or the peer's connection is closed.
  void Send(PartyId to, const Envelope& envelope);

  // Next envelope from any peer; std::nullopt on timeout. Throws
  // TransportError when nothing is queued and every peer has closed.
  std::optional<Delivery> Recv(Duration timeout);

  // Next envelope from `from`, or from anyone if its type is listed in
  // `also_accept`. Other envelopes stay queued in order. Throws
  // TransportError when nothing matches and `from` has closed.
  std::optional<Delivery> RecvFrom(PartyId from, Duration timeout,
                                   std::span<const uint8_t> also_accept = {});

  virtual void Close();
  bool closed() const;

  Meter& meter() { return meter_; }
  const Meter& meter() const { return meter_; }

 protected:
  virtual void Transmit(PartyId to, const Bytes& frame) = 0;

  // Backend callbacks; may run on any thread.
  void Deliver(PartyId from, Bytes frame);
  void MarkPeerClosed(PartyId from);
  void MarkClosed();

  size_t max_payload() const { return max_payload_; }

 private:
  template <typename Pred>
  std::optional<Delivery> Take(Pred match, Duration timeout,
                               const std::vector<PartyId>& watched);

  PartyId self_;
  std::vector<PartyId> peers_;
  size_t max_payload_;
  Meter meter_;

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Delivery> queue_;
  std::set<PartyId> closed_peers_;
  bool closed_ = false;
};

// In-process backend: one mailbox per party, same topology as TCP.
class InProcBus {
 public:
  explicit InProcBus(const std::vector<PartyId>& parties,
                     size_t max_payload = kDefaultMaxPayload);
  ~InProcBus();

  Endpoint& endpoint(PartyId id);

 private:
  class Link;
  std::map<PartyId, std::unique_ptr<Link>> links_;
};

}  // namespace authpsi::transport
