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

#include "authpsi/transport.h"

#include <algorithm>
#include <limits>

#include "authpsi/errors.h"

namespace authpsi::transport {

bool IsRegisteredType(uint8_t type) {
  switch (type) {
    case msg::kProofs2:
    case msg::kMaskedTable:
    case msg::kDigests:
    case msg::kAbort2:
    case msg::kProofsN:
    case msg::kGroupKey:
    case msg::kShareTable:
    case msg::kHint:
    case msg::kOprfDealer:
    case msg::kZeroShareSeed:
    case msg::kAbortN:
    case msg::kVoleRequest:
    case msg::kVoleSeed:
      return true;
    default:
      return false;
  }
}

bool IsSetupType(uint8_t type) {
  return type == msg::kOprfDealer || type == msg::kVoleRequest ||
         type == msg::kVoleSeed;
}

Bytes EncodeFrame(const Envelope& envelope) {
  if (envelope.payload.size() >
      std::numeric_limits<uint32_t>::max() - (kFrameOverhead - 4)) {
    throw DomainError("payload too large for a frame");
  }
  ByteWriter w;
  w.U32(static_cast<uint32_t>(kFrameOverhead - 4 + envelope.payload.size()));
  w.Raw(envelope.session);
  w.U8(envelope.type);
  w.LengthPrefixed(envelope.payload);
  return w.Take();
}

Envelope DecodeFrame(ByteView frame) {
  ByteReader r(frame);
  uint32_t total = r.U32();
  if (total != r.remaining()) throw DomainError("frame length mismatch");
  Envelope env;
  env.session = r.Fixed<16>();
  env.type = r.U8();
  env.payload = r.LengthPrefixed();
  r.ExpectEnd();
  return env;
}

void Meter::Record(PartyId peer, Direction direction, const Envelope& envelope,
                   ByteView frame) {
  std::lock_guard lock(mu_);
  counters_[{envelope.session, direction, envelope.type}] += frame.size();
  totals_[static_cast<int>(direction)] += frame.size();
  transcript_.push_back(
      {peer, direction, envelope.session, envelope.type, frame.size()});
  auto& chain = chains_[{peer, direction}];
  chain = crypto::Hash({chain, frame});
}

uint64_t Meter::Total(Direction direction) const {
  std::lock_guard lock(mu_);
  return totals_[static_cast<int>(direction)];
}

uint64_t Meter::ProtocolBytes(Direction direction) const {
  uint64_t sum = 0;
  for (const auto& [type, bytes] : PerType(direction)) {
    if (!IsSetupType(type)) sum += bytes;
  }
  return sum;
}

uint64_t Meter::SetupBytes(Direction direction) const {
  uint64_t sum = 0;
  for (const auto& [type, bytes] : PerType(direction)) {
    if (IsSetupType(type)) sum += bytes;
  }
  return sum;
}

std::map<uint8_t, uint64_t> Meter::PerType(Direction direction) const {
  std::lock_guard lock(mu_);
  std::map<uint8_t, uint64_t> out;
  for (const auto& [key, bytes] : counters_) {
    if (key.direction == direction) out[key.type] += bytes;
  }
  return out;
}

std::map<MeterKey, uint64_t> Meter::counters() const {
  std::lock_guard lock(mu_);
  return counters_;
}

std::vector<TranscriptEntry> Meter::transcript() const {
  std::lock_guard lock(mu_);
  return transcript_;
}

crypto::Digest Meter::TranscriptDigest(PartyId peer,
                                       Direction direction) const {
  std::lock_guard lock(mu_);
  auto it = chains_.find({peer, direction});
  return it == chains_.end() ? crypto::Digest{} : it->second;
}

Endpoint::Endpoint(PartyId self, std::vector<PartyId> peers,
                   size_t max_payload)
    : self_(self), peers_(std::move(peers)), max_payload_(max_payload) {
  std::erase(peers_, self_);
}

void Endpoint::Send(PartyId to, const Envelope& envelope) {
  if (envelope.payload.size() > max_payload_) {
    throw DomainError("payload exceeds the endpoint limit");
  }
  if (closed()) throw TransportError("send on a closed endpoint");
  if (std::find(peers_.begin(), peers_.end(), to) == peers_.end()) {
    throw TransportError("unknown peer " + std::to_string(to));
  }
  Bytes frame = EncodeFrame(envelope);
  Transmit(to, frame);
  meter_.Record(to, Direction::kSent, envelope, frame);
}

std::optional<Delivery> Endpoint::Recv(Duration timeout) {
  return Take([](const Delivery&) { return true; }, timeout, peers_);
}

std::optional<Delivery> Endpoint::RecvFrom(PartyId from, Duration timeout,
                                           std::span<const uint8_t> also_accept) {
  auto match = [&](const Delivery& d) {
    return d.from == from ||
           std::find(also_accept.begin(), also_accept.end(),
                     d.envelope.type) != also_accept.end();
  };
  return Take(match, timeout, {from});
}

template <typename Pred>
std::optional<Delivery> Endpoint::Take(Pred match, Duration timeout,
                                       const std::vector<PartyId>& watched) {
  std::unique_lock lock(mu_);
  auto deadline = std::chrono::steady_clock::now() + timeout;
  while (true) {
    if (closed_) throw TransportError("receive on a closed endpoint");
    auto it = std::find_if(queue_.begin(), queue_.end(), match);
    if (it != queue_.end()) {
      Delivery d = std::move(*it);
      queue_.erase(it);
      return d;
    }
    bool all_closed = std::all_of(watched.begin(), watched.end(),
                                  [&](PartyId p) { return closed_peers_.contains(p); });
    if (all_closed) throw TransportError("peer closed the connection");
    if (cv_.wait_until(lock, deadline) == std::cv_status::timeout) {
      auto again = std::find_if(queue_.begin(), queue_.end(), match);
      if (again == queue_.end()) return std::nullopt;
    }
  }
}

void Endpoint::Deliver(PartyId from, Bytes frame) {
  Envelope env;
  try {
    env = DecodeFrame(frame);
  } catch (const DomainError&) {
    // A peer that cannot frame correctly is treated as gone.
    MarkPeerClosed(from);
    return;
  }
  meter_.Record(from, Direction::kReceived, env, frame);
  {
    std::lock_guard lock(mu_);
    queue_.push_back({from, std::move(env)});
  }
  cv_.notify_all();
}

void Endpoint::MarkPeerClosed(PartyId from) {
  {
    std::lock_guard lock(mu_);
    closed_peers_.insert(from);
  }
  cv_.notify_all();
}

void Endpoint::MarkClosed() {
  {
    std::lock_guard lock(mu_);
    closed_ = true;
  }
  cv_.notify_all();
}

void Endpoint::Close() { MarkClosed(); }

bool Endpoint::closed() const {
  std::lock_guard lock(mu_);
  return closed_;
}

class InProcBus::Link : public Endpoint {
 public:
  Link(InProcBus* bus, PartyId self, std::vector<PartyId> peers,
       size_t max_payload)
      : Endpoint(self, std::move(peers), max_payload), bus_(bus) {}

  void Close() override {
    if (closed()) return;
    MarkClosed();
    for (PartyId p : peers()) bus_->links_.at(p)->MarkPeerClosed(self());
  }

 protected:
  void Transmit(PartyId to, const Bytes& frame) override {
    Link& target = *bus_->links_.at(to);
    if (target.closed()) {
      throw TransportError("peer " + std::to_string(to) + " has closed");
    }
    target.Deliver(self(), frame);
  }

 private:
  friend class InProcBus;
  InProcBus* bus_;
};

InProcBus::InProcBus(const std::vector<PartyId>& parties, size_t max_payload) {
  for (PartyId p : parties) {
    if (links_.contains(p)) throw DomainError("duplicate party id");
    links_[p] = std::make_unique<Link>(this, p, parties, max_payload);
  }
}

InProcBus::~InProcBus() = default;

Endpoint& InProcBus::endpoint(PartyId id) {
  auto it = links_.find(id);
  if (it == links_.end()) throw DomainError("unknown party id");
  return *it->second;
}

}  // namespace authpsi::transport
