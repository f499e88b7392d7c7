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

#include "authpsi/psi2.h"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "authpsi/dealer.h"
#include "authpsi/errors.h"
#include "authpsi/report.h"

namespace authpsi::psi2 {
namespace {

namespace msg = transport::msg;

constexpr uint8_t kFieldTag = 0x42;
constexpr uint8_t kOutputTag = 0x4F;
constexpr size_t kRootBytes = 37;

// Name of the protocol step that runs while the engine is in `phase`.
const char* StepName(Phase phase) {
  switch (phase) {
    case Phase::kFresh:
      return "transform";
    case Phase::kTransformed:
      return "interact";
    case Phase::kInteracted:
      return "reconstruct";
    default:
      return "done";
  }
}

void CheckDistinct(const std::vector<Bytes>& input) {
  if (input.empty()) throw DomainError("input set must be nonempty");
  std::set<Bytes> seen(input.begin(), input.end());
  if (seen.size() != input.size()) {
    throw DomainError("input elements must be pairwise distinct");
  }
}

}  // namespace

const char* PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kFresh:
      return "fresh";
    case Phase::kTransformed:
      return "transformed";
    case Phase::kInteracted:
      return "interacted";
    case Phase::kDone:
      return "done";
    case Phase::kAborted:
      return "aborted";
  }
  return "unknown";
}

Gf128 HashToField(ByteView element) {
  const uint8_t tag = kFieldTag;
  auto digest = crypto::Hash({ByteView(&tag, 1), element});
  return Gf128::FromBytes(ByteView(digest).first(16));
}

Bytes OutputHash(const Gf128& value, size_t out_bytes) {
  const uint8_t tag = kOutputTag;
  auto encoded = value.ToBytes();
  auto digest = crypto::Hash({ByteView(&tag, 1), encoded});
  if (out_bytes == 0 || out_bytes > digest.size()) {
    throw DomainError("output hash width must be 1..32 bytes");
  }
  return Bytes(digest.begin(), digest.begin() + static_cast<ptrdiff_t>(out_bytes));
}

uint32_t OutBits(uint64_t nx, uint64_t ny, uint32_t lambda) {
  if (nx == 0 || ny == 0) throw DomainError("set sizes must be positive");
  unsigned __int128 product = static_cast<unsigned __int128>(nx) * ny;
  uint32_t log2 = 0;
  while ((static_cast<unsigned __int128>(1) << log2) < product) ++log2;
  uint32_t bits = lambda + log2;
  return (bits + 7) / 8 * 8;
}

std::vector<Gf128> MaskSenderVector(std::span<const Gf128> b,
                                    std::span<const Gf128> a_prime, Gf128 delta) {
  if (b.size() != a_prime.size()) throw ProtocolError("VOLE length mismatch");
  std::vector<Gf128> out(b.size());
  for (size_t i = 0; i < b.size(); ++i) out[i] = b[i] + a_prime[i] * delta;
  return out;
}

Gf128 SenderValue(const okvs::OkvsParams& params, std::span<const Gf128> b_prime,
                  Gf128 delta, ByteView element) {
  return okvs::Decode(params, b_prime, element) + delta * HashToField(element);
}

Bytes LeafSalt(const SessionId& session, bool salted) {
  return salted ? Bytes(session.begin(), session.end()) : Bytes{};
}

merkle::Root Commit(std::span<const Bytes> input, const SessionId& session,
                    bool salted) {
  return merkle::ComputeRoot(input, LeafSalt(session, salted));
}

Bytes EncodeDigests(const std::vector<Bytes>& digests, size_t out_bytes) {
  ByteWriter w;
  w.U32(static_cast<uint32_t>(digests.size()));
  for (const auto& d : digests) {
    if (d.size() != out_bytes) throw DomainError("digest width mismatch");
    w.Raw(d);
  }
  return w.Take();
}

std::vector<Bytes> DecodeDigests(ByteView payload, size_t out_bytes) {
  ByteReader r(payload);
  uint32_t count = r.U32();
  if (r.remaining() != size_t{count} * out_bytes) {
    throw DomainError("digest set length mismatch");
  }
  std::vector<Bytes> out;
  out.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    auto v = r.Raw(out_bytes);
    out.emplace_back(v.begin(), v.end());
  }
  return out;
}

Engine::Engine(Config config, crypto::Prg rng)
    : config_(std::move(config)), rng_(std::move(rng)) {
  CheckDistinct(config_.input);
}

void Engine::Expect(Phase phase, Role role, const char* what) const {
  if (phase_ != phase || config_.role != role) {
    throw ProtocolError(std::string(what) + " is not valid in phase " +
                        PhaseName(phase_));
  }
}

size_t Engine::out_bytes() const {
  return OutBits(config_.announced_root.set_size, config_.peer_root.set_size,
                 config_.lambda) / 8;
}

std::optional<Bytes> Engine::Transform() {
  if (phase_ != Phase::kFresh) throw ProtocolError("transform runs once");
  Bytes salt = LeafSalt(config_.session, config_.salted);
  input_ = config_.input;
  if (config_.tamper) {
    tamper::ApplyToInput(*config_.tamper, input_, rng_);
  } else if (merkle::ComputeRoot(input_, salt) != config_.announced_root) {
    throw ConfigError("input set does not match the announced root");
  }

  merkle::Tree tree = merkle::BuildTree(input_, salt);
  std::vector<merkle::InclusionProof> proofs;
  proofs.reserve(input_.size());
  for (uint32_t i = 0; i < input_.size(); ++i) proofs.push_back(tree.Path(i));
  if (config_.tamper) tamper::ApplyToProofs(*config_.tamper, proofs);

  if (config_.role == Role::kReceiver) {
    std::vector<Gf128> values;
    values.reserve(input_.size());
    for (const auto& x : input_) values.push_back(HashToField(x));
    auto params = okvs::OkvsParams::ForSize(static_cast<uint32_t>(input_.size()),
                                            rng_.NextBlock<16>(), config_.lambda);
    auto encoded = okvs::EncodeWithRetry(input_, values, params,
                                         config_.okvs_attempts, rng_);
    if (!encoded) {
      Abort("OKVS encoding failed after retries");
      return std::nullopt;
    }
    table_ = std::move(encoded->table);
  }

  ByteWriter w;
  w.Raw(merkle::SerializeRoot(config_.announced_root));
  w.Raw(merkle::EncodeProofSet(proofs));
  phase_ = Phase::kTransformed;
  return w.Take();
}

bool Engine::AcceptPeerProofs(ByteView payload) {
  if (phase_ != Phase::kTransformed || peer_verified_) {
    throw ProtocolError("peer proofs are not expected now");
  }
  bool ok = false;
  try {
    ByteReader r(payload);
    merkle::Root root = merkle::ParseRoot(r.Raw(kRootBytes));
    auto proofs = merkle::DecodeProofSet(r.Raw(r.remaining()));
    ok = root == config_.peer_root &&
         merkle::VerifyProofSet(config_.peer_root, proofs);
  } catch (const DomainError&) {
    ok = false;
  }
  if (!ok) {
    Abort("peer proofs do not verify against the announced root");
    return false;
  }
  peer_verified_ = true;
  return true;
}

uint32_t Engine::vole_length() const {
  Expect(Phase::kTransformed, Role::kReceiver, "vole_length");
  return static_cast<uint32_t>(table_.values.size());
}

Bytes Engine::MaskTable(const vole::ReceiverCorrelation& correlation) {
  Expect(Phase::kTransformed, Role::kReceiver, "MaskTable");
  if (!peer_verified_) throw ProtocolError("peer proofs not verified yet");
  if (correlation.a_vec.size() != table_.values.size() ||
      correlation.c_vec.size() != table_.values.size()) {
    throw ProtocolError("VOLE length mismatch");
  }
  okvs::OkvsTable masked{table_.params, {}};
  masked.values.resize(table_.values.size());
  for (size_t i = 0; i < masked.values.size(); ++i) {
    masked.values[i] = correlation.a_vec[i] + table_.values[i];
  }
  correlation_ = correlation;
  phase_ = Phase::kInteracted;
  return okvs::SerializeTable(masked);
}

Bytes Engine::RespondDigests(ByteView masked_table,
                             const vole::SenderCorrelation& correlation) {
  Expect(Phase::kTransformed, Role::kSender, "RespondDigests");
  if (!peer_verified_) throw ProtocolError("peer proofs not verified yet");
  okvs::OkvsTable a_prime;
  try {
    a_prime = okvs::ParseTable(masked_table);
  } catch (const DomainError& e) {
    throw ProtocolError(std::string("malformed masked table: ") + e.what());
  }
  if (a_prime.params.n != config_.peer_root.set_size) {
    throw ProtocolError("masked table does not match the peer's set size");
  }
  auto b_prime = MaskSenderVector(correlation.b_vec, a_prime.values, correlation.delta);

  const size_t width = out_bytes();
  std::vector<Bytes> digests;
  digests.reserve(input_.size());
  for (const auto& y : input_) {
    digests.push_back(OutputHash(
        SenderValue(a_prime.params, b_prime, correlation.delta, y), width));
  }
  // Fisher-Yates, so the order reveals nothing about the sender's set.
  for (size_t i = digests.size(); i > 1; --i) {
    std::swap(digests[i - 1], digests[rng_.Uniform(i)]);
  }
  phase_ = Phase::kDone;
  return EncodeDigests(digests, width);
}

std::vector<Bytes> Engine::Reconstruct(ByteView payload) {
  Expect(Phase::kInteracted, Role::kReceiver, "Reconstruct");
  const size_t width = out_bytes();
  std::vector<Bytes> digests;
  try {
    digests = DecodeDigests(payload, width);
  } catch (const DomainError& e) {
    throw ProtocolError(std::string("malformed digest set: ") + e.what());
  }
  if (digests.size() != config_.peer_root.set_size) {
    throw ProtocolError("digest count differs from the peer's set size");
  }
  std::unordered_set<std::string> lookup;
  for (const auto& d : digests) lookup.emplace(d.begin(), d.end());
  std::vector<Bytes> out;
  for (const auto& x : input_) {
    Bytes d = OutputHash(okvs::Decode(table_.params, correlation_.c_vec, x), width);
    if (lookup.contains(std::string(d.begin(), d.end()))) out.push_back(x);
  }
  phase_ = Phase::kDone;
  return out;
}

void Engine::Abort(std::string reason) {
  if (phase_ == Phase::kAborted) return;
  abort_phase_ = phase_;
  abort_reason_ = std::move(reason);
  phase_ = Phase::kAborted;
}

namespace {

transport::Delivery Await(transport::Endpoint& endpoint, transport::PartyId from,
                          const SessionId& session, transport::Duration timeout) {
  static constexpr uint8_t kAbort[] = {msg::kAbort2};
  auto d = endpoint.RecvFrom(from, timeout, kAbort);
  if (!d) {
    throw TransportError("timed out waiting for party " + std::to_string(from));
  }
  if (d->envelope.session != session) {
    throw ProtocolError("message for a different session");
  }
  return std::move(*d);
}

vole::VoleSeed ParseDealerSeed(const transport::Delivery& d, vole::Role role) {
  vole::VoleSeed seed;
  try {
    seed = vole::ParseSeed(d.envelope.payload);
  } catch (const DomainError& e) {
    throw ProtocolError(std::string("malformed dealer seed: ") + e.what());
  }
  if (seed.role != role) throw ProtocolError("dealer sent the wrong VOLE half");
  return seed;
}

void Expect(const transport::Delivery& d, uint8_t type) {
  if (d.envelope.type != type) {
    throw ProtocolError("unexpected message type " + std::to_string(d.envelope.type));
  }
}

}  // namespace

Outcome RunParty(transport::Endpoint& endpoint, const Config& config,
                 crypto::Prg rng, transport::Duration timeout) {
  const bool receiver = config.role == Role::kReceiver;
  const transport::PartyId peer = receiver ? kSenderId : kReceiverId;
  const SessionId& session = config.session;
  Engine engine(config, std::move(rng));
  report::PhaseClock clock;
  Outcome out;

  auto notify_peer = [&] {
    try {
      endpoint.Send(peer, {session, msg::kAbort2, Bytes(engine.abort_reason().begin(),
                                                        engine.abort_reason().end())});
    } catch (const TransportError&) {
      // The peer is gone; there is nobody left to tell.
    }
  };
  // Returns true if the delivery was the peer's abort notice.
  auto peer_aborted = [&](const transport::Delivery& d) {
    if (d.envelope.type != msg::kAbort2) return false;
    engine.Abort("peer aborted: " +
                 std::string(d.envelope.payload.begin(), d.envelope.payload.end()));
    return true;
  };

  try {
    auto proofs = engine.Transform();
    if (!proofs) {
      notify_peer();
    } else {
      endpoint.Send(peer, {session, msg::kProofs2, std::move(*proofs)});
      clock.Mark("transform");
      auto d = Await(endpoint, peer, session, timeout);
      if (!peer_aborted(d)) {
        Expect(d, msg::kProofs2);
        if (!engine.AcceptPeerProofs(d.envelope.payload)) {
          notify_peer();
        } else if (receiver) {
          dealer::VoleRequest req{engine.vole_length(), endpoint.self(), peer};
          endpoint.Send(transport::kDealer,
                        {session, msg::kVoleRequest, dealer::EncodeVoleRequest(req)});
          auto s = Await(endpoint, transport::kDealer, session, timeout);
          Expect(s, msg::kVoleSeed);
          vole::VoleSeed seed = ParseDealerSeed(s, vole::Role::kReceiver);
          if (seed.session_id != session || seed.length != req.length) {
            throw ProtocolError("dealer seed does not match the request");
          }
          endpoint.Send(peer, {session, msg::kMaskedTable,
                               engine.MaskTable(vole::ExtendReceiver(seed))});
          clock.Mark("interact");
          auto r = Await(endpoint, peer, session, timeout);
          if (!peer_aborted(r)) {
            Expect(r, msg::kDigests);
            out.intersection = engine.Reconstruct(r.envelope.payload);
            clock.Mark("reconstruct");
          }
        } else {
          auto a = Await(endpoint, peer, session, timeout);
          if (!peer_aborted(a)) {
            Expect(a, msg::kMaskedTable);
            auto s = Await(endpoint, transport::kDealer, session, timeout);
            Expect(s, msg::kVoleSeed);
            vole::VoleSeed seed = ParseDealerSeed(s, vole::Role::kSender);
            if (seed.session_id != session) {
              throw ProtocolError("dealer seed belongs to another session");
            }
            endpoint.Send(peer, {session, msg::kDigests,
                                 engine.RespondDigests(a.envelope.payload,
                                                       vole::ExtendSender(seed))});
            clock.Mark("interact");
          }
        }
      }
    }
  } catch (const ProtocolError& e) {
    engine.Abort(e.what());
    notify_peer();
  }

  if (engine.phase() == Phase::kAborted) {
    out.aborted = true;
    out.abort_phase = StepName(engine.abort_phase());
    out.abort_reason = engine.abort_reason();
    out.intersection.reset();
  }
  out.phase_ms = clock.phases();
  return out;
}

}  // namespace authpsi::psi2
