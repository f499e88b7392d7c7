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

#include "authpsi/psin.h"

#include <algorithm>

#include "authpsi/errors.h"

namespace authpsi::psin {
namespace {

namespace msg = transport::msg;

constexpr uint8_t kGroupPrfTag = 0x46;
constexpr size_t kRootBytes = 37;

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

Bytes LeafSalt(const Config& c) {
  return c.salted ? Bytes(c.session.begin(), c.session.end()) : Bytes{};
}

}  // namespace

Topology Topology::Make(uint16_t n, uint16_t t) {
  if (t < 1 || t > (n + 1) / 2) {
    throw ConfigError("collusion bound must satisfy 1 <= t <= n/2 (got n=" +
                      std::to_string(n) + ", t=" + std::to_string(t) + ")");
  }
  if (n - t < 2) throw ConfigError("v = n - t must be at least 2");
  return {n, t, static_cast<uint16_t>(n - t)};
}

std::vector<PartyId> Topology::Parties() const {
  std::vector<PartyId> out(n);
  for (uint16_t i = 0; i < n; ++i) out[i] = i + 1;
  return out;
}

std::vector<PartyId> Topology::ZeroShareGroup() const {
  std::vector<PartyId> out;
  for (PartyId i = v; i <= n; ++i) out.push_back(i);
  return out;
}

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

XorValue GroupPrf(const Block16& key, ByteView element) {
  Bytes data;
  data.reserve(element.size() + 1);
  data.push_back(kGroupPrfTag);
  data.insert(data.end(), element.begin(), element.end());
  return XorValue(crypto::Prf64(key, data));
}

XorValue XorPrf(std::span<const Block16> keys, ByteView element) {
  XorValue acc;
  for (const auto& k : keys) acc ^= GroupPrf(k, element);
  return acc;
}

XorValue XorDecode(std::span<const okvs::OkvsTable> tables, ByteView element) {
  XorValue acc;
  for (const auto& t : tables) acc ^= XorValue::Truncate(okvs::Decode(t, element));
  return acc;
}

Engine::Engine(Config config, crypto::Prg rng)
    : config_(std::move(config)), rng_(std::move(rng)) {
  const Topology& topo = config_.topology;
  Topology::Make(topo.n, topo.t);  // validates
  if (topo.v != topo.n - topo.t) throw ConfigError("inconsistent topology");
  if (config_.index < 1 || config_.index > topo.n) {
    throw ConfigError("party index out of range");
  }
  if (config_.roots.size() != topo.n) {
    throw ConfigError("expected one announced root per party");
  }
  if (config_.input.empty()) throw ConfigError("input set must be nonempty");
  for (const auto& r : config_.roots) {
    if (r.set_size != config_.input.size()) {
      throw ConfigError("all parties must hold sets of equal size");
    }
  }
  std::set<Bytes> distinct(config_.input.begin(), config_.input.end());
  if (distinct.size() != config_.input.size()) {
    throw ConfigError("input elements must be pairwise distinct");
  }
  input_ = config_.input;
  if (config_.tamper) {
    tamper::ApplyToInput(*config_.tamper, input_, rng_);
  } else if (merkle::ComputeRoot(input_, LeafSalt(config_)) !=
             config_.roots[config_.index - 1]) {
    throw ConfigError("input set does not match the announced root");
  }
}

const char* Engine::abort_step() const { return StepName(abort_phase_); }

SessionId Engine::OprfSession(PartyId sender) const {
  return opprf::DeriveSession(config_.session, sender);
}

size_t Engine::ExpectedSeeds() const {
  // One seed per other member of P_v..P_n.
  return config_.topology.n - config_.topology.v;
}

void Engine::Send(std::vector<Outgoing>& out, PartyId to, uint8_t type,
                  Bytes payload) const {
  out.push_back({to, {config_.session, type, std::move(payload)}});
}

std::vector<Outgoing> Engine::Start() {
  if (phase_ != Phase::kFresh) throw ProtocolError("transform runs once");
  const Topology& topo = config_.topology;
  const PartyId self = config_.index;
  std::vector<Outgoing> out;

  merkle::Tree tree = merkle::BuildTree(input_, LeafSalt(config_));
  std::vector<merkle::InclusionProof> proofs;
  proofs.reserve(input_.size());
  for (uint32_t q = 0; q < input_.size(); ++q) proofs.push_back(tree.Path(q));
  if (config_.tamper) tamper::ApplyToProofs(*config_.tamper, proofs);
  ByteWriter w;
  w.Raw(merkle::SerializeRoot(config_.roots[self - 1]));
  w.Raw(merkle::EncodeProofSet(proofs));
  Bytes proof_msg = w.Take();
  for (PartyId p : topo.Parties()) {
    if (p != self) Send(out, p, msg::kProofsN, proof_msg);
  }

  if (topo.InGroupA(self)) {
    std::vector<Block16> keys;
    for (PartyId j = topo.v + 1; j <= topo.n; ++j) {
      Block16 k = rng_.NextBlock<16>();
      keys_sent_[j] = k;
      keys.push_back(k);
      ByteWriter kw;
      kw.U16(self);
      kw.U16(j);
      kw.Raw(k);
      Send(out, j, msg::kGroupKey, kw.Take());
    }
    std::vector<Gf128> values;
    values.reserve(input_.size());
    for (const auto& x : input_) values.push_back(XorPrf(keys, x).Embed());
    auto params = okvs::OkvsParams::ForSize(static_cast<uint32_t>(input_.size()),
                                            rng_.NextBlock<16>(), config_.lambda);
    auto encoded = okvs::EncodeWithRetry(input_, values, params,
                                         config_.okvs_attempts, rng_);
    if (!encoded) {
      return AbortAll("OKVS encoding failed after retries", 0);
    }
    Send(out, topo.v, msg::kShareTable, okvs::SerializeTable(encoded->table));
  } else {
    auto group = topo.ZeroShareGroup();
    for (const auto& s : zeroshare::GenerateSeeds(self, group, rng_)) {
      seeds_.push_back(s);
      Send(out, s.high, msg::kZeroShareSeed, zeroshare::SerializePairSeed(s));
    }
    if (topo.ProgramsOpprf(self)) {
      Send(out, transport::kDealer, msg::kOprfDealer,
           opprf::EncodeKeyRequest(OprfSession(self)));
    }
  }
  phase_ = Phase::kTransformed;
  clock_.Mark("transform");
  return out;
}

std::vector<Outgoing> Engine::Handle(PartyId from,
                                     const transport::Envelope& envelope) {
  if (phase_ == Phase::kAborted) return {};  // late traffic is discarded
  if (envelope.type == msg::kAbortN) {
    return AbortAll("party " + std::to_string(from) + " aborted: " +
                        std::string(envelope.payload.begin(), envelope.payload.end()),
                    from);
  }
  if (phase_ == Phase::kDone) return {};
  try {
    if (phase_ == Phase::kFresh) throw ProtocolError("message before transform");
    if (envelope.session != config_.session) {
      throw ProtocolError("message for a different session");
    }
    auto out = Dispatch(from, envelope);
    if (phase_ == Phase::kAborted) return out;
    auto more = Advance();
    out.insert(out.end(), std::make_move_iterator(more.begin()),
               std::make_move_iterator(more.end()));
    return out;
  } catch (const ProtocolError& e) {
    return AbortAll(e.what(), 0);
  } catch (const DomainError& e) {
    return AbortAll(std::string("malformed message: ") + e.what(), 0);
  }
}

std::vector<Outgoing> Engine::Dispatch(PartyId from,
                                       const transport::Envelope& envelope) {
  const Topology& topo = config_.topology;
  const PartyId self = config_.index;
  const bool from_party = from >= 1 && from <= topo.n && from != self;
  std::vector<Outgoing> out;
  ByteReader r(envelope.payload);

  switch (envelope.type) {
    case msg::kProofsN: {
      if (!from_party || verified_.contains(from)) {
        throw ProtocolError("unexpected proof set from party " + std::to_string(from));
      }
      const merkle::Root& expected = config_.roots[from - 1];
      bool ok = false;
      try {
        merkle::Root root = merkle::ParseRoot(r.Raw(kRootBytes));
        auto proofs = merkle::DecodeProofSet(r.Raw(r.remaining()));
        ok = root == expected && merkle::VerifyProofSet(expected, proofs);
      } catch (const DomainError&) {
        ok = false;
      }
      if (!ok) {
        return AbortAll("proofs of party " + std::to_string(from) +
                            " do not verify against its announced root",
                        0);
      }
      verified_.insert(from);
      break;
    }
    case msg::kGroupKey: {
      uint16_t i = r.U16();
      uint16_t j = r.U16();
      Block16 key = r.Fixed<16>();
      r.ExpectEnd();
      if (!topo.InGroupB(self) || !topo.InGroupA(from) || i != from || j != self ||
          keys_received_.contains(from)) {
        throw ProtocolError("unexpected group key from party " + std::to_string(from));
      }
      keys_received_[from] = key;
      break;
    }
    case msg::kShareTable: {
      if (!topo.IsCoordinator(self) || !topo.InGroupA(from) || tables_.contains(from)) {
        throw ProtocolError("unexpected share table from party " + std::to_string(from));
      }
      okvs::OkvsTable table = okvs::ParseTable(envelope.payload);
      if (table.params.n != config_.input.size()) {
        throw ProtocolError("share table size does not match the set size");
      }
      tables_[from] = std::move(table);
      break;
    }
    case msg::kZeroShareSeed: {
      zeroshare::PairSeed s = zeroshare::ParsePairSeed(envelope.payload);
      if (self < topo.v || from < topo.v || from > topo.n || s.low != from ||
          s.high != self) {
        throw ProtocolError("unexpected zero-sharing seed from party " +
                            std::to_string(from));
      }
      for (const auto& have : seeds_) {
        if (have.low == s.low && have.high == s.high) {
          throw ProtocolError("duplicate zero-sharing seed");
        }
      }
      seeds_.push_back(s);
      break;
    }
    case msg::kHint: {
      if (!topo.IsOutputParty(self) || !topo.ProgramsOpprf(from) || hints_.contains(from)) {
        throw ProtocolError("unexpected OPPRF hint from party " + std::to_string(from));
      }
      opprf::OpprfHint hint = opprf::ParseHint(envelope.payload);
      if (hint.oprf_session != OprfSession(from)) {
        throw ProtocolError("OPPRF hint carries the wrong session");
      }
      hints_[from] = std::move(hint);
      Send(out, transport::kDealer, msg::kOprfDealer,
           opprf::EncodeQuery(OprfSession(from), input_));
      break;
    }
    case msg::kOprfDealer: {
      if (from != transport::kDealer) throw ProtocolError("OPRF traffic must come from the dealer");
      opprf::DealerMessage m = opprf::ParseDealerMessage(envelope.payload);
      if (m.op == opprf::DealerOp::kKeyResponse && topo.ProgramsOpprf(self) &&
          m.session == OprfSession(self) && !oprf_key_) {
        oprf_key_ = m.key;
        break;
      }
      if (m.op == opprf::DealerOp::kResponse && topo.IsOutputParty(self)) {
        for (const auto& [sender, hint] : hints_) {
          if (hint.oprf_session != m.session || opprf_outputs_.contains(sender)) continue;
          if (m.values.size() != input_.size()) {
            throw ProtocolError("OPRF response length mismatch");
          }
          opprf_outputs_[sender] =
              opprf::QueryBatch(hint, input_, {m.session, std::move(m.values)});
          return out;
        }
      }
      throw ProtocolError("unexpected OPRF dealer message");
    }
    default:
      throw ProtocolError("unexpected message type " + std::to_string(envelope.type));
  }
  return out;
}

std::vector<Outgoing> Engine::Advance() {
  const Topology& topo = config_.topology;
  const PartyId self = config_.index;
  std::vector<Outgoing> out;
  if (verified_.size() + 1 < topo.n) return out;  // interaction needs every proof set

  if (topo.InGroupA(self)) {
    // Everything this party contributes was sent during transform.
    clock_.Mark("interact");
    phase_ = Phase::kDone;
    return out;
  }

  if (!shares_ready_) {
    if (topo.IsCoordinator(self) && tables_.size() + 1 == topo.v) {
      std::vector<okvs::OkvsTable> tables;
      for (auto& [i, t] : tables_) tables.push_back(t);
      for (const auto& x : input_) shares_.push_back(XorDecode(tables, x));
      shares_ready_ = true;
    } else if (topo.InGroupB(self) && keys_received_.size() + 1 == topo.v) {
      std::vector<Block16> keys;
      for (auto& [i, k] : keys_received_) keys.push_back(k);
      for (const auto& x : input_) shares_.push_back(XorPrf(keys, x));
      shares_ready_ = true;
    }
    if (!shares_ready_) return out;
    phase_ = Phase::kInteracted;
    clock_.Mark("interact");
  }

  if (!zs_keys_) {
    if (seeds_.size() != ExpectedSeeds()) return out;
    zs_keys_ = zeroshare::BuildKeySet(self, topo.ZeroShareGroup(), seeds_);
  }

  if (topo.ProgramsOpprf(self)) {
    if (!oprf_key_) return out;
    opprf::ProgrammedPoints points;
    points.xs = input_;
    points.ys.reserve(input_.size());
    for (size_t q = 0; q < input_.size(); ++q) {
      points.ys.push_back(zeroshare::Share(*zs_keys_, input_[q]) ^ shares_[q]);
    }
    opprf::OpprfHint hint = opprf::Program(points, OprfSession(self), *oprf_key_,
                                           rng_, config_.okvs_attempts);
    Send(out, topo.n, msg::kHint, opprf::SerializeHint(hint));
    clock_.Mark("reconstruct");
    phase_ = Phase::kDone;
    return out;
  }

  // Output party: wait for every OPPRF answer.
  if (opprf_outputs_.size() != static_cast<size_t>(topo.n - topo.v)) return out;
  std::vector<Bytes> result;
  for (size_t q = 0; q < input_.size(); ++q) {
    XorValue lhs = zeroshare::Share(*zs_keys_, input_[q]) ^ shares_[q];
    XorValue rhs;
    for (const auto& [i, z] : opprf_outputs_) rhs ^= z[q];
    if (lhs == rhs) result.push_back(input_[q]);
  }
  intersection_ = std::move(result);
  clock_.Mark("reconstruct");
  phase_ = Phase::kDone;
  return out;
}

std::vector<Outgoing> Engine::AbortAll(std::string reason, PartyId skip) {
  std::vector<Outgoing> out;
  if (phase_ == Phase::kAborted) return out;
  abort_phase_ = phase_;
  abort_reason_ = std::move(reason);
  phase_ = Phase::kAborted;
  intersection_.reset();
  for (PartyId p : config_.topology.Parties()) {
    if (p == config_.index || p == skip) continue;
    Send(out, p, msg::kAbortN, Bytes(abort_reason_.begin(), abort_reason_.end()));
  }
  return out;
}

Outcome Drive(transport::Endpoint& endpoint, Engine& engine,
              transport::Duration timeout) {
  // A peer can leave while this party is still sending: every party that
  // aborts broadcasts its notice before closing, so a failed send is only
  // fatal if no abort notice follows.
  std::optional<TransportError> send_failure;
  auto flush = [&](std::vector<Outgoing> out) {
    for (auto& o : out) {
      try {
        endpoint.Send(o.to, o.envelope);
      } catch (const TransportError& e) {
        if (o.envelope.type != msg::kAbortN && !send_failure) send_failure = e;
      }
    }
  };
  flush(engine.Start());
  while (!engine.terminal()) {
    std::optional<transport::Delivery> d;
    try {
      d = endpoint.Recv(timeout);
    } catch (const TransportError&) {
      if (send_failure) throw *send_failure;
      throw;
    }
    if (!d) {
      if (send_failure) throw *send_failure;
      throw TransportError("timed out waiting for protocol messages");
    }
    flush(engine.Handle(d->from, d->envelope));
  }
  Outcome out;
  out.aborted = engine.phase() == Phase::kAborted;
  if (out.aborted) {
    out.abort_phase = engine.abort_step();
    out.abort_reason = engine.abort_reason();
  }
  out.intersection = engine.intersection();
  out.phase_ms = engine.phase_ms();
  return out;
}

Outcome RunParty(transport::Endpoint& endpoint, const Config& config,
                 crypto::Prg rng, transport::Duration timeout) {
  Engine engine(config, std::move(rng));
  return Drive(endpoint, engine, timeout);
}

}  // namespace authpsi::psin
