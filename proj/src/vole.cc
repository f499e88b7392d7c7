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

#include "authpsi/vole.h"

#include "authpsi/errors.h"

namespace authpsi::vole {

namespace {

void CheckSeed(const VoleSeed& seed) {
  if (seed.length == 0) throw DomainError("VOLE length must be positive");
  if (seed.role == Role::kSender) {
    if (!seed.delta) throw DomainError("sender VOLE seed lacks delta");
    if (!seed.correction.empty()) {
      throw DomainError("sender VOLE seed carries a correction vector");
    }
  } else {
    if (seed.delta) throw DomainError("receiver VOLE seed carries delta");
    if (seed.correction.size() != seed.length) {
      throw DomainError("receiver VOLE correction has wrong length");
    }
  }
}

}  // namespace

std::vector<Gf128> ExpandVector(const Block32& seed, uint32_t length) {
  crypto::Prg stream(seed);
  std::vector<Gf128> out(length);
  for (auto& v : out) {
    uint64_t lo = stream.NextU64();
    v = Gf128(lo, stream.NextU64());
  }
  return out;
}

SeedPair GenSeedWithDelta(uint32_t length, const SessionId& session,
                          Gf128 delta, crypto::Prg& rng) {
  if (length == 0) throw DomainError("VOLE length must be positive");
  SeedPair pair;
  pair.receiver.role = Role::kReceiver;
  pair.receiver.session_id = session;
  pair.receiver.length = length;
  rng.Fill(pair.receiver.expansion_seed);
  pair.sender.role = Role::kSender;
  pair.sender.session_id = session;
  pair.sender.length = length;
  rng.Fill(pair.sender.expansion_seed);
  pair.sender.delta = delta;

  auto a = ExpandVector(pair.receiver.expansion_seed, length);
  auto b = ExpandVector(pair.sender.expansion_seed, length);
  pair.receiver.correction.resize(length);
  for (uint32_t i = 0; i < length; ++i) {
    pair.receiver.correction[i] = a[i] * delta + b[i];
  }
  return pair;
}

SeedPair GenSeed(uint32_t length, const SessionId& session, crypto::Prg& rng) {
  uint64_t lo = rng.NextU64();
  Gf128 delta(lo, rng.NextU64());
  return GenSeedWithDelta(length, session, delta, rng);
}

SeedPair GenSeed(uint32_t length, crypto::Prg& rng) {
  SessionId session{};
  rng.Fill(session);
  return GenSeed(length, session, rng);
}

ReceiverCorrelation ExtendReceiver(const VoleSeed& seed) {
  CheckSeed(seed);
  if (seed.role != Role::kReceiver) {
    throw DomainError("expected a receiver VOLE seed");
  }
  return {ExpandVector(seed.expansion_seed, seed.length), seed.correction};
}

SenderCorrelation ExtendSender(const VoleSeed& seed) {
  CheckSeed(seed);
  if (seed.role != Role::kSender) {
    throw DomainError("expected a sender VOLE seed");
  }
  return {ExpandVector(seed.expansion_seed, seed.length), *seed.delta};
}

std::variant<ReceiverCorrelation, SenderCorrelation> Extend(
    const VoleSeed& seed) {
  if (seed.role == Role::kReceiver) return ExtendReceiver(seed);
  return ExtendSender(seed);
}

SeedPair DealerBackend::Generate(uint32_t length, const SessionId& session) {
  if (forced_delta_) {
    return GenSeedWithDelta(length, session, *forced_delta_, rng_);
  }
  return GenSeed(length, session, rng_);
}

Bytes SerializeSeed(const VoleSeed& seed) {
  CheckSeed(seed);
  ByteWriter w;
  w.Raw(seed.session_id);
  w.U8(static_cast<uint8_t>(seed.role));
  w.U32(seed.length);
  w.Raw(seed.expansion_seed);
  if (seed.role == Role::kSender) {
    w.Raw(seed.delta->ToBytes());
  } else {
    for (const auto& c : seed.correction) w.Raw(c.ToBytes());
  }
  return w.Take();
}

VoleSeed ParseSeed(ByteView bytes) {
  ByteReader r(bytes);
  VoleSeed seed;
  seed.session_id = r.Fixed<16>();
  uint8_t role = r.U8();
  if (role > 0x01) throw DomainError("invalid VOLE role byte");
  seed.role = static_cast<Role>(role);
  seed.length = r.U32();
  seed.expansion_seed = r.Fixed<32>();
  if (seed.role == Role::kSender) {
    seed.delta = Gf128::FromBytes(r.Raw(Gf128::kBytes));
  } else {
    if (r.remaining() / Gf128::kBytes < seed.length) {
      throw DomainError("truncated VOLE correction vector");
    }
    seed.correction.resize(seed.length);
    for (auto& c : seed.correction) c = Gf128::FromBytes(r.Raw(Gf128::kBytes));
  }
  r.ExpectEnd();
  CheckSeed(seed);
  return seed;
}

}  // namespace authpsi::vole
