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

#include "authpsi/zeroshare.h"

#include <algorithm>

#include "authpsi/errors.h"

namespace authpsi::zeroshare {

namespace {

std::vector<PartyIndex> Range(PartyIndex n) {
  std::vector<PartyIndex> out(n);
  for (PartyIndex i = 0; i < n; ++i) out[i] = i + 1;
  return out;
}

}  // namespace

std::vector<PairSeed> GenerateSeeds(PartyIndex self,
                                    std::span<const PartyIndex> participants,
                                    crypto::Prg& rng) {
  std::vector<PairSeed> out;
  for (PartyIndex j : participants) {
    if (j <= self) continue;
    PairSeed s{self, j, {}};
    rng.Fill(s.seed);
    out.push_back(s);
  }
  return out;
}

std::vector<PairSeed> GenerateAllSeeds(PartyIndex n, crypto::Prg& rng) {
  auto parties = Range(n);
  std::vector<PairSeed> out;
  for (PartyIndex i : parties) {
    auto mine = GenerateSeeds(i, parties, rng);
    out.insert(out.end(), mine.begin(), mine.end());
  }
  return out;
}

ZsKeySet BuildKeySet(PartyIndex self, std::span<const PartyIndex> participants,
                     std::span<const PairSeed> seeds) {
  if (std::find(participants.begin(), participants.end(), self) ==
      participants.end()) {
    throw ConfigError("party " + std::to_string(self) +
                      " is not a zero-sharing participant");
  }
  ZsKeySet set;
  set.party_index = self;
  for (const auto& s : seeds) {
    if (s.low == self) set.keys[s.high] = s.seed;
    if (s.high == self) set.keys[s.low] = s.seed;
  }
  for (PartyIndex j : participants) {
    if (j != self && !set.keys.contains(j)) {
      throw ConfigError("missing zero-sharing seed for pair (" +
                        std::to_string(std::min(self, j)) + ", " +
                        std::to_string(std::max(self, j)) + ")");
    }
  }
  std::erase_if(set.keys, [&](const auto& kv) {
    return std::find(participants.begin(), participants.end(), kv.first) ==
           participants.end();
  });
  return set;
}

std::vector<ZsKeySet> Setup(PartyIndex n, std::span<const PairSeed> seeds) {
  if (n < 2) throw DomainError("zero-sharing needs at least two parties");
  auto parties = Range(n);
  std::vector<ZsKeySet> out;
  for (PartyIndex i : parties) out.push_back(BuildKeySet(i, parties, seeds));
  return out;
}

XorValue Prf(const PairKey& key, ByteView x) {
  return XorValue(crypto::Prf64(key, x));
}

XorValue Share(const ZsKeySet& keys, ByteView x) {
  XorValue acc;
  for (const auto& [j, k] : keys.keys) acc ^= Prf(k, x);
  return acc;
}

Bytes SerializePairSeed(const PairSeed& seed) {
  ByteWriter w;
  w.U16(seed.low);
  w.U16(seed.high);
  w.Raw(seed.seed);
  return w.Take();
}

PairSeed ParsePairSeed(ByteView bytes) {
  ByteReader r(bytes);
  PairSeed s;
  s.low = r.U16();
  s.high = r.U16();
  s.seed = r.Fixed<16>();
  r.ExpectEnd();
  if (s.low >= s.high) throw DomainError("pair seed indices out of order");
  return s;
}

}  // namespace authpsi::zeroshare
