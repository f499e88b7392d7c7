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
#include <map>
#include <span>
#include <vector>

#include "authpsi/bytes.h"
#include "authpsi/crypto.h"
#include "authpsi/gf128.h"

// XOR zero-sharing: every pair of participants shares one PRF key, and a
// party's share of x is the XOR of its n - 1 keyed PRF evaluations. When all
// participants hold x, each term appears exactly twice and the shares cancel.
namespace authpsi::zeroshare {

using PartyIndex = uint16_t;
using PairKey = Block16;

struct PairSeed {
  PartyIndex low = 0;   // generator of the seed
  PartyIndex high = 0;
  PairKey seed{};

  bool operator==(const PairSeed&) const = default;
};

struct ZsKeySet {
  PartyIndex party_index = 0;
  std::map<PartyIndex, PairKey> keys;  // counterpart -> shared seed
};

// Seeds that `self` generates: one per higher-indexed participant.
std::vector<PairSeed> GenerateSeeds(PartyIndex self,
                                    std::span<const PartyIndex> participants,
                                    crypto::Prg& rng);

// Seeds for every unordered pair of 1..n, each generated by its lower index.
std::vector<PairSeed> GenerateAllSeeds(PartyIndex n, crypto::Prg& rng);

// Builds `self`'s key set from the seeds it generated and received. Throws
// ConfigError if any counterpart's seed is missing.
ZsKeySet BuildKeySet(PartyIndex self, std::span<const PartyIndex> participants,
                     std::span<const PairSeed> seeds);

// Key sets for every participant of 1..n (n >= 2).
std::vector<ZsKeySet> Setup(PartyIndex n, std::span<const PairSeed> seeds);

// F_k(x): HMAC-SHA256 truncated to 64 bits.
XorValue Prf(const PairKey& key, ByteView x);

XorValue Share(const ZsKeySet& keys, ByteView x);

// Seed-exchange message: low (2B BE) || high (2B BE) || seed (16B).
Bytes SerializePairSeed(const PairSeed& seed);
PairSeed ParsePairSeed(ByteView bytes);

}  // namespace authpsi::zeroshare
