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

#include <string>
#include <string_view>
#include <vector>

#include "authpsi/bytes.h"
#include "authpsi/crypto.h"
#include "authpsi/merkle.h"

// Adversarial deviations applied by a party after its root is announced.
namespace authpsi::tamper {

enum class Kind : uint8_t {
  kFlipElement,   // protocol input differs from the committed element
  kFlipPath,      // one proof carries a corrupted hash
  kSwapProofs,    // two proofs exchange positions
  kExtraElement,  // the set is inflated by one element
};

struct Spec {
  Kind kind = Kind::kFlipElement;
  uint32_t i = 0;
  uint32_t j = 0;

  bool operator==(const Spec&) const = default;
};

// "flip-element:I", "flip-path:I", "swap-proofs:I,J", "extra-element".
// Throws DomainError.
Spec Parse(std::string_view text);
std::string ToString(const Spec& spec);

// Element-level deviations, applied before proofs are built from the set.
// The result stays pairwise distinct.
void ApplyToInput(const Spec& spec, std::vector<Bytes>& input, crypto::Prg& rng);

// Proof-level deviations, applied to the outgoing proof sequence. Throws
// DomainError when the sequence is too short for the requested move.
void ApplyToProofs(const Spec& spec, std::vector<merkle::InclusionProof>& proofs);

}  // namespace authpsi::tamper
