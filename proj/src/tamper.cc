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

#include "authpsi/tamper.h"

#include <charconv>
#include <set>

#include "authpsi/errors.h"

namespace authpsi::tamper {
namespace {

uint32_t ParseIndex(std::string_view text) {
  uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw DomainError("invalid tamper index '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

Spec Parse(std::string_view text) {
  auto colon = text.find(':');
  std::string_view name = text.substr(0, colon);
  std::string_view args =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  Spec spec;
  if (name == "flip-element" || name == "flip-path") {
    spec.kind = name == "flip-element" ? Kind::kFlipElement : Kind::kFlipPath;
    spec.i = ParseIndex(args);
  } else if (name == "swap-proofs") {
    auto comma = args.find(',');
    if (comma == std::string_view::npos) {
      throw DomainError("swap-proofs needs two indices: swap-proofs:I,J");
    }
    spec.kind = Kind::kSwapProofs;
    spec.i = ParseIndex(args.substr(0, comma));
    spec.j = ParseIndex(args.substr(comma + 1));
  } else if (name == "extra-element") {
    if (colon != std::string_view::npos) {
      throw DomainError("extra-element takes no arguments");
    }
    spec.kind = Kind::kExtraElement;
  } else {
    throw DomainError("unknown tamper kind '" + std::string(name) + "'");
  }
  return spec;
}

std::string ToString(const Spec& spec) {
  switch (spec.kind) {
    case Kind::kFlipElement:
      return "flip-element:" + std::to_string(spec.i);
    case Kind::kFlipPath:
      return "flip-path:" + std::to_string(spec.i);
    case Kind::kSwapProofs:
      return "swap-proofs:" + std::to_string(spec.i) + "," + std::to_string(spec.j);
    case Kind::kExtraElement:
      return "extra-element";
  }
  return "unknown";
}

void ApplyToInput(const Spec& spec, std::vector<Bytes>& input, crypto::Prg& rng) {
  if (spec.kind != Kind::kFlipElement && spec.kind != Kind::kExtraElement) return;
  std::set<Bytes> present(input.begin(), input.end());
  if (spec.kind == Kind::kExtraElement) {
    size_t len = input.empty() ? 16 : std::max<size_t>(input.front().size(), 1);
    Bytes extra(len);
    do {
      rng.Fill(extra);
    } while (present.contains(extra));
    input.push_back(std::move(extra));
    return;
  }
  if (input.empty()) throw DomainError("flip-element needs a nonempty set");
  Bytes& target = input[spec.i % input.size()];
  if (target.empty()) target.push_back(0);
  // Flip successive bits until the result is not already in the set.
  for (size_t bit = 0; bit < 8 * target.size(); ++bit) {
    Bytes candidate = target;
    candidate[candidate.size() - 1 - bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    if (!present.contains(candidate)) {
      target = std::move(candidate);
      return;
    }
  }
  // Every single-bit neighbour is taken; lengthen the element instead.
  Bytes candidate = target;
  do {
    candidate.push_back(0x01);
  } while (present.contains(candidate));
  target = std::move(candidate);
}

void ApplyToProofs(const Spec& spec, std::vector<merkle::InclusionProof>& proofs) {
  if (spec.kind == Kind::kFlipPath) {
    if (proofs.empty()) throw DomainError("flip-path needs at least one proof");
    auto& proof = proofs[spec.i % proofs.size()];
    if (proof.siblings.empty()) {
      proof.leaf_hash[0] ^= 0x01;
    } else {
      proof.siblings.front().hash[0] ^= 0x01;
    }
  } else if (spec.kind == Kind::kSwapProofs) {
    if (proofs.size() < 2) throw DomainError("swap-proofs needs at least two proofs");
    size_t a = spec.i % proofs.size();
    size_t b = spec.j % proofs.size();
    if (a == b) b = (a + 1) % proofs.size();
    std::swap(proofs[a], proofs[b]);
  }
}

}  // namespace authpsi::tamper
