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
#include <span>
#include <vector>

#include "authpsi/bytes.h"

// Set commitment with per-element inclusion proofs.
//
// Leaves are H(0x00 || salt || element), internal nodes H(0x01 || left ||
// right), H = SHA-256. The tree is built bottom-up; a lone node at the end of
// a level is promoted to the next level without hashing, which yields the
// same left-balanced shape as Certificate Transparency trees.
namespace authpsi::merkle {

using Hash = Block32;

enum class Side : uint8_t { kLeft = 0x00, kRight = 0x01 };

struct Root {
  Hash digest{};
  uint32_t set_size = 0;

  bool operator==(const Root&) const = default;
};

struct Sibling {
  Side side = Side::kLeft;  // where the sibling sits relative to the path
  Hash hash{};

  bool operator==(const Sibling&) const = default;
};

struct InclusionProof {
  uint32_t index = 0;
  Hash leaf_hash{};
  std::vector<Sibling> siblings;  // leaf level first
  uint32_t set_size = 0;

  bool operator==(const InclusionProof&) const = default;
};

Hash LeafHash(ByteView element, ByteView salt = {});
Hash NodeHash(const Hash& left, const Hash& right);

// Expected sibling sides for a leaf, derived from (index, set_size) alone.
std::vector<Side> PathShape(uint32_t index, uint32_t set_size);

// Fully materialized tree over precomputed leaf hashes.
class Tree {
 public:
  explicit Tree(std::vector<Hash> leaves);

  Root root() const;
  InclusionProof Path(uint32_t index) const;
  size_t size() const { return levels_.front().size(); }

 private:
  std::vector<std::vector<Hash>> levels_;
};

Tree BuildTree(std::span<const Bytes> elements, ByteView salt = {});

Root ComputeRoot(std::span<const Bytes> elements, ByteView salt = {});
InclusionProof GenPath(std::span<const Bytes> elements, uint32_t index,
                       ByteView salt = {});

bool Verify(const Root& root, const InclusionProof& proof);
bool BatchVerify(const Root& root, std::span<const InclusionProof> proofs);

// BatchVerify plus the requirement that the proofs cover the committed set
// exactly once, in index order (position k carries index k).
bool VerifyProofSet(const Root& root, std::span<const InclusionProof> proofs);

// version 0x01 || set_size (4B BE) || index (4B BE) || leaf_hash ||
// depth || depth x (side || hash)
Bytes SerializeProof(const InclusionProof& proof);
InclusionProof ParseProof(ByteView bytes);

// version 0x01 || set_size (4B BE) || digest
Bytes SerializeRoot(const Root& root);
Root ParseRoot(ByteView bytes);

enum class ProofSetEncoding : uint8_t { kFull = 0x00, kCompact = 0x01 };

// Lossless batch encoding of a proof sequence. kFull writes every proof in
// its wire format. kCompact writes the leaf hashes and rebuilds each proof
// from the tree over them; proofs that differ from the rebuilt ones are
// carried verbatim, so decoding always reproduces the input sequence.
Bytes EncodeProofSet(std::span<const InclusionProof> proofs,
                     ProofSetEncoding encoding = ProofSetEncoding::kCompact);
std::vector<InclusionProof> DecodeProofSet(ByteView bytes);

}  // namespace authpsi::merkle
