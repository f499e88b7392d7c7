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

#include "authpsi/merkle.h"

#include "authpsi/crypto.h"
#include "authpsi/errors.h"

namespace authpsi::merkle {

namespace {

constexpr uint8_t kWireVersion = 0x01;
constexpr uint8_t kLeafTag = 0x00;
constexpr uint8_t kNodeTag = 0x01;

}  // namespace

Hash LeafHash(ByteView element, ByteView salt) {
  const uint8_t tag = kLeafTag;
  return crypto::Hash({ByteView(&tag, 1), salt, element});
}

Hash NodeHash(const Hash& left, const Hash& right) {
  const uint8_t tag = kNodeTag;
  return crypto::Hash({ByteView(&tag, 1), left, right});
}

std::vector<Side> PathShape(uint32_t index, uint32_t set_size) {
  std::vector<Side> sides;
  uint64_t pos = index;
  uint64_t count = set_size;
  while (count > 1) {
    if (pos % 2 == 1) {
      sides.push_back(Side::kLeft);
    } else if (pos + 1 < count) {
      sides.push_back(Side::kRight);
    }
    pos /= 2;
    count = (count + 1) / 2;
  }
  return sides;
}

Tree::Tree(std::vector<Hash> leaves) {
  if (leaves.empty()) {
    throw DomainError("cannot build a Merkle tree over an empty set");
  }
  if (leaves.size() > UINT32_MAX) {
    throw DomainError("Merkle tree too large");
  }
  levels_.push_back(std::move(leaves));
  while (levels_.back().size() > 1) {
    const auto& below = levels_.back();
    std::vector<Hash> above;
    above.reserve((below.size() + 1) / 2);
    for (size_t i = 0; i + 1 < below.size(); i += 2) {
      above.push_back(NodeHash(below[i], below[i + 1]));
    }
    if (below.size() % 2 == 1) above.push_back(below.back());
    levels_.push_back(std::move(above));
  }
}

Root Tree::root() const {
  return Root{levels_.back().front(),
              static_cast<uint32_t>(levels_.front().size())};
}

InclusionProof Tree::Path(uint32_t index) const {
  if (index >= levels_.front().size()) {
    throw DomainError("Merkle path index " + std::to_string(index) +
                      " out of range for set of size " +
                      std::to_string(levels_.front().size()));
  }
  InclusionProof proof;
  proof.index = index;
  proof.set_size = static_cast<uint32_t>(levels_.front().size());
  proof.leaf_hash = levels_.front()[index];
  size_t pos = index;
  for (size_t level = 0; level + 1 < levels_.size(); ++level) {
    const auto& nodes = levels_[level];
    if (pos % 2 == 1) {
      proof.siblings.push_back({Side::kLeft, nodes[pos - 1]});
    } else if (pos + 1 < nodes.size()) {
      proof.siblings.push_back({Side::kRight, nodes[pos + 1]});
    }
    pos /= 2;
  }
  return proof;
}

Tree BuildTree(std::span<const Bytes> elements, ByteView salt) {
  std::vector<Hash> leaves;
  leaves.reserve(elements.size());
  for (const auto& e : elements) leaves.push_back(LeafHash(e, salt));
  return Tree(std::move(leaves));
}

Root ComputeRoot(std::span<const Bytes> elements, ByteView salt) {
  return BuildTree(elements, salt).root();
}

InclusionProof GenPath(std::span<const Bytes> elements, uint32_t index,
                       ByteView salt) {
  if (index >= elements.size()) {
    throw DomainError("Merkle path index out of range");
  }
  return BuildTree(elements, salt).Path(index);
}

bool Verify(const Root& root, const InclusionProof& proof) {
  if (proof.set_size == 0 || proof.set_size != root.set_size ||
      proof.index >= proof.set_size) {
    return false;
  }
  std::vector<Side> shape = PathShape(proof.index, proof.set_size);
  if (shape.size() != proof.siblings.size()) return false;
  Hash acc = proof.leaf_hash;
  for (size_t i = 0; i < shape.size(); ++i) {
    const Sibling& s = proof.siblings[i];
    if (s.side != shape[i]) return false;
    acc = s.side == Side::kLeft ? NodeHash(s.hash, acc) : NodeHash(acc, s.hash);
  }
  return acc == root.digest;
}

bool BatchVerify(const Root& root, std::span<const InclusionProof> proofs) {
  for (const auto& p : proofs) {
    if (!Verify(root, p)) return false;
  }
  return true;
}

bool VerifyProofSet(const Root& root, std::span<const InclusionProof> proofs) {
  if (proofs.size() != root.set_size) return false;
  for (size_t k = 0; k < proofs.size(); ++k) {
    if (proofs[k].index != k) return false;
  }
  return BatchVerify(root, proofs);
}

Bytes SerializeProof(const InclusionProof& proof) {
  if (proof.siblings.size() > 255) {
    throw DomainError("proof depth exceeds 255");
  }
  ByteWriter w;
  w.U8(kWireVersion);
  w.U32(proof.set_size);
  w.U32(proof.index);
  w.Raw(proof.leaf_hash);
  w.U8(static_cast<uint8_t>(proof.siblings.size()));
  for (const auto& s : proof.siblings) {
    w.U8(static_cast<uint8_t>(s.side));
    w.Raw(s.hash);
  }
  return w.Take();
}

namespace {

InclusionProof ReadProof(ByteReader& r) {
  if (r.U8() != kWireVersion) throw DomainError("unknown proof version");
  InclusionProof proof;
  proof.set_size = r.U32();
  proof.index = r.U32();
  proof.leaf_hash = r.Fixed<32>();
  uint8_t depth = r.U8();
  proof.siblings.reserve(depth);
  for (int i = 0; i < depth; ++i) {
    uint8_t side = r.U8();
    if (side > 0x01) throw DomainError("invalid proof side byte");
    proof.siblings.push_back({static_cast<Side>(side), r.Fixed<32>()});
  }
  return proof;
}

}  // namespace

InclusionProof ParseProof(ByteView bytes) {
  ByteReader r(bytes);
  InclusionProof proof = ReadProof(r);
  r.ExpectEnd();
  return proof;
}

Bytes SerializeRoot(const Root& root) {
  ByteWriter w;
  w.U8(kWireVersion);
  w.U32(root.set_size);
  w.Raw(root.digest);
  return w.Take();
}

Root ParseRoot(ByteView bytes) {
  ByteReader r(bytes);
  if (r.U8() != kWireVersion) throw DomainError("unknown root version");
  Root root;
  root.set_size = r.U32();
  root.digest = r.Fixed<32>();
  r.ExpectEnd();
  return root;
}

Bytes EncodeProofSet(std::span<const InclusionProof> proofs,
                     ProofSetEncoding encoding) {
  ByteWriter w;
  w.U8(kWireVersion);
  w.U8(static_cast<uint8_t>(encoding));
  w.U32(static_cast<uint32_t>(proofs.size()));
  if (encoding == ProofSetEncoding::kFull) {
    for (const auto& p : proofs) w.LengthPrefixed(SerializeProof(p));
    return w.Take();
  }
  if (proofs.empty()) {
    w.U32(0);
    return w.Take();
  }
  std::vector<Hash> leaves;
  leaves.reserve(proofs.size());
  for (const auto& p : proofs) leaves.push_back(p.leaf_hash);
  for (const auto& h : leaves) w.Raw(h);
  Tree tree(std::move(leaves));
  std::vector<uint32_t> exceptions;
  for (uint32_t k = 0; k < proofs.size(); ++k) {
    if (!(tree.Path(k) == proofs[k])) exceptions.push_back(k);
  }
  w.U32(static_cast<uint32_t>(exceptions.size()));
  for (uint32_t k : exceptions) {
    w.U32(k);
    w.LengthPrefixed(SerializeProof(proofs[k]));
  }
  return w.Take();
}

std::vector<InclusionProof> DecodeProofSet(ByteView bytes) {
  ByteReader r(bytes);
  if (r.U8() != kWireVersion) throw DomainError("unknown proof-set version");
  uint8_t encoding = r.U8();
  uint32_t count = r.U32();
  std::vector<InclusionProof> proofs;
  if (encoding == static_cast<uint8_t>(ProofSetEncoding::kFull)) {
    for (uint32_t k = 0; k < count; ++k) {
      proofs.push_back(ParseProof(r.LengthPrefixed()));
    }
    r.ExpectEnd();
    return proofs;
  }
  if (encoding != static_cast<uint8_t>(ProofSetEncoding::kCompact)) {
    throw DomainError("unknown proof-set encoding");
  }
  if (count > 0) {
    if (r.remaining() / 32 < count) throw DomainError("truncated proof set");
    std::vector<Hash> leaves(count);
    for (auto& h : leaves) h = r.Fixed<32>();
    Tree tree(std::move(leaves));
    proofs.reserve(count);
    for (uint32_t k = 0; k < count; ++k) proofs.push_back(tree.Path(k));
  }
  uint32_t exceptions = r.U32();
  for (uint32_t e = 0; e < exceptions; ++e) {
    uint32_t k = r.U32();
    if (k >= count) throw DomainError("proof-set exception out of range");
    proofs[k] = ParseProof(r.LengthPrefixed());
  }
  r.ExpectEnd();
  return proofs;
}

}  // namespace authpsi::merkle
