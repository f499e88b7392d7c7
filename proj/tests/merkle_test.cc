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

#include <gtest/gtest.h>

#include <algorithm>

#include "authpsi/crypto.h"
#include "authpsi/errors.h"

namespace authpsi::merkle {
namespace {

std::vector<Bytes> RandomSet(crypto::Prg& prg, size_t n, size_t len = 16) {
  std::vector<Bytes> out(n, Bytes(len));
  for (auto& e : out) prg.Fill(e);
  return out;
}

// Wire-level accept: anything that fails to parse is a reject.
bool AcceptsWire(const Root& root, const Bytes& wire) {
  try {
    return Verify(root, ParseProof(wire));
  } catch (const DomainError&) {
    return false;
  }
}

TEST(MerkleTest, SingleLeafRootIsLeafHash) {
  std::vector<Bytes> set = {Bytes{'a', 'b', 'c'}};
  Root root = ComputeRoot(set);
  uint8_t prefixed[] = {0x00, 'a', 'b', 'c'};
  EXPECT_EQ(root.digest, crypto::Hash(prefixed));
  EXPECT_EQ(root.set_size, 1u);
  InclusionProof p = GenPath(set, 0);
  EXPECT_TRUE(p.siblings.empty());
  EXPECT_TRUE(Verify(root, p));
}

TEST(MerkleTest, FourLeafTreeLayout) {
  std::vector<Bytes> d = {{'D', '1'}, {'D', '2'}, {'D', '3'}, {'D', '4'}};
  Hash h[4];
  for (int i = 0; i < 4; ++i) {
    Bytes in = {0x00};
    in.insert(in.end(), d[i].begin(), d[i].end());
    h[i] = crypto::Hash(in);
  }
  auto node = [](const Hash& l, const Hash& r) {
    Bytes in = {0x01};
    in.insert(in.end(), l.begin(), l.end());
    in.insert(in.end(), r.begin(), r.end());
    return crypto::Hash(in);
  };
  Hash h12 = node(h[0], h[1]);
  Hash h34 = node(h[2], h[3]);
  Root root = ComputeRoot(d);
  EXPECT_EQ(root.digest, node(h12, h34));

  InclusionProof p = GenPath(d, 2);
  EXPECT_EQ(p.leaf_hash, h[2]);
  ASSERT_EQ(p.siblings.size(), 2u);
  EXPECT_EQ(p.siblings[0], (Sibling{Side::kRight, h[3]}));
  EXPECT_EQ(p.siblings[1], (Sibling{Side::kLeft, h12}));
}

TEST(MerkleTest, OddSizesPromoteLoneNodes) {
  std::vector<Bytes> d = {{1}, {2}, {3}, {4}, {5}};
  Root root = ComputeRoot(d);
  Hash l[5];
  for (int i = 0; i < 5; ++i) l[i] = LeafHash(d[i]);
  Hash left = NodeHash(NodeHash(l[0], l[1]), NodeHash(l[2], l[3]));
  EXPECT_EQ(root.digest, NodeHash(left, l[4]));
  InclusionProof p = GenPath(d, 4);
  ASSERT_EQ(p.siblings.size(), 1u);
  EXPECT_EQ(p.siblings[0], (Sibling{Side::kLeft, left}));
}

TEST(MerkleTest, ExhaustiveCorrectnessUpTo257) {
  crypto::Prg prg(crypto::Prg::SeedFromU64(11));
  for (uint32_t n = 1; n <= 257; ++n) {
    auto set = RandomSet(prg, n, 8);
    Tree tree = BuildTree(set);
    Root root = tree.root();
    uint32_t max_depth = 0;
    while ((uint64_t{1} << max_depth) < n) ++max_depth;
    for (uint32_t i = 0; i < n; ++i) {
      InclusionProof p = tree.Path(i);
      ASSERT_TRUE(Verify(root, p)) << "n=" << n << " i=" << i;
      ASSERT_LE(p.siblings.size(), max_depth);
      ASSERT_EQ(PathShape(i, n).size(), p.siblings.size());
    }
  }
}

TEST(MerkleTest, EmptySetAndBadIndexAreErrors) {
  std::vector<Bytes> empty;
  EXPECT_THROW(ComputeRoot(empty), DomainError);
  std::vector<Bytes> set = {{1}, {2}};
  EXPECT_THROW(GenPath(set, 2), DomainError);
}

TEST(MerkleTest, PermutationChangesRoot) {
  crypto::Prg prg(crypto::Prg::SeedFromU64(12));
  auto set = RandomSet(prg, 8);
  Root a = ComputeRoot(set);
  std::swap(set[1], set[6]);
  EXPECT_NE(a.digest, ComputeRoot(set).digest);
}

TEST(MerkleTest, DeterministicAndSalted) {
  crypto::Prg prg(crypto::Prg::SeedFromU64(13));
  auto set = RandomSet(prg, 33);
  Block16 salt{};
  salt[0] = 7;
  EXPECT_EQ(ComputeRoot(set), ComputeRoot(set));
  EXPECT_EQ(SerializeProof(GenPath(set, 5)), SerializeProof(GenPath(set, 5)));
  EXPECT_NE(ComputeRoot(set, salt).digest, ComputeRoot(set).digest);
  EXPECT_TRUE(Verify(ComputeRoot(set, salt), GenPath(set, 5, salt)));
  EXPECT_FALSE(Verify(ComputeRoot(set), GenPath(set, 5, salt)));
}

TEST(MerkleTest, SingleBitFlipSweepRejects) {
  crypto::Prg prg(crypto::Prg::SeedFromU64(14));
  auto set = RandomSet(prg, 37);
  Root root = ComputeRoot(set);
  for (uint32_t i : {0u, 17u, 36u}) {
    Bytes wire = SerializeProof(GenPath(set, i));
    ASSERT_TRUE(AcceptsWire(root, wire));
    for (size_t byte = 0; byte < wire.size(); ++byte) {
      for (int bit = 0; bit < 8; ++bit) {
        Bytes mutated = wire;
        mutated[byte] ^= static_cast<uint8_t>(1 << bit);
        ASSERT_FALSE(AcceptsWire(root, mutated))
            << "index " << i << " byte " << byte << " bit " << bit;
      }
    }
  }
}

TEST(MerkleTest, CrossSetProofsReject) {
  crypto::Prg prg(crypto::Prg::SeedFromU64(15));
  auto a = RandomSet(prg, 16);
  auto b = RandomSet(prg, 16);
  Root ra = ComputeRoot(a), rb = ComputeRoot(b);
  for (uint32_t i = 0; i < 16; ++i) {
    EXPECT_FALSE(Verify(rb, GenPath(a, i)));
    EXPECT_FALSE(Verify(ra, GenPath(b, i)));
  }
}

TEST(MerkleTest, SubstitutedLeafNeverVerifies) {
  crypto::Prg prg(crypto::Prg::SeedFromU64(16));
  auto set = RandomSet(prg, 64);
  Tree tree = BuildTree(set);
  Root root = tree.root();
  for (int trial = 0; trial < 10000; ++trial) {
    InclusionProof p = tree.Path(static_cast<uint32_t>(prg.Uniform(64)));
    Bytes other(16);
    prg.Fill(other);
    p.leaf_hash = LeafHash(other);
    ASSERT_FALSE(Verify(root, p));
  }
}

TEST(MerkleTest, IndexAndSizeMutationsReject) {
  crypto::Prg prg(crypto::Prg::SeedFromU64(17));
  auto set = RandomSet(prg, 12);
  Root root = ComputeRoot(set);
  InclusionProof p = GenPath(set, 5);
  InclusionProof q = p;
  q.index = 4;
  EXPECT_FALSE(Verify(root, q));
  q = p;
  q.set_size = 13;
  EXPECT_FALSE(Verify(root, q));
  q = p;
  q.index = 12;
  EXPECT_FALSE(Verify(root, q));
}

TEST(MerkleTest, BatchVerify) {
  crypto::Prg prg(crypto::Prg::SeedFromU64(18));
  auto set = RandomSet(prg, 20);
  Tree tree = BuildTree(set);
  std::vector<InclusionProof> proofs;
  for (uint32_t i = 0; i < 20; ++i) proofs.push_back(tree.Path(i));
  EXPECT_TRUE(BatchVerify(tree.root(), proofs));
  EXPECT_TRUE(BatchVerify(tree.root(), {}));
  EXPECT_TRUE(VerifyProofSet(tree.root(), proofs));
  auto tampered = proofs;
  tampered[9].siblings[0].hash[3] ^= 0x10;
  EXPECT_FALSE(BatchVerify(tree.root(), tampered));
  auto swapped = proofs;
  std::swap(swapped[2], swapped[7]);
  EXPECT_TRUE(BatchVerify(tree.root(), swapped));
  EXPECT_FALSE(VerifyProofSet(tree.root(), swapped));
  auto missing = proofs;
  missing.pop_back();
  EXPECT_FALSE(VerifyProofSet(tree.root(), missing));
}

TEST(MerkleTest, RootWireFormat) {
  crypto::Prg prg(crypto::Prg::SeedFromU64(19));
  Root root = ComputeRoot(RandomSet(prg, 300));
  Bytes wire = SerializeRoot(root);
  ASSERT_EQ(wire.size(), 37u);
  EXPECT_EQ(wire[0], 0x01);
  EXPECT_EQ(wire[3], 0x01);  // 300 = 0x0000012c
  EXPECT_EQ(wire[4], 0x2c);
  EXPECT_EQ(ParseRoot(wire), root);
  wire.push_back(0);
  EXPECT_THROW(ParseRoot(wire), DomainError);
}

TEST(MerkleTest, ProofWireFormat) {
  std::vector<Bytes> d = {{1}, {2}, {3}, {4}};
  InclusionProof p = GenPath(d, 2);
  Bytes wire = SerializeProof(p);
  ASSERT_EQ(wire.size(), 1u + 4 + 4 + 32 + 1 + 2 * 33);
  EXPECT_EQ(wire[0], 0x01);
  EXPECT_EQ(wire[4], 4);   // set_size low byte
  EXPECT_EQ(wire[8], 2);   // index low byte
  EXPECT_EQ(wire[41], 2);  // depth
  EXPECT_EQ(wire[42], 0x01);
  EXPECT_EQ(wire[75], 0x00);
  EXPECT_EQ(ParseProof(wire), p);
}

// Any proof sequence, honest or mangled, survives both batch encodings.
TEST(MerkleTest, ProofSetEncodingIsLossless) {
  crypto::Prg prg(crypto::Prg::SeedFromU64(20));
  for (int trial = 0; trial < 200; ++trial) {
    uint32_t n = 1 + static_cast<uint32_t>(prg.Uniform(70));
    auto set = RandomSet(prg, n, 4);
    Tree tree = BuildTree(set);
    std::vector<InclusionProof> proofs;
    for (uint32_t i = 0; i < n; ++i) proofs.push_back(tree.Path(i));
    switch (trial % 4) {
      case 1: {
        auto& p = proofs[prg.Uniform(n)];
        if (!p.siblings.empty()) p.siblings.back().hash[0] ^= 1;
        else p.leaf_hash[0] ^= 1;
        break;
      }
      case 2:
        if (n > 1) std::swap(proofs[0], proofs[n - 1]);
        break;
      case 3:
        proofs[prg.Uniform(n)].set_size += 1;
        break;
      default:
        break;
    }
    for (auto enc : {ProofSetEncoding::kFull, ProofSetEncoding::kCompact}) {
      ASSERT_EQ(DecodeProofSet(EncodeProofSet(proofs, enc)), proofs);
    }
  }
  std::vector<InclusionProof> none;
  EXPECT_TRUE(DecodeProofSet(EncodeProofSet(none)).empty());
}

TEST(MerkleTest, CompactEncodingIsLinearForHonestSets) {
  crypto::Prg prg(crypto::Prg::SeedFromU64(21));
  auto set = RandomSet(prg, 1000);
  Tree tree = BuildTree(set);
  std::vector<InclusionProof> proofs;
  for (uint32_t i = 0; i < 1000; ++i) proofs.push_back(tree.Path(i));
  EXPECT_EQ(EncodeProofSet(proofs).size(), 1u + 1 + 4 + 1000 * 32 + 4);
}

}  // namespace
}  // namespace authpsi::merkle
