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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "authpsi/dataset.h"
#include "authpsi/errors.h"
#include "authpsi/harness.h"

namespace authpsi::psi2 {
namespace {

crypto::Prg TestPrg(uint64_t seed) { return crypto::Prg(crypto::Prg::SeedFromU64(seed)); }

// Sort-merge intersection of the raw sets.
std::vector<Bytes> Oracle(std::vector<Bytes> a, std::vector<Bytes> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<Bytes> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Bytes> Sorted(std::vector<Bytes> v) {
  std::sort(v.begin(), v.end());
  return v;
}

dataset::Generated Sets(uint64_t count, uint64_t overlap, uint64_t seed) {
  return dataset::Generate({count, 16, seed, 2, overlap});
}

harness::TwoPartyOptions Options(uint64_t seed) {
  harness::TwoPartyOptions o;
  o.seed = seed;
  o.session = TestPrg(seed ^ 0x5e55).NextBlock<16>();
  return o;
}

// Pair of engines wired by hand, for white-box checks.
struct Pair {
  Engine receiver;
  Engine sender;
};

Pair MakePair(const std::vector<Bytes>& x, const std::vector<Bytes>& y,
              const SessionId& session, uint64_t seed) {
  Config rc;
  rc.role = Role::kReceiver;
  rc.input = x;
  rc.session = session;
  rc.announced_root = Commit(x, session, true);
  rc.peer_root = Commit(y, session, true);
  Config sc = rc;
  sc.role = Role::kSender;
  sc.input = y;
  std::swap(sc.announced_root, sc.peer_root);
  return {Engine(rc, TestPrg(seed)), Engine(sc, TestPrg(seed + 1))};
}

TEST(Psi2Test, HashesAreDomainSeparated) {
  Bytes x = {1, 2, 3};
  auto raw = crypto::Hash(x);
  EXPECT_NE(HashToField(x), Gf128::FromBytes(ByteView(raw).first(16)));
  EXPECT_EQ(OutputHash(HashToField(x), 7).size(), 7u);
  EXPECT_NE(OutputHash(Gf128::One(), 16), OutputHash(Gf128::Zero(), 16));
  EXPECT_THROW(OutputHash(Gf128::One(), 0), DomainError);
}

TEST(Psi2Test, OutputWidthCoversCollisionBudget) {
  EXPECT_EQ(OutBits(1, 1), 40u);
  EXPECT_EQ(OutBits(256, 256), 56u);
  EXPECT_EQ(OutBits(1024, 1024), 64u);
  EXPECT_EQ(OutBits(4096, 4096), 64u);
  EXPECT_EQ(OutBits(3, 3), 48u);  // 40 + ceil(log2 9) = 44 -> 48
  for (uint64_t n : {1ull, 5ull, 1000ull, 1ull << 20}) {
    uint32_t bits = OutBits(n, n);
    EXPECT_GE(std::ldexp(1.0, static_cast<int>(bits) - 40), static_cast<double>(n * n));
  }
}

TEST(Psi2Test, TransformShapes) {
  auto g = Sets(1024, 100, 1);
  SessionId session = TestPrg(2).NextBlock<16>();
  Pair p = MakePair(g.sets[0], g.sets[1], session, 3);
  auto msg_r = p.receiver.Transform();
  auto msg_s = p.sender.Transform();
  ASSERT_TRUE(msg_r && msg_s);
  EXPECT_EQ(p.receiver.phase(), Phase::kTransformed);
  EXPECT_EQ(p.receiver.table().values.size(), 1260u + 30u);
  ByteReader r(*msg_s);
  EXPECT_EQ(merkle::ParseRoot(r.Raw(37)), Commit(g.sets[1], session, true));
  EXPECT_EQ(merkle::DecodeProofSet(r.Raw(r.remaining())).size(), 1024u);
}

TEST(Psi2Test, ModifiedInputFailsLocalRecheck) {
  auto g = Sets(16, 4, 4);
  SessionId session{};
  Pair p = MakePair(g.sets[0], g.sets[1], session, 5);
  Config c = p.sender.config();
  c.input[3][0] ^= 0x80;
  Engine changed(c, TestPrg(6));
  EXPECT_THROW(changed.Transform(), ConfigError);
}

TEST(Psi2Test, MaskingIdentityHoldsOnIntersection) {
  auto g = Sets(512, 256, 7);
  SessionId session = TestPrg(8).NextBlock<16>();
  Pair p = MakePair(g.sets[0], g.sets[1], session, 9);
  auto msg_r = p.receiver.Transform();
  auto msg_s = p.sender.Transform();
  ASSERT_TRUE(p.receiver.AcceptPeerProofs(*msg_s));
  ASSERT_TRUE(p.sender.AcceptPeerProofs(*msg_r));

  auto rng = TestPrg(10);
  auto seeds = vole::GenSeed(p.receiver.vole_length(), session, rng);
  auto rc = vole::ExtendReceiver(seeds.receiver);
  auto sc = vole::ExtendSender(seeds.sender);
  Bytes a_prime_msg = p.receiver.MaskTable(rc);
  auto a_prime = okvs::ParseTable(a_prime_msg);
  auto b_prime = MaskSenderVector(sc.b_vec, a_prime.values, sc.delta);
  for (const auto& x : g.core) {
    EXPECT_EQ(SenderValue(a_prime.params, b_prime, sc.delta, x),
              okvs::Decode(a_prime.params, rc.c_vec, x));
  }
  // Outside the receiver's set the two sides disagree.
  std::set<Bytes> xs(g.sets[0].begin(), g.sets[0].end());
  for (const auto& y : g.sets[1]) {
    if (xs.contains(y)) continue;
    EXPECT_NE(SenderValue(a_prime.params, b_prime, sc.delta, y),
              okvs::Decode(a_prime.params, rc.c_vec, y));
  }

  Bytes digests = p.sender.RespondDigests(a_prime_msg, sc);
  EXPECT_EQ(p.sender.phase(), Phase::kDone);
  EXPECT_EQ(Sorted(p.receiver.Reconstruct(digests)), Sorted(g.core));
  EXPECT_EQ(p.receiver.phase(), Phase::kDone);
}

TEST(Psi2Test, DigestSetIsPermutedAndFixedWidth) {
  auto g = Sets(256, 64, 11);
  SessionId session = TestPrg(12).NextBlock<16>();
  Pair p = MakePair(g.sets[0], g.sets[1], session, 13);
  auto msg_r = p.receiver.Transform();
  auto msg_s = p.sender.Transform();
  ASSERT_TRUE(p.receiver.AcceptPeerProofs(*msg_s));
  ASSERT_TRUE(p.sender.AcceptPeerProofs(*msg_r));
  auto rng = TestPrg(14);
  auto seeds = vole::GenSeed(p.receiver.vole_length(), session, rng);
  auto rc = vole::ExtendReceiver(seeds.receiver);
  auto sc = vole::ExtendSender(seeds.sender);
  Bytes a_prime_msg = p.receiver.MaskTable(rc);
  auto a_prime = okvs::ParseTable(a_prime_msg);
  auto b_prime = MaskSenderVector(sc.b_vec, a_prime.values, sc.delta);

  const size_t width = OutBits(256, 256) / 8;
  std::vector<Bytes> in_order;
  for (const auto& y : g.sets[1]) {
    in_order.push_back(OutputHash(SenderValue(a_prime.params, b_prime, sc.delta, y), width));
  }
  auto sent = DecodeDigests(p.sender.RespondDigests(a_prime_msg, sc), width);
  ASSERT_EQ(sent.size(), 256u);
  for (const auto& d : sent) EXPECT_EQ(d.size(), width);
  EXPECT_EQ(Sorted(sent), Sorted(in_order));
  EXPECT_NE(sent, in_order);
}

TEST(Psi2Test, OutOfPhaseCallsAreRejected) {
  auto g = Sets(8, 2, 15);
  Pair p = MakePair(g.sets[0], g.sets[1], SessionId{}, 16);
  EXPECT_THROW(p.receiver.Reconstruct(Bytes{}), ProtocolError);
  EXPECT_THROW(p.receiver.AcceptPeerProofs(Bytes{}), ProtocolError);
  auto msg_r = p.receiver.Transform();
  auto msg_s = p.sender.Transform();
  EXPECT_THROW(p.receiver.Transform(), ProtocolError);
  vole::SenderCorrelation sc;
  EXPECT_THROW(p.receiver.RespondDigests(Bytes{}, sc), ProtocolError);
  // Sender must verify before answering.
  EXPECT_THROW(p.sender.RespondDigests(Bytes{}, sc), ProtocolError);
  ASSERT_TRUE(p.receiver.AcceptPeerProofs(*msg_s));
  EXPECT_THROW(p.receiver.AcceptPeerProofs(*msg_s), ProtocolError);
  auto rng = TestPrg(17);
  auto short_seeds = vole::GenSeed(p.receiver.vole_length() - 1, SessionId{}, rng);
  EXPECT_THROW(p.receiver.MaskTable(vole::ExtendReceiver(short_seeds.receiver)),
               ProtocolError);
}

TEST(Psi2Test, WrongDigestCountIsRejected) {
  auto g = Sets(32, 8, 18);
  Pair p = MakePair(g.sets[0], g.sets[1], SessionId{}, 19);
  auto msg_r = p.receiver.Transform();
  auto msg_s = p.sender.Transform();
  ASSERT_TRUE(p.receiver.AcceptPeerProofs(*msg_s));
  auto rng = TestPrg(20);
  auto seeds = vole::GenSeed(p.receiver.vole_length(), SessionId{}, rng);
  p.receiver.MaskTable(vole::ExtendReceiver(seeds.receiver));
  const size_t width = OutBits(32, 32) / 8;
  std::vector<Bytes> short_set(31, Bytes(width));
  EXPECT_THROW(p.receiver.Reconstruct(EncodeDigests(short_set, width)), ProtocolError);
}

TEST(Psi2Test, HonestRunsMatchOracle) {
  for (uint64_t overlap : {0u, 64u, 256u}) {
    auto g = Sets(256, overlap, 100 + overlap);
    auto res = harness::RunLocal2(g.sets[0], g.sets[1], Options(overlap));
    ASSERT_FALSE(res.receiver.aborted) << res.receiver.abort_reason;
    ASSERT_FALSE(res.sender.aborted);
    ASSERT_TRUE(res.receiver.intersection);
    EXPECT_FALSE(res.sender.intersection);
    EXPECT_EQ(Sorted(*res.receiver.intersection), Oracle(g.sets[0], g.sets[1]));
    EXPECT_EQ(res.receiver.intersection->size(), overlap);
  }
}

TEST(Psi2Test, UnequalSetSizes) {
  auto g = dataset::Generate({300, 12, 21, 2, 40});
  std::vector<Bytes> y(g.sets[1].begin(), g.sets[1].begin() + 100);
  auto res = harness::RunLocal2(g.sets[0], y, Options(22));
  ASSERT_TRUE(res.receiver.intersection);
  EXPECT_EQ(Sorted(*res.receiver.intersection), Oracle(g.sets[0], y));
}

TEST(Psi2Test, StrictModeWithoutSalt) {
  auto g = Sets(64, 10, 23);
  auto opts = Options(24);
  opts.salted = false;
  auto res = harness::RunLocal2(g.sets[0], g.sets[1], opts);
  ASSERT_TRUE(res.receiver.intersection);
  EXPECT_EQ(Sorted(*res.receiver.intersection), Sorted(g.core));
  EXPECT_NE(Commit(g.sets[0], opts.session, false), Commit(g.sets[0], opts.session, true));
}

TEST(Psi2Test, TamperedSenderMakesReceiverAbortBeforeDigests) {
  auto g = Sets(64, 16, 25);
  for (const char* spec : {"flip-element:17", "flip-path:3", "swap-proofs:1,2",
                           "extra-element"}) {
    auto opts = Options(26);
    opts.sender_tamper = tamper::Parse(spec);
    auto res = harness::RunLocal2(g.sets[0], g.sets[1], opts);
    EXPECT_TRUE(res.receiver.aborted) << spec;
    EXPECT_FALSE(res.receiver.intersection) << spec;
    EXPECT_EQ(res.receiver.abort_phase, "interact") << spec;
    EXPECT_TRUE(res.report.aborted);
    // No VOLE, no masked table and no digest set ever left either party.
    EXPECT_FALSE(res.report.per_type.contains(transport::msg::kDigests)) << spec;
    EXPECT_FALSE(res.report.per_type.contains(transport::msg::kMaskedTable)) << spec;
    EXPECT_EQ(res.report.setup_bytes, 0u) << spec;
  }
}

TEST(Psi2Test, TamperedReceiverMakesSenderAbort) {
  auto g = Sets(64, 16, 27);
  for (const char* spec : {"flip-element:0", "flip-path:63", "swap-proofs:5,9",
                           "extra-element"}) {
    auto opts = Options(28);
    opts.receiver_tamper = tamper::Parse(spec);
    auto res = harness::RunLocal2(g.sets[0], g.sets[1], opts);
    EXPECT_TRUE(res.sender.aborted) << spec;
    EXPECT_TRUE(res.receiver.aborted) << spec;
    EXPECT_FALSE(res.receiver.intersection) << spec;
    EXPECT_FALSE(res.report.per_type.contains(transport::msg::kDigests)) << spec;
  }
}

TEST(Psi2Test, RunsAreReproducible) {
  auto g = Sets(128, 32, 29);
  auto a = harness::RunLocal2(g.sets[0], g.sets[1], Options(30));
  auto b = harness::RunLocal2(g.sets[0], g.sets[1], Options(30));
  EXPECT_EQ(a.transcripts, b.transcripts);
  EXPECT_EQ(a.report.bytes_total, b.report.bytes_total);
  auto c = harness::RunLocal2(g.sets[0], g.sets[1], Options(31));
  EXPECT_NE(a.transcripts, c.transcripts);
}

// A receiver that knows both candidate sender sets (with the same
// intersection) tries to tell which one was used from R. Its best test is
// matching R against H°(Decode(C, y)) for the candidates' private
// elements; it should do no better than a coin flip.
TEST(Psi2Test, DigestsDoNotRevealNonIntersectionElements) {
  const int trials = 100;
  int correct = 0;
  auto coin = TestPrg(32);
  for (int trial = 0; trial < trials; ++trial) {
    auto g = dataset::Generate({32, 16, 1000u + trial, 3, 8});
    const auto& x = g.sets[0];
    const std::vector<Bytes>* candidates[2] = {&g.sets[1], &g.sets[2]};
    int b = static_cast<int>(coin.Uniform(2));
    SessionId session = coin.NextBlock<16>();
    Pair p = MakePair(x, *candidates[b], session, 2000 + trial);
    auto msg_r = p.receiver.Transform();
    auto msg_s = p.sender.Transform();
    ASSERT_TRUE(p.receiver.AcceptPeerProofs(*msg_s));
    ASSERT_TRUE(p.sender.AcceptPeerProofs(*msg_r));
    auto seeds = vole::GenSeed(p.receiver.vole_length(), session, coin);
    auto rc = vole::ExtendReceiver(seeds.receiver);
    Bytes a_prime = p.receiver.MaskTable(rc);
    const size_t width = OutBits(32, 32) / 8;
    auto r = DecodeDigests(p.sender.RespondDigests(a_prime, vole::ExtendSender(seeds.sender)),
                           width);
    std::set<Bytes> rset(r.begin(), r.end());
    const auto& params = p.receiver.table().params;
    int hits[2] = {0, 0};
    for (int c = 0; c < 2; ++c) {
      for (const auto& y : *candidates[c]) {
        hits[c] += rset.contains(OutputHash(okvs::Decode(params, rc.c_vec, y), width));
      }
    }
    int guess = hits[0] == hits[1] ? static_cast<int>(coin.Uniform(2)) : (hits[1] > hits[0]);
    correct += guess == b;
  }
  // 3 sigma around trials / 2.
  EXPECT_LE(std::abs(correct - trials / 2), 15) << correct;
}

}  // namespace
}  // namespace authpsi::psi2
