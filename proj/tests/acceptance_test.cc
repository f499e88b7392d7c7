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

// Acceptance suite: one PASS/FAIL line per criterion. Every threshold is
// fixed below; nothing is tuned at run time. Reference values are computed
// by oracles written here, independently of the library code under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "authpsi/crypto.h"
#include "authpsi/dataset.h"
#include "authpsi/errors.h"
#include "authpsi/gf128.h"
#include "authpsi/harness.h"
#include "authpsi/merkle.h"
#include "authpsi/okvs.h"
#include "authpsi/psi2.h"
#include "authpsi/psin.h"
#include "authpsi/tamper.h"
#include "authpsi/vole.h"
#include "authpsi/zeroshare.h"

namespace authpsi {
namespace {

// ------------------------------------------------------------ thresholds

constexpr int kTwoPartyRunsPerSize = 50;          // AC1: per n, overlaps cycled
constexpr int kTwoPartyTamperRuns = 1000;         // AC2
constexpr double kMaxBitsSpread = 0.25;           // AC3: (max - min) / min
constexpr int kMultiPartyRuns = 20;               // AC4: per (config, n_l)
constexpr int kMultiPartyTamperRuns = 250;        // AC5: per config
constexpr int kZeroShareElements = 1000;          // AC6
constexpr int kMinNonzeroSubsetSums = 999;        // AC6: per subset, of 1000
constexpr int kOkvsProbes = 10000;                // AC7
constexpr int kOkvsInstances = 1000;              // AC7
constexpr int kMinFirstAttempt = 995;             // AC7: of 1000
constexpr int kVoleSessions = 100;                // AC8
constexpr int kMerkleMutations = 10000;           // AC9
constexpr uint32_t kMerkleMaxExhaustive = 257;    // AC9
constexpr int kMaskingInstances = 1000;           // AC10

using Clock = std::chrono::steady_clock;
using harness::CommonOptions;

crypto::Prg Rng(uint64_t seed) { return crypto::Prg(crypto::Prg::SeedFromU64(seed)); }

Gf128 RandomField(crypto::Prg& rng) {
  auto b = rng.NextBlock<16>();
  return Gf128::FromBytes(b);
}

Bytes RandomBytes(crypto::Prg& rng, size_t n) {
  Bytes b(n);
  rng.Fill(b);
  return b;
}

std::vector<Bytes> Sorted(std::vector<Bytes> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Bytes> BruteIntersection(const std::vector<std::vector<Bytes>>& sets) {
  std::set<Bytes> acc(sets[0].begin(), sets[0].end());
  for (size_t i = 1; i < sets.size(); ++i) {
    std::set<Bytes> other(sets[i].begin(), sets[i].end());
    std::set<Bytes> next;
    for (const Bytes& e : acc) {
      if (other.contains(e)) next.insert(e);
    }
    acc = std::move(next);
  }
  return {acc.begin(), acc.end()};
}

// Shift-and-add multiplication modulo x^128 + x^7 + x^2 + x + 1.
Gf128 OracleMul(Gf128 a, Gf128 b) {
  uint64_t rlo = 0, rhi = 0;
  uint64_t alo = a.lo(), ahi = a.hi();
  for (int k = 0; k < 128; ++k) {
    if (b.Bit(k)) {
      rlo ^= alo;
      rhi ^= ahi;
    }
    uint64_t carry = ahi >> 63;
    ahi = (ahi << 1) | (alo >> 63);
    alo <<= 1;
    if (carry) alo ^= 0x87;
  }
  return Gf128(rlo, rhi);
}

// Decoding straight from the row description: sum of the selected sparse
// cells plus the dense inner product.
Gf128 OracleDecode(const okvs::OkvsParams& params, const std::vector<Gf128>& table,
                   ByteView key) {
  okvs::RowSpec row = okvs::Row(key, params);
  Gf128 acc;
  for (uint32_t i : row.sparse_indices) acc ^= table[i];
  for (size_t j = 0; j < row.dense_part.size(); ++j) {
    acc ^= OracleMul(row.dense_part[j], table[params.m_sparse + j]);
  }
  return acc;
}

SessionId RandomSession(crypto::Prg& rng) { return rng.NextBlock<16>(); }

// ------------------------------------------------------------ reporting

struct Result {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

// ------------------------------------------------------------ AC1

Result TwoPartyCorrectness() {
  auto rng = Rng(101);
  const int overlaps[] = {0, 25, 100};
  int ok = 0, total = 0;
  std::string times;
  for (uint32_t n : {1u << 8, 1u << 10, 1u << 12}) {
    double ms = 0;
    for (int r = 0; r < kTwoPartyRunsPerSize; ++r) {
      int pct = overlaps[r % 3];
      auto g = dataset::Generate({n, 16, rng.NextU64(), 2, uint64_t{n} * pct / 100});
      harness::TwoPartyOptions o;
      o.session = RandomSession(rng);
      o.seed = rng.NextU64();
      auto start = Clock::now();
      auto res = harness::RunLocal2(g.sets[0], g.sets[1], o);
      ms += std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      ++total;
      if (!res.report.aborted && res.receiver.intersection &&
          Sorted(*res.receiver.intersection) == BruteIntersection(g.sets)) {
        ++ok;
      }
    }
    times += Format(" n=%u:%.1fms", n, ms / kTwoPartyRunsPerSize);
  }
  return {ok == total && total == 3 * kTwoPartyRunsPerSize,
          Format("%d/%d runs equal the brute-force intersection (need all); mean time:", ok,
                 total) +
              times};
}

// ------------------------------------------------------------ AC2

tamper::Spec RandomTamper(crypto::Prg& rng, int k) {
  tamper::Spec s;
  switch (k % 4) {
    case 0:
      s.kind = tamper::Kind::kFlipElement;
      break;
    case 1:
      s.kind = tamper::Kind::kFlipPath;
      break;
    case 2:
      s.kind = tamper::Kind::kSwapProofs;
      break;
    default:
      s.kind = tamper::Kind::kExtraElement;
  }
  s.i = static_cast<uint32_t>(rng.Uniform(1u << 20));
  s.j = static_cast<uint32_t>(rng.Uniform(1u << 20));
  return s;
}

Result TwoPartyIntegrity() {
  auto rng = Rng(202);
  int detected = 0;
  std::map<std::string, int> by_phase;
  for (int r = 0; r < kTwoPartyTamperRuns; ++r) {
    uint64_t n = 16 + rng.Uniform(113);
    auto g = dataset::Generate({n, 16, rng.NextU64(), 2, rng.Uniform(n + 1)});
    harness::TwoPartyOptions o;
    o.session = RandomSession(rng);
    o.seed = rng.NextU64();
    bool sender_cheats = rng.Uniform(2) == 1;
    (sender_cheats ? o.sender_tamper : o.receiver_tamper) = RandomTamper(rng, r);
    auto res = harness::RunLocal2(g.sets[0], g.sets[1], o);
    const psi2::Outcome& honest = sender_cheats ? res.receiver : res.sender;
    if (honest.aborted && !res.receiver.intersection) {
      ++detected;
      ++by_phase[honest.abort_phase];
    }
  }
  std::string phases;
  for (auto& [p, c] : by_phase) phases += Format(" %s=%d", p.c_str(), c);
  return {detected == kTwoPartyTamperRuns,
          Format("honest party output abort in %d/%d tampered runs (need all); abort phase:",
                 detected, kTwoPartyTamperRuns) +
              phases};
}

// ------------------------------------------------------------ AC3

Result CommunicationLinearity() {
  const std::map<uint32_t, double> reference = {
      {1u << 10, 462}, {1u << 12, 437}, {1u << 14, 455}};
  auto rng = Rng(303);
  double lo = 1e300, hi = 0;
  std::string rows;
  for (auto [n, ref] : reference) {
    auto g = dataset::Generate({n, 16, rng.NextU64(), 2, n / 4});
    harness::TwoPartyOptions o;
    o.session = RandomSession(rng);
    o.seed = rng.NextU64();
    auto res = harness::RunLocal2(g.sets[0], g.sets[1], o);
    double bits = res.report.bits_per_element;
    lo = std::min(lo, bits);
    hi = std::max(hi, bits);
    rows += Format(" n=%u:%.1f(ref %.0f)", n, bits, ref);
  }
  double spread = (hi - lo) / lo;
  return {spread < kMaxBitsSpread,
          Format("bits/element spread %.3f (need < %.2f);", spread, kMaxBitsSpread) + rows};
}

// ------------------------------------------------------------ AC4 / AC5

const std::vector<std::pair<uint16_t, uint16_t>> kGrid = {{3, 1}, {4, 2}, {5, 3}, {8, 4}};

Result MultiPartyCorrectness() {
  auto rng = Rng(404);
  int ok = 0, total = 0;
  std::string times;
  for (auto [parties, t] : kGrid) {
    for (uint32_t n : {1u << 8, 1u << 10}) {
      double ms = 0;
      for (int r = 0; r < kMultiPartyRuns; ++r) {
        auto g = dataset::Generate({n, 16, rng.NextU64(), parties, rng.Uniform(n + 1)});
        harness::MultiPartyOptions o;
        o.session = RandomSession(rng);
        o.seed = rng.NextU64();
        o.t = t;
        auto start = Clock::now();
        auto res = harness::RunLocalN(g.sets, o);
        ms += std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        ++total;
        const auto& last = res.outcomes.back();
        if (!res.report.aborted && last.intersection &&
            Sorted(*last.intersection) == BruteIntersection(g.sets)) {
          ++ok;
        }
      }
      times += Format(" (%u,%u,n=%u):%.0fms", parties, t, n, ms / kMultiPartyRuns);
    }
  }
  return {ok == total,
          Format("%d/%d runs equal the exact n-way intersection (need all); mean time:", ok,
                 total) +
              times};
}

Result MultiPartyIntegrity() {
  auto rng = Rng(505);
  std::string cells;
  bool pass = true;
  int cheater_saw_abort = 0;
  for (auto [parties, t] : kGrid) {
    int global = 0;
    for (int r = 0; r < kMultiPartyTamperRuns; ++r) {
      uint64_t n = 16 + rng.Uniform(49);
      auto g = dataset::Generate({n, 16, rng.NextU64(), parties, rng.Uniform(n + 1)});
      harness::MultiPartyOptions o;
      o.session = RandomSession(rng);
      o.seed = rng.NextU64();
      o.t = t;
      auto cheater = static_cast<transport::PartyId>(1 + rng.Uniform(parties));
      o.tamper = std::make_pair(cheater, RandomTamper(rng, r));
      auto res = harness::RunLocalN(g.sets, o);
      // Global abort: every honest party outputs abort and nobody learns an
      // intersection. The deviating party's own view is reported only.
      bool all = true;
      for (size_t i = 0; i < res.outcomes.size(); ++i) {
        const psin::Outcome& x = res.outcomes[i];
        if (x.intersection) all = false;
        if (i + 1 != cheater && !x.aborted) all = false;
      }
      if (all) ++global;
      if (res.outcomes[cheater - 1].aborted) ++cheater_saw_abort;
    }
    pass = pass && global == kMultiPartyTamperRuns;
    cells += Format(" (%u,%u):%d/%d", parties, t, global, kMultiPartyTamperRuns);
  }
  return {pass, "global abort per configuration (need all):" + cells +
                    Format("; deviating party itself received the abort in %d/%d runs",
                           cheater_saw_abort, 4 * kMultiPartyTamperRuns)};
}

// ------------------------------------------------------------ AC6

Result ZeroShareCancellation() {
  auto rng = Rng(606);
  bool pass = true;
  std::string cells;
  for (zeroshare::PartyIndex n : {2, 3, 5, 8}) {
    auto seeds = zeroshare::GenerateAllSeeds(n, rng);
    auto keys = zeroshare::Setup(n, seeds);
    std::vector<std::vector<uint64_t>> shares;  // [element][party]
    int zero_total = 0;
    for (int e = 0; e < kZeroShareElements; ++e) {
      Bytes x = RandomBytes(rng, 16);
      std::vector<uint64_t> s;
      uint64_t acc = 0;
      for (const auto& k : keys) {
        s.push_back(zeroshare::Share(k, x).bits());
        acc ^= s.back();
      }
      if (acc == 0) ++zero_total;
      shares.push_back(std::move(s));
    }
    int worst = kZeroShareElements;
    const uint32_t full = (1u << n) - 1;
    for (uint32_t subset = 1; subset < full; ++subset) {
      int nonzero = 0;
      for (const auto& s : shares) {
        uint64_t acc = 0;
        for (int p = 0; p < n; ++p) {
          if (subset >> p & 1) acc ^= s[p];
        }
        if (acc != 0) ++nonzero;
      }
      worst = std::min(worst, nonzero);
    }
    pass = pass && zero_total == kZeroShareElements && worst >= kMinNonzeroSubsetSums;
    cells += Format(" n=%u: full-xor zero %d/%d, worst strict subset nonzero %d/%d (%u subsets);",
                    n, zero_total, kZeroShareElements, worst, kZeroShareElements, full - 1);
  }
  return {pass, "need all zero and >= 999/1000 nonzero:" + cells};
}

// ------------------------------------------------------------ AC7

Result OkvsSuite() {
  auto rng = Rng(707);
  bool roundtrip = true;
  for (uint32_t n : {16u, 1u << 10, 1u << 12}) {
    std::vector<Bytes> keys;
    std::vector<Gf128> values;
    for (uint32_t i = 0; i < n; ++i) {
      keys.push_back(RandomBytes(rng, 16));
      values.push_back(RandomField(rng));
    }
    auto params = okvs::OkvsParams::ForSize(n, rng.NextBlock<16>());
    auto enc = okvs::EncodeWithRetry(keys, values, params, 8, rng);
    if (!enc) {
      roundtrip = false;
      continue;
    }
    for (uint32_t i = 0; i < n; ++i) {
      if (okvs::Decode(enc->table, keys[i]) != values[i] ||
          OracleDecode(enc->table.params, enc->table.values, keys[i]) != values[i]) {
        roundtrip = false;
      }
    }
  }

  int identities = 0;
  const int tables = 10;
  for (int k = 0; k < tables; ++k) {
    auto params = okvs::OkvsParams::ForSize(1000, rng.NextBlock<16>());
    std::vector<Gf128> s1(params.size()), s2(params.size()), sum(params.size()),
        scaled(params.size());
    Gf128 c = RandomField(rng);
    for (size_t i = 0; i < params.size(); ++i) {
      s1[i] = RandomField(rng);
      s2[i] = RandomField(rng);
      sum[i] = s1[i] ^ s2[i];
      scaled[i] = OracleMul(c, s1[i]);
    }
    for (int p = 0; p < kOkvsProbes / tables; ++p) {
      Bytes key = RandomBytes(rng, 1 + rng.Uniform(40));
      Gf128 d1 = okvs::Decode(params, s1, key);
      bool ok = okvs::Decode(params, sum, key) == (d1 ^ okvs::Decode(params, s2, key)) &&
                okvs::Decode(params, scaled, key) == OracleMul(c, d1) &&
                d1 == OracleDecode(params, s1, key);
      if (ok) ++identities;
    }
  }

  int first = 0;
  bool sizing = true;
  const uint32_t n = 1u << 10;
  for (int inst = 0; inst < kOkvsInstances; ++inst) {
    auto params = okvs::OkvsParams::ForSize(n, rng.NextBlock<16>());
    sizing = sizing && params.m_sparse == (123 * n + 99) / 100;
    std::vector<Bytes> keys;
    std::vector<Gf128> values;
    for (uint32_t i = 0; i < n; ++i) {
      keys.push_back(RandomBytes(rng, 16));
      values.push_back(RandomField(rng));
    }
    if (okvs::Encode(keys, values, params, rng)) ++first;
  }
  bool pass = roundtrip && identities == kOkvsProbes && sizing && first >= kMinFirstAttempt;
  return {pass, Format("roundtrip n={16,1024,4096} %s; identities %d/%d (need all); "
                       "m'=ceil(1.23n) %s; first-attempt encodes %d/%d (need >= %d)",
                       roundtrip ? "exact" : "FAILED", identities, kOkvsProbes,
                       sizing ? "yes" : "NO", first, kOkvsInstances, kMinFirstAttempt)};
}

// ------------------------------------------------------------ AC8

Result VoleRelation() {
  vole::DealerBackend backend(Rng(808));
  auto rng = Rng(809);
  uint64_t good = 0, total = 0;
  for (uint32_t m : {1u, 1u << 10, 1u << 16}) {
    for (int s = 0; s < kVoleSessions; ++s) {
      auto pair = backend.Generate(m, RandomSession(rng));
      auto rc = vole::ExtendReceiver(pair.receiver);
      auto sc = vole::ExtendSender(pair.sender);
      if (rc.a_vec.size() != m || rc.c_vec.size() != m || sc.b_vec.size() != m) continue;
      for (uint32_t i = 0; i < m; ++i) {
        ++total;
        if (rc.c_vec[i] == (OracleMul(rc.a_vec[i], sc.delta) ^ sc.b_vec[i])) ++good;
      }
    }
  }
  const uint64_t expected = uint64_t{kVoleSessions} * (1 + (1u << 10) + (1u << 16));
  return {good == expected && total == expected,
          Format("C = A*delta + B on %llu/%llu coordinates (need all)",
                 static_cast<unsigned long long>(good),
                 static_cast<unsigned long long>(expected))};
}

// ------------------------------------------------------------ AC9

using Digest = crypto::Digest;

// Recursive Merkle tree hash: split at the largest power of two below n.
Digest OracleTreeHash(const std::vector<Bytes>& elements, size_t begin, size_t end,
                      ByteView salt) {
  if (end - begin == 1) {
    const uint8_t leaf_tag = 0x00;
    return crypto::Hash({ByteView(&leaf_tag, 1), salt, elements[begin]});
  }
  size_t k = 1;
  while (k * 2 < end - begin) k *= 2;
  Digest l = OracleTreeHash(elements, begin, begin + k, salt);
  Digest r = OracleTreeHash(elements, begin + k, end, salt);
  const uint8_t node_tag = 0x01;
  return crypto::Hash({ByteView(&node_tag, 1), l, r});
}

Result MerkleForgery() {
  auto rng = Rng(909);
  bool exhaustive = true;
  for (uint32_t size = 1; size <= kMerkleMaxExhaustive; ++size) {
    std::vector<Bytes> elements;
    for (uint32_t i = 0; i < size; ++i) elements.push_back(RandomBytes(rng, 16));
    Bytes salt = RandomBytes(rng, 16);
    auto tree = merkle::BuildTree(elements, salt);
    merkle::Root root = tree.root();
    if (root.set_size != size ||
        root.digest != OracleTreeHash(elements, 0, size, salt)) {
      exhaustive = false;
    }
    std::vector<merkle::InclusionProof> proofs;
    for (uint32_t i = 0; i < size; ++i) {
      proofs.push_back(tree.Path(i));
      if (!merkle::Verify(root, proofs.back())) exhaustive = false;
    }
    if (!merkle::VerifyProofSet(root, proofs)) exhaustive = false;
  }

  // Wire layout: version(1) set_size(4) index(4) leaf(32) depth(1) then
  // depth x (side(1) hash(32)).
  int accepted = 0;
  std::map<std::string, int> by_field;
  for (int k = 0; k < kMerkleMutations; ++k) {
    uint32_t size = 2 + static_cast<uint32_t>(rng.Uniform(299));
    std::vector<Bytes> elements;
    for (uint32_t i = 0; i < size; ++i) elements.push_back(RandomBytes(rng, 8));
    Bytes salt = RandomBytes(rng, 16);
    auto tree = merkle::BuildTree(elements, salt);
    merkle::Root root = tree.root();
    auto proof = tree.Path(static_cast<uint32_t>(rng.Uniform(size)));
    Bytes wire = merkle::SerializeProof(proof);
    size_t offset, width;
    const char* field;
    switch (k % 4) {
      case 0:
        field = "leaf";
        offset = 9, width = 32;
        break;
      case 1:
        field = "siblings";
        offset = 42, width = 33 * proof.siblings.size();
        break;
      case 2:
        field = "index";
        offset = 5, width = 4;
        break;
      default:
        field = "set_size";
        offset = 1, width = 4;
    }
    size_t bit = rng.Uniform(8 * width);
    wire[offset + bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    ++by_field[field];
    bool ok = false;
    try {
      ok = merkle::Verify(root, merkle::ParseProof(wire));
    } catch (const DomainError&) {
      ok = false;
    }
    if (ok) ++accepted;
  }
  std::string fields;
  for (auto& [f, c] : by_field) fields += Format(" %s=%d", f.c_str(), c);
  return {exhaustive && accepted == 0,
          Format("sizes 1..%u %s; %d/%d mutated proofs accepted (need 0); mutations:",
                 kMerkleMaxExhaustive, exhaustive ? "all correct" : "FAILED", accepted,
                 kMerkleMutations) +
              fields};
}

// ------------------------------------------------------------ AC10

Result MaskingIdentity() {
  auto rng = Rng(1010);
  int ok = 0, total = 0, library_agrees = 0;
  const int sessions = 10;
  for (int s = 0; s < sessions; ++s) {
    auto g = dataset::Generate({256, 16, rng.NextU64(), 2, 128});
    const auto& x_set = g.sets[0];
    std::vector<Gf128> h;
    for (const Bytes& x : x_set) h.push_back(psi2::HashToField(x));
    auto params = okvs::OkvsParams::ForSize(static_cast<uint32_t>(x_set.size()),
                                            rng.NextBlock<16>());
    auto p = okvs::EncodeWithRetry(x_set, h, params, 8, rng);
    if (!p) continue;
    const auto& pp = p->table.params;
    auto seeds = vole::GenSeed(static_cast<uint32_t>(pp.size()), RandomSession(rng), rng);
    auto rc = vole::ExtendReceiver(seeds.receiver);
    auto sc = vole::ExtendSender(seeds.sender);
    // Receiver sends A' = P + A; sender forms B' = B + A' * delta.
    std::vector<Gf128> a_prime(pp.size()), b_prime(pp.size());
    for (size_t i = 0; i < pp.size(); ++i) {
      a_prime[i] = p->table.values[i] ^ rc.a_vec[i];
      b_prime[i] = sc.b_vec[i] ^ OracleMul(a_prime[i], sc.delta);
    }
    if (psi2::MaskSenderVector(sc.b_vec, a_prime, sc.delta) == b_prime) ++library_agrees;
    for (int k = 0; k < kMaskingInstances / sessions; ++k) {
      const Bytes& x = g.core[rng.Uniform(g.core.size())];
      Gf128 lhs = OracleDecode(pp, b_prime, x) ^ OracleMul(sc.delta, psi2::HashToField(x));
      Gf128 rhs = OracleDecode(pp, rc.c_vec, x);
      ++total;
      if (lhs == rhs && psi2::SenderValue(pp, b_prime, sc.delta, x) == rhs) ++ok;
    }
  }
  return {ok == kMaskingInstances && total == kMaskingInstances && library_agrees == sessions,
          Format("decode(B',x) + delta*H(x) = decode(C,x) in %d/%d instances (need all); "
                 "library masking agrees in %d/%d sessions",
                 ok, kMaskingInstances, library_agrees, sessions)};
}

}  // namespace
}  // namespace authpsi

int main() {
  using namespace authpsi;
  struct Criterion {
    const char* id;
    const char* name;
    std::function<Result()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1", "two-party correctness", TwoPartyCorrectness},
      {"AC2", "two-party integrity", TwoPartyIntegrity},
      {"AC3", "communication linearity", CommunicationLinearity},
      {"AC4", "multi-party correctness", MultiPartyCorrectness},
      {"AC5", "multi-party integrity", MultiPartyIntegrity},
      {"AC6", "zero-sharing cancellation", ZeroShareCancellation},
      {"AC7", "OKVS suite", OkvsSuite},
      {"AC8", "VOLE relation", VoleRelation},
      {"AC9", "Merkle forgery resistance", MerkleForgery},
      {"AC10", "masking identity", MaskingIdentity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = Clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double sec = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("%-4s %s  %s: %s [%.1f s]\n", c.id, r.pass ? "PASS" : "FAIL", c.name,
                r.detail.c_str(), sec);
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
