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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "authpsi/bytes.h"
#include "authpsi/crypto.h"
#include "authpsi/gf128.h"
#include "authpsi/merkle.h"
#include "authpsi/okvs.h"
#include "authpsi/opprf.h"
#include "authpsi/report.h"
#include "authpsi/tamper.h"
#include "authpsi/transport.h"
#include "authpsi/zeroshare.h"

// n-party authenticated PSI tolerating t colluders. Parties 1..v-1 (group
// A) deliver OKVS-encoded PRF shares to the coordinator P_v and PRF keys to
// group B (P_{v+1}..P_n); P_v..P_{n-1} then program OPPRFs that P_n queries,
// and zero-sharing among P_v..P_n makes the values of common elements
// cancel at P_n.
namespace authpsi::psin {

using transport::PartyId;

struct Topology {
  uint16_t n = 0;
  uint16_t t = 0;
  uint16_t v = 0;

  // Requires 1 <= t <= ceil(n / 2) and v = n - t >= 2; throws ConfigError.
  static Topology Make(uint16_t n, uint16_t t);

  bool InGroupA(PartyId i) const { return i >= 1 && i < v; }
  bool IsCoordinator(PartyId i) const { return i == v; }
  bool InGroupB(PartyId i) const { return i > v && i <= n; }
  bool IsOutputParty(PartyId i) const { return i == n; }
  // P_v..P_{n-1} act as OPPRF senders towards P_n.
  bool ProgramsOpprf(PartyId i) const { return i >= v && i < n; }
  std::vector<PartyId> Parties() const;
  // P_v..P_n.
  std::vector<PartyId> ZeroShareGroup() const;
};

// F_k(x) for the group-A -> group-B keys.
XorValue GroupPrf(const Block16& key, ByteView element);
// XOR of F_k(x) over the given keys.
XorValue XorPrf(std::span<const Block16> keys, ByteView element);
// XOR of the low 64 bits of Decode(T_i, x) over the given tables.
XorValue XorDecode(std::span<const okvs::OkvsTable> tables, ByteView element);

struct Config {
  PartyId index = 0;
  Topology topology;
  std::vector<Bytes> input;
  std::vector<merkle::Root> roots;  // roots[i - 1] announced by P_i
  SessionId session{};
  bool salted = true;
  uint32_t lambda = okvs::kDefaultLambda;
  uint32_t okvs_attempts = 8;
  std::optional<tamper::Spec> tamper;
};

enum class Phase : uint8_t { kFresh, kTransformed, kInteracted, kDone, kAborted };
const char* PhaseName(Phase phase);

struct Outgoing {
  PartyId to = 0;
  transport::Envelope envelope;
};

// Event-driven state machine for one party. Messages between a given pair
// arrive in order; no order across pairs is assumed.
class Engine {
 public:
  // Throws ConfigError for an invalid topology, index, root list, unequal
  // set sizes, or input that does not match the party's announced root.
  Engine(Config config, crypto::Prg rng);

  // Transform: proofs to everyone, plus keys / share table / zero-sharing
  // seeds / OPRF key request according to the party's role.
  std::vector<Outgoing> Start();
  // Feeds one inbound envelope. Malformed or unexpected input aborts the
  // session; the returned messages then carry the abort notices.
  std::vector<Outgoing> Handle(PartyId from, const transport::Envelope& envelope);

  Phase phase() const { return phase_; }
  bool terminal() const { return phase_ == Phase::kDone || phase_ == Phase::kAborted; }
  PartyId index() const { return config_.index; }
  const Config& config() const { return config_; }

  // Set only at P_n after a successful run.
  const std::optional<std::vector<Bytes>>& intersection() const { return intersection_; }
  const std::string& abort_reason() const { return abort_reason_; }
  const char* abort_step() const;

  // White-box views.
  const std::vector<Bytes>& protocol_input() const { return input_; }
  // Group A: keys k_i^j sent to each group-B party j.
  const std::map<PartyId, Block16>& keys_sent() const { return keys_sent_; }
  // Coordinator / group B: A(x) aligned with protocol_input().
  const std::vector<XorValue>& shares() const { return shares_; }
  // P_n: z values from each OPPRF sender, aligned with protocol_input().
  const std::map<PartyId, std::vector<XorValue>>& opprf_outputs() const {
    return opprf_outputs_;
  }
  const std::optional<zeroshare::ZsKeySet>& zero_share_keys() const { return zs_keys_; }
  const std::vector<std::pair<std::string, double>>& phase_ms() const {
    return clock_.phases();
  }

 private:
  std::vector<Outgoing> Dispatch(PartyId from, const transport::Envelope& envelope);
  std::vector<Outgoing> Advance();
  std::vector<Outgoing> AbortAll(std::string reason, PartyId skip);
  void Send(std::vector<Outgoing>& out, PartyId to, uint8_t type, Bytes payload) const;
  SessionId OprfSession(PartyId sender) const;
  size_t ExpectedSeeds() const;

  Config config_;
  crypto::Prg rng_;
  Phase phase_ = Phase::kFresh;
  Phase abort_phase_ = Phase::kFresh;
  std::string abort_reason_;
  report::PhaseClock clock_;

  std::vector<Bytes> input_;
  std::set<PartyId> verified_;
  std::map<PartyId, Block16> keys_sent_;
  std::map<PartyId, Block16> keys_received_;
  std::map<PartyId, okvs::OkvsTable> tables_;
  std::vector<zeroshare::PairSeed> seeds_;
  std::optional<zeroshare::ZsKeySet> zs_keys_;
  std::optional<opprf::OprfKey> oprf_key_;
  std::map<PartyId, opprf::OpprfHint> hints_;
  std::map<PartyId, std::vector<XorValue>> opprf_outputs_;
  std::vector<XorValue> shares_;
  bool shares_ready_ = false;
  std::optional<std::vector<Bytes>> intersection_;
};

struct Outcome {
  bool aborted = false;
  std::string abort_phase;
  std::string abort_reason;
  std::optional<std::vector<Bytes>> intersection;  // P_n only
  std::vector<std::pair<std::string, double>> phase_ms;
};

// Pumps `engine` over `endpoint` until it terminates. Throws
// TransportError on network failure or when `timeout` elapses between
// messages.
Outcome Drive(transport::Endpoint& endpoint, Engine& engine,
              transport::Duration timeout);
Outcome RunParty(transport::Endpoint& endpoint, const Config& config,
                 crypto::Prg rng, transport::Duration timeout);

}  // namespace authpsi::psin
