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
#include <mutex>
#include <span>
#include <vector>

#include "authpsi/bytes.h"
#include "authpsi/crypto.h"
#include "authpsi/gf128.h"
#include "authpsi/okvs.h"

// Oblivious programmable PRF built from an ideal OPRF plus an OKVS hint:
// the sender encodes {(x_i, y_i ^ OPRF_k(x_i))}; the receiver decodes the
// hint at q and XORs its OPRF evaluation of q.
namespace authpsi::opprf {

using OprfKey = Block16;

XorValue OprfEval(const OprfKey& key, ByteView query);

// Per-sender OPPRF session id derived from the protocol session.
SessionId DeriveSession(const SessionId& base, uint16_t sender_index);

struct ProgrammedPoints {
  std::vector<Bytes> xs;
  std::vector<XorValue> ys;
};

struct OpprfHint {
  SessionId oprf_session{};
  okvs::OkvsTable table;
};

struct OprfEvaluation {
  SessionId oprf_session{};
  std::vector<XorValue> values;
};

// Dealer-held ideal OPRF: one key per session, created on first use.
class IdealOprf {
 public:
  explicit IdealOprf(crypto::Prg rng) : rng_(std::move(rng)) {}

  OprfKey KeyFor(const SessionId& session);
  OprfEvaluation Evaluate(const SessionId& session,
                          std::span<const Bytes> queries);

 private:
  std::mutex mu_;
  crypto::Prg rng_;
  std::map<SessionId, OprfKey> keys_;
};

// Sender side. Throws DomainError on duplicate or mismatched points and
// ProtocolError if the OKVS cannot be encoded within `max_attempts`.
OpprfHint Program(const ProgrammedPoints& points, const SessionId& session,
                  const OprfKey& key, crypto::Prg& rng,
                  uint32_t max_attempts = 8);

// Receiver side. Throws DomainError if the evaluation belongs to another
// session.
XorValue Query(const OpprfHint& hint, ByteView query,
               const SessionId& eval_session, XorValue oprf_value);
std::vector<XorValue> QueryBatch(const OpprfHint& hint,
                                 std::span<const Bytes> queries,
                                 const OprfEvaluation& evaluation);

// session id (16B) || OKVS table wire format
Bytes SerializeHint(const OpprfHint& hint);
OpprfHint ParseHint(ByteView bytes);

// Dealer traffic. First byte selects the message kind.
enum class DealerOp : uint8_t {
  kKeyRequest = 0x01,   // || session
  kKeyResponse = 0x02,  // || session || key
  kQuery = 0x03,        // || session || count (4B BE) || length-prefixed queries
  kResponse = 0x04,     // || session || count (4B BE) || 8-byte values
};

Bytes EncodeKeyRequest(const SessionId& session);
Bytes EncodeKeyResponse(const SessionId& session, const OprfKey& key);
Bytes EncodeQuery(const SessionId& session, std::span<const Bytes> queries);
Bytes EncodeResponse(const OprfEvaluation& evaluation);

struct DealerMessage {
  DealerOp op = DealerOp::kKeyRequest;
  SessionId session{};
  OprfKey key{};
  std::vector<Bytes> queries;
  std::vector<XorValue> values;
};
DealerMessage ParseDealerMessage(ByteView bytes);

}  // namespace authpsi::opprf
