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

#include "authpsi/opprf.h"

#include "authpsi/errors.h"

namespace authpsi::opprf {

namespace {

constexpr uint8_t kOprfTag = 0x4B;

}  // namespace

XorValue OprfEval(const OprfKey& key, ByteView query) {
  Bytes input;
  input.reserve(query.size() + 1);
  input.push_back(kOprfTag);
  input.insert(input.end(), query.begin(), query.end());
  return XorValue(crypto::Prf64(key, input));
}

SessionId DeriveSession(const SessionId& base, uint16_t sender_index) {
  static constexpr char kLabel[] = "opprf-session";
  uint8_t idx[2] = {static_cast<uint8_t>(sender_index >> 8),
                    static_cast<uint8_t>(sender_index)};
  auto d = crypto::Hash(
      {AsView(std::string_view(kLabel, sizeof(kLabel) - 1)), base, idx});
  SessionId out{};
  std::copy_n(d.begin(), out.size(), out.begin());
  return out;
}

OprfKey IdealOprf::KeyFor(const SessionId& session) {
  std::lock_guard lock(mu_);
  auto it = keys_.find(session);
  if (it != keys_.end()) return it->second;
  // Keys depend only on the dealer seed and the session, not on the order in
  // which concurrent sessions first ask for them.
  OprfKey key{};
  rng_.Derive(session).Fill(key);
  keys_.emplace(session, key);
  return key;
}

OprfEvaluation IdealOprf::Evaluate(const SessionId& session,
                                   std::span<const Bytes> queries) {
  OprfKey key = KeyFor(session);
  OprfEvaluation eval;
  eval.oprf_session = session;
  eval.values.reserve(queries.size());
  for (const auto& q : queries) eval.values.push_back(OprfEval(key, q));
  return eval;
}

OpprfHint Program(const ProgrammedPoints& points, const SessionId& session,
                  const OprfKey& key, crypto::Prg& rng, uint32_t max_attempts) {
  if (points.xs.size() != points.ys.size()) {
    throw DomainError("programmed points have mismatched x and y counts");
  }
  std::vector<Gf128> encoded(points.xs.size());
  for (size_t i = 0; i < points.xs.size(); ++i) {
    encoded[i] = (points.ys[i] ^ OprfEval(key, points.xs[i])).Embed();
  }
  Block16 row_seed{};
  rng.Fill(row_seed);
  auto params =
      okvs::OkvsParams::ForSize(static_cast<uint32_t>(points.xs.size()), row_seed);
  auto result = okvs::EncodeWithRetry(points.xs, encoded, params, max_attempts, rng);
  if (!result) {
    throw ProtocolError("OPPRF hint encoding failed after " +
                        std::to_string(max_attempts) + " attempts");
  }
  return OpprfHint{session, std::move(result->table)};
}

XorValue Query(const OpprfHint& hint, ByteView query,
               const SessionId& eval_session, XorValue oprf_value) {
  if (eval_session != hint.oprf_session) {
    throw DomainError("OPRF evaluation belongs to a different OPPRF session");
  }
  return XorValue::Truncate(okvs::Decode(hint.table, query)) ^ oprf_value;
}

std::vector<XorValue> QueryBatch(const OpprfHint& hint,
                                 std::span<const Bytes> queries,
                                 const OprfEvaluation& evaluation) {
  if (evaluation.values.size() != queries.size()) {
    throw DomainError("OPRF evaluation count does not match query count");
  }
  std::vector<XorValue> out;
  out.reserve(queries.size());
  for (size_t i = 0; i < queries.size(); ++i) {
    out.push_back(
        Query(hint, queries[i], evaluation.oprf_session, evaluation.values[i]));
  }
  return out;
}

Bytes SerializeHint(const OpprfHint& hint) {
  ByteWriter w;
  w.Raw(hint.oprf_session);
  okvs::WriteTable(w, hint.table);
  return w.Take();
}

OpprfHint ParseHint(ByteView bytes) {
  ByteReader r(bytes);
  OpprfHint hint;
  hint.oprf_session = r.Fixed<16>();
  hint.table = okvs::ReadTable(r);
  r.ExpectEnd();
  return hint;
}

Bytes EncodeKeyRequest(const SessionId& session) {
  ByteWriter w;
  w.U8(static_cast<uint8_t>(DealerOp::kKeyRequest));
  w.Raw(session);
  return w.Take();
}

Bytes EncodeKeyResponse(const SessionId& session, const OprfKey& key) {
  ByteWriter w;
  w.U8(static_cast<uint8_t>(DealerOp::kKeyResponse));
  w.Raw(session);
  w.Raw(key);
  return w.Take();
}

Bytes EncodeQuery(const SessionId& session, std::span<const Bytes> queries) {
  ByteWriter w;
  w.U8(static_cast<uint8_t>(DealerOp::kQuery));
  w.Raw(session);
  w.U32(static_cast<uint32_t>(queries.size()));
  for (const auto& q : queries) w.LengthPrefixed(q);
  return w.Take();
}

Bytes EncodeResponse(const OprfEvaluation& evaluation) {
  ByteWriter w;
  w.U8(static_cast<uint8_t>(DealerOp::kResponse));
  w.Raw(evaluation.oprf_session);
  w.U32(static_cast<uint32_t>(evaluation.values.size()));
  Bytes raw;
  raw.reserve(evaluation.values.size() * XorValue::kBytes);
  for (auto v : evaluation.values) v.AppendTo(raw);
  w.Raw(raw);
  return w.Take();
}

DealerMessage ParseDealerMessage(ByteView bytes) {
  ByteReader r(bytes);
  DealerMessage m;
  uint8_t op = r.U8();
  if (op < 0x01 || op > 0x04) throw DomainError("unknown OPRF dealer op");
  m.op = static_cast<DealerOp>(op);
  m.session = r.Fixed<16>();
  switch (m.op) {
    case DealerOp::kKeyRequest:
      break;
    case DealerOp::kKeyResponse:
      m.key = r.Fixed<16>();
      break;
    case DealerOp::kQuery: {
      uint32_t count = r.U32();
      for (uint32_t i = 0; i < count; ++i) m.queries.push_back(r.LengthPrefixed());
      break;
    }
    case DealerOp::kResponse: {
      uint32_t count = r.U32();
      if (r.remaining() / XorValue::kBytes < count) {
        throw DomainError("truncated OPRF response");
      }
      m.values.reserve(count);
      for (uint32_t i = 0; i < count; ++i) {
        m.values.push_back(XorValue::FromBytes(r.Raw(XorValue::kBytes)));
      }
      break;
    }
  }
  r.ExpectEnd();
  return m;
}

}  // namespace authpsi::opprf
