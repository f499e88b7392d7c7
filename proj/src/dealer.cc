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

#include "authpsi/dealer.h"

#include <cstdio>

#include "authpsi/errors.h"
#include "authpsi/vole.h"

namespace authpsi::dealer {

using transport::Envelope;
namespace msg = transport::msg;

Bytes EncodeVoleRequest(const VoleRequest& request) {
  ByteWriter w;
  w.U32(request.length);
  w.U16(request.receiver);
  w.U16(request.sender);
  return w.Take();
}

VoleRequest ParseVoleRequest(ByteView bytes) {
  ByteReader r(bytes);
  VoleRequest req;
  req.length = r.U32();
  req.receiver = r.U16();
  req.sender = r.U16();
  r.ExpectEnd();
  if (req.length == 0) throw DomainError("VOLE length must be positive");
  if (req.receiver == req.sender) throw DomainError("VOLE parties must differ");
  return req;
}

DealerService::DealerService(transport::Endpoint& endpoint,
                             const Block32& master_seed)
    : endpoint_(endpoint),
      vole_rng_(crypto::Prg(master_seed).Derive(AsView("vole"))),
      oprf_(crypto::Prg(master_seed).Derive(AsView("oprf"))) {}

void DealerService::Run() {
  while (!stop_) {
    std::optional<transport::Delivery> d;
    try {
      d = endpoint_.Recv(transport::Duration(50));
    } catch (const TransportError&) {
      return;  // every peer is gone
    }
    if (!d) continue;
    try {
      Handle(*d);
      ++served_;
    } catch (const DomainError& e) {
      std::fprintf(stderr, "dealer: dropping malformed request from %u: %s\n",
                   d->from, e.what());
    } catch (const TransportError&) {
      // The requester or its counterpart already left (typically after an
      // abort); there is nobody to serve.
    }
  }
}

void DealerService::Handle(const transport::Delivery& d) {
  const SessionId& session = d.envelope.session;
  if (d.envelope.type == msg::kVoleRequest) {
    VoleRequest req = ParseVoleRequest(d.envelope.payload);
    if (req.receiver != d.from) {
      throw DomainError("VOLE request must come from the receiver");
    }
    crypto::Prg rng = vole_rng_.Derive(session);
    vole::SeedPair pair =
        forced_delta_ ? vole::GenSeedWithDelta(req.length, session, *forced_delta_, rng)
                      : vole::GenSeed(req.length, session, rng);
    endpoint_.Send(req.receiver,
                   {session, msg::kVoleSeed, vole::SerializeSeed(pair.receiver)});
    endpoint_.Send(req.sender,
                   {session, msg::kVoleSeed, vole::SerializeSeed(pair.sender)});
    return;
  }
  if (d.envelope.type == msg::kOprfDealer) {
    opprf::DealerMessage m = opprf::ParseDealerMessage(d.envelope.payload);
    Bytes reply;
    switch (m.op) {
      case opprf::DealerOp::kKeyRequest:
        reply = opprf::EncodeKeyResponse(m.session, oprf_.KeyFor(m.session));
        break;
      case opprf::DealerOp::kQuery:
        reply = opprf::EncodeResponse(oprf_.Evaluate(m.session, m.queries));
        break;
      default:
        throw DomainError("dealer only accepts key requests and queries");
    }
    endpoint_.Send(d.from, {session, msg::kOprfDealer, std::move(reply)});
    return;
  }
  throw DomainError("unexpected message type for the dealer");
}

}  // namespace authpsi::dealer
