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

#include "authpsi/harness.h"

#include <exception>
#include <functional>
#include <memory>
#include <thread>

#include "authpsi/dealer.h"
#include "authpsi/errors.h"
#include "authpsi/tcp_transport.h"

namespace authpsi::harness {
namespace {

using transport::Endpoint;
using transport::PartyId;

// Owns the endpoints of one local session.
class Network {
 public:
  Network(Backend backend, const std::vector<PartyId>& parties) {
    if (backend == Backend::kInProc) {
      bus_ = std::make_unique<transport::InProcBus>(parties);
      for (PartyId p : parties) endpoints_[p] = &bus_->endpoint(p);
      return;
    }
    std::map<PartyId, transport::Address> addresses;
    for (PartyId p : parties) {
      auto ep = std::make_unique<transport::TcpEndpoint>(
          p, parties, transport::Address{"127.0.0.1", 0});
      addresses[p] = {"127.0.0.1", ep->port()};
      endpoints_[p] = ep.get();
      tcp_.push_back(std::move(ep));
    }
    for (auto& ep : tcp_) ep->Connect(addresses, transport::Duration(5000));
    for (auto& ep : tcp_) ep->AwaitPeers(transport::Duration(5000));
  }

  Endpoint& at(PartyId p) { return *endpoints_.at(p); }

 private:
  std::unique_ptr<transport::InProcBus> bus_;
  std::vector<std::unique_ptr<transport::TcpEndpoint>> tcp_;
  std::map<PartyId, Endpoint*> endpoints_;
};

// Runs `parties` bodies concurrently next to a dealer, closing each
// endpoint as its body returns. Rethrows the first party exception.
void RunAll(Network& net, const Block32& dealer_seed,
            const std::vector<std::pair<PartyId, std::function<void(Endpoint&)>>>& bodies) {
  dealer::DealerService dealer(net.at(transport::kDealer), dealer_seed);
  std::thread dealer_thread([&] { dealer.Run(); });

  std::vector<std::exception_ptr> errors(bodies.size());
  std::vector<std::thread> threads;
  for (size_t k = 0; k < bodies.size(); ++k) {
    threads.emplace_back([&, k] {
      Endpoint& ep = net.at(bodies[k].first);
      try {
        bodies[k].second(ep);
      } catch (...) {
        errors[k] = std::current_exception();
      }
      ep.Close();
    });
  }
  for (auto& t : threads) t.join();
  dealer.Stop();
  dealer_thread.join();
  net.at(transport::kDealer).Close();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void Collect(Network& net, const std::vector<PartyId>& ids, RunResult& result) {
  for (PartyId p : ids) {
    const auto& meter = net.at(p).meter();
    report::AddTraffic(result.report, meter, false);
    crypto::Sha256 h;
    for (PartyId q : ids) {
      if (q != p) h.Update(meter.TranscriptDigest(q, transport::Direction::kSent));
    }
    result.transcripts[p] = h.Final();
  }
  report::Finish(result.report);
}

}  // namespace

crypto::Prg PartyRng(uint64_t seed, PartyId party) {
  uint8_t label[6] = {'p', 'a', 'r', 't', static_cast<uint8_t>(party >> 8),
                      static_cast<uint8_t>(party)};
  return crypto::Prg(crypto::Prg::SeedFromU64(seed)).Derive(label);
}

Block32 DealerSeed(uint64_t seed) {
  return crypto::Prg(crypto::Prg::SeedFromU64(seed)).Derive(AsView("dealer")).seed();
}

TwoPartyResult RunLocal2(const std::vector<Bytes>& receiver_set,
                         const std::vector<Bytes>& sender_set,
                         const TwoPartyOptions& options) {
  psi2::Config rc;
  rc.role = psi2::Role::kReceiver;
  rc.input = receiver_set;
  rc.session = options.session;
  rc.salted = options.salted;
  rc.announced_root = psi2::Commit(receiver_set, options.session, options.salted);
  rc.peer_root = psi2::Commit(sender_set, options.session, options.salted);
  rc.tamper = options.receiver_tamper;
  psi2::Config sc = rc;
  sc.role = psi2::Role::kSender;
  sc.input = sender_set;
  std::swap(sc.announced_root, sc.peer_root);
  sc.tamper = options.sender_tamper;

  const std::vector<PartyId> ids = {transport::kDealer, psi2::kReceiverId,
                                    psi2::kSenderId};
  Network net(options.backend, ids);
  TwoPartyResult result;
  RunAll(net, DealerSeed(options.seed),
         {{psi2::kReceiverId,
           [&](Endpoint& ep) {
             result.receiver = psi2::RunParty(ep, rc, PartyRng(options.seed, psi2::kReceiverId),
                                              options.timeout);
           }},
          {psi2::kSenderId, [&](Endpoint& ep) {
             result.sender = psi2::RunParty(ep, sc, PartyRng(options.seed, psi2::kSenderId),
                                            options.timeout);
           }}});

  auto& rep = result.report;
  rep.construction = "2pc";
  rep.session = options.session;
  rep.n = receiver_set.size();
  rep.parties = 2;
  rep.phase_ms = result.receiver.phase_ms;
  const psi2::Outcome* aborted = result.receiver.aborted ? &result.receiver
                                 : result.sender.aborted ? &result.sender
                                                         : nullptr;
  if (aborted) {
    rep.aborted = true;
    rep.abort_phase = aborted->abort_phase;
    rep.abort_reason = aborted->abort_reason;
  }
  if (result.receiver.intersection) rep.intersection_size = result.receiver.intersection->size();
  Collect(net, ids, result);
  return result;
}

MultiPartyResult RunLocalN(const std::vector<std::vector<Bytes>>& sets,
                           const MultiPartyOptions& options) {
  if (sets.size() > UINT16_MAX) throw ConfigError("too many parties");
  const auto n = static_cast<uint16_t>(sets.size());
  psin::Topology topo = psin::Topology::Make(n, options.t);

  std::vector<merkle::Root> roots;
  for (const auto& s : sets) roots.push_back(psi2::Commit(s, options.session, options.salted));

  std::vector<PartyId> ids = {transport::kDealer};
  std::vector<psin::Config> configs;
  for (PartyId i = 1; i <= n; ++i) {
    ids.push_back(i);
    psin::Config c;
    c.index = i;
    c.topology = topo;
    c.input = sets[i - 1];
    c.roots = roots;
    c.session = options.session;
    c.salted = options.salted;
    if (options.tamper && options.tamper->first == i) c.tamper = options.tamper->second;
    configs.push_back(std::move(c));
  }

  Network net(options.backend, ids);
  MultiPartyResult result;
  result.outcomes.resize(n);
  std::vector<std::pair<PartyId, std::function<void(Endpoint&)>>> bodies;
  for (PartyId i = 1; i <= n; ++i) {
    bodies.emplace_back(i, [&, i](Endpoint& ep) {
      result.outcomes[i - 1] = psin::RunParty(ep, configs[i - 1],
                                              PartyRng(options.seed, i), options.timeout);
    });
  }
  RunAll(net, DealerSeed(options.seed), bodies);

  auto& rep = result.report;
  rep.construction = "npc";
  rep.session = options.session;
  rep.n = sets.empty() ? 0 : sets.front().size();
  rep.parties = n;
  rep.t = options.t;
  const psin::Outcome& out_party = result.outcomes.back();
  rep.phase_ms = out_party.phase_ms;
  for (const auto& o : result.outcomes) {
    if (o.aborted) {
      rep.aborted = true;
      rep.abort_phase = o.abort_phase;
      rep.abort_reason = o.abort_reason;
      break;
    }
  }
  if (out_party.intersection) rep.intersection_size = out_party.intersection->size();
  Collect(net, ids, result);
  return result;
}

}  // namespace authpsi::harness
