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

#include <atomic>
#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "authpsi/transport.h"

namespace authpsi::transport {

struct Address {
  std::string host;
  uint16_t port = 0;
};

// "host:port"; throws DomainError.
Address ParseAddress(std::string_view text);

// TCP backend: one connection per directed party pair. The connecting side
// writes its party id (2B BE) once, then only frames; the accepting side
// only reads.
class TcpEndpoint : public Endpoint {
 public:
  // Binds and listens immediately; port 0 picks an ephemeral port.
  TcpEndpoint(PartyId self, std::vector<PartyId> peers, const Address& listen,
              size_t max_payload = kDefaultMaxPayload);
  ~TcpEndpoint() override;

  uint16_t port() const { return port_; }

  // Opens the outgoing connection to every peer, retrying refused
  // connections until `timeout` elapses. Throws TransportError.
  void Connect(const std::map<PartyId, Address>& addresses, Duration timeout);

  // Blocks until every peer has connected back to this endpoint, so no
  // party finishes and leaves before the mesh is complete. Throws
  // TransportError if that does not happen within `timeout`.
  void AwaitPeers(Duration timeout);

  void Close() override;

 protected:
  void Transmit(PartyId to, const Bytes& frame) override;

 private:
  struct Outgoing {
    int fd = -1;
    std::mutex mu;
  };

  void AcceptLoop();
  void ReadLoop(int fd);

  int listen_fd_ = -1;
  uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::thread acceptor_;
  std::mutex readers_mu_;
  std::vector<std::thread> readers_;
  std::vector<int> incoming_fds_;
  std::map<PartyId, std::unique_ptr<Outgoing>> outgoing_;
  std::mutex incoming_mu_;
  std::condition_variable incoming_cv_;
  std::set<PartyId> incoming_peers_;
};

}  // namespace authpsi::transport
