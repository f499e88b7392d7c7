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

#include "authpsi/tcp_transport.h"

#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>

#include "authpsi/errors.h"

namespace authpsi::transport {
namespace {

std::string Errno(const char* what) {
  return std::string(what) + ": " + std::strerror(errno);
}

bool WriteAll(int fd, const uint8_t* data, size_t len) {
  while (len > 0) {
    ssize_t n = ::send(fd, data, len, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    data += n;
    len -= static_cast<size_t>(n);
  }
  return true;
}

// False on EOF or error.
bool ReadAll(int fd, uint8_t* data, size_t len) {
  while (len > 0) {
    ssize_t n = ::recv(fd, data, len, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    data += n;
    len -= static_cast<size_t>(n);
  }
  return true;
}

struct AddrInfo {
  addrinfo* head = nullptr;
  ~AddrInfo() {
    if (head) freeaddrinfo(head);
  }
};

void Resolve(const Address& addr, bool passive, AddrInfo& out) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  std::string port = std::to_string(addr.port);
  const char* host = addr.host.empty() ? nullptr : addr.host.c_str();
  int rc = getaddrinfo(host, port.c_str(), &hints, &out.head);
  if (rc != 0) {
    throw TransportError("cannot resolve " + addr.host + ": " + gai_strerror(rc));
  }
}

}  // namespace

Address ParseAddress(std::string_view text) {
  auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon + 1 == text.size()) {
    throw DomainError("address must be host:port");
  }
  Address addr;
  addr.host = std::string(text.substr(0, colon));
  if (addr.host.size() >= 2 && addr.host.front() == '[' && addr.host.back() == ']') {
    addr.host = addr.host.substr(1, addr.host.size() - 2);
  }
  auto port_text = text.substr(colon + 1);
  unsigned port = 0;
  auto [ptr, ec] = std::from_chars(port_text.data(),
                                   port_text.data() + port_text.size(), port);
  if (ec != std::errc() || ptr != port_text.data() + port_text.size() ||
      port > 65535) {
    throw DomainError("invalid port in address");
  }
  addr.port = static_cast<uint16_t>(port);
  return addr;
}

TcpEndpoint::TcpEndpoint(PartyId self, std::vector<PartyId> peers,
                         const Address& listen, size_t max_payload)
    : Endpoint(self, std::move(peers), max_payload) {
  AddrInfo info;
  Resolve(listen, true, info);
  for (addrinfo* ai = info.head; ai != nullptr; ai = ai->ai_next) {
    int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd, 64) == 0) {
      listen_fd_ = fd;
      break;
    }
    ::close(fd);
  }
  if (listen_fd_ < 0) throw TransportError(Errno("cannot listen"));
  sockaddr_storage bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = bound.ss_family == AF_INET6
              ? ntohs(reinterpret_cast<sockaddr_in6*>(&bound)->sin6_port)
              : ntohs(reinterpret_cast<sockaddr_in*>(&bound)->sin_port);
  acceptor_ = std::thread([this] { AcceptLoop(); });
}

TcpEndpoint::~TcpEndpoint() { Close(); }

void TcpEndpoint::Connect(const std::map<PartyId, Address>& addresses,
                          Duration timeout) {
  auto deadline = std::chrono::steady_clock::now() + timeout;
  for (PartyId peer : peers()) {
    auto it = addresses.find(peer);
    if (it == addresses.end()) {
      throw TransportError("no address for party " + std::to_string(peer));
    }
    int fd = -1;
    while (fd < 0) {
      AddrInfo info;
      Resolve(it->second, false, info);
      for (addrinfo* ai = info.head; ai != nullptr && fd < 0; ai = ai->ai_next) {
        int s = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (s < 0) continue;
        if (::connect(s, ai->ai_addr, ai->ai_addrlen) == 0) {
          fd = s;
        } else {
          ::close(s);
        }
      }
      if (fd >= 0) break;
      if (std::chrono::steady_clock::now() >= deadline) {
        throw TransportError("cannot connect to party " + std::to_string(peer));
      }
      std::this_thread::sleep_for(Duration(50));
    }
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    uint8_t hello[2] = {static_cast<uint8_t>(self() >> 8),
                        static_cast<uint8_t>(self())};
    if (!WriteAll(fd, hello, sizeof(hello))) {
      ::close(fd);
      throw TransportError(Errno("handshake failed"));
    }
    auto out = std::make_unique<Outgoing>();
    out->fd = fd;
    outgoing_[peer] = std::move(out);
  }
}

void TcpEndpoint::AwaitPeers(Duration timeout) {
  std::unique_lock lock(incoming_mu_);
  bool complete = incoming_cv_.wait_for(lock, timeout, [&] {
    return incoming_peers_.size() == peers().size();
  });
  if (!complete) throw TransportError("not every peer connected in time");
}

void TcpEndpoint::Transmit(PartyId to, const Bytes& frame) {
  auto it = outgoing_.find(to);
  if (it == outgoing_.end()) {
    throw TransportError("not connected to party " + std::to_string(to));
  }
  std::lock_guard lock(it->second->mu);
  if (it->second->fd < 0 || !WriteAll(it->second->fd, frame.data(), frame.size())) {
    throw TransportError("connection to party " + std::to_string(to) + " lost");
  }
}

void TcpEndpoint::AcceptLoop() {
  while (!stopping_) {
    pollfd p{listen_fd_, POLLIN, 0};
    int rc = ::poll(&p, 1, 50);
    if (rc <= 0 || stopping_) continue;
    int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    std::lock_guard lock(readers_mu_);
    if (stopping_) {
      ::close(fd);
      break;
    }
    incoming_fds_.push_back(fd);
    readers_.emplace_back([this, fd] { ReadLoop(fd); });
  }
}

void TcpEndpoint::ReadLoop(int fd) {
  uint8_t hello[2];
  if (!ReadAll(fd, hello, sizeof(hello))) return;
  PartyId from = static_cast<PartyId>((hello[0] << 8) | hello[1]);
  if (std::find(peers().begin(), peers().end(), from) == peers().end()) return;
  {
    std::lock_guard lock(incoming_mu_);
    incoming_peers_.insert(from);
  }
  incoming_cv_.notify_all();
  while (true) {
    uint8_t len_bytes[4];
    if (!ReadAll(fd, len_bytes, 4)) break;
    uint32_t len = (uint32_t{len_bytes[0]} << 24) | (uint32_t{len_bytes[1]} << 16) |
                   (uint32_t{len_bytes[2]} << 8) | len_bytes[3];
    if (len > max_payload() + kFrameOverhead - 4) break;
    Bytes frame(4 + size_t{len});
    std::copy(len_bytes, len_bytes + 4, frame.begin());
    if (!ReadAll(fd, frame.data() + 4, len)) break;
    Deliver(from, std::move(frame));
  }
  MarkPeerClosed(from);
}

void TcpEndpoint::Close() {
  if (stopping_.exchange(true)) return;
  MarkClosed();
  // Half-close outgoing links so peers drain queued frames before EOF.
  for (auto& [peer, out] : outgoing_) {
    std::lock_guard lock(out->mu);
    if (out->fd >= 0) {
      ::shutdown(out->fd, SHUT_WR);
      ::close(out->fd);
      out->fd = -1;
    }
  }
  if (acceptor_.joinable()) acceptor_.join();
  {
    std::lock_guard lock(readers_mu_);
    for (int fd : incoming_fds_) ::shutdown(fd, SHUT_RDWR);
  }
  for (auto& t : readers_) t.join();
  for (int fd : incoming_fds_) ::close(fd);
  if (listen_fd_ >= 0) ::close(listen_fd_);
  listen_fd_ = -1;
}

}  // namespace authpsi::transport
