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
#include <initializer_list>
#include <memory>

#include "authpsi/bytes.h"

namespace authpsi::crypto {

using Digest = Block32;

// Incremental SHA-256 (OpenSSL EVP underneath).
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  Sha256& Update(ByteView data);
  Sha256& Update(uint8_t byte) { return Update(ByteView(&byte, 1)); }
  Digest Final();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Digest Hash(ByteView data);
Digest Hash(std::initializer_list<ByteView> parts);

Digest HmacSha256(ByteView key, ByteView data);

// Keyed PRF truncated to 64 bits: first 8 bytes of HMAC-SHA256, little-endian.
uint64_t Prf64(ByteView key, ByteView data);

// Fills `out` from the operating system CSPRNG.
void OsRandom(std::span<uint8_t> out);

// Deterministic generator over a 32-byte seed: AES-128-CTR keystream with
// key = seed[0..16) and initial counter block = seed[16..32).
// Seeded from the OS when no seed is given.
class Prg {
 public:
  Prg();
  explicit Prg(const Block32& seed);
  // Derives an independent child stream; the parent is not advanced.
  Prg Derive(ByteView label) const;

  void Fill(std::span<uint8_t> out);
  uint64_t NextU64();
  // Uniform in [0, bound); rejection sampling, bound > 0.
  uint64_t Uniform(uint64_t bound);
  template <size_t N>
  std::array<uint8_t, N> NextBlock() {
    std::array<uint8_t, N> out{};
    Fill(out);
    return out;
  }

  const Block32& seed() const { return seed_; }

  static Block32 SeedFromU64(uint64_t value);

 private:
  void Refill();

  static constexpr size_t kBufferBytes = 256;

  Block32 seed_{};
  uint64_t blocks_ = 0;
  std::array<uint8_t, kBufferBytes> buffer_{};
  size_t used_ = kBufferBytes;
};

}  // namespace authpsi::crypto
