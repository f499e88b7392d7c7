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

#include "authpsi/crypto.h"

#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/rand.h>

#include <cstring>

#include "authpsi/errors.h"

namespace authpsi::crypto {

namespace {

const EVP_MD* Sha256Md() {
  static const EVP_MD* md = EVP_sha256();
  return md;
}

}  // namespace

struct Sha256::Impl {
  EVP_MD_CTX* ctx = nullptr;
};

Sha256::Sha256() : impl_(std::make_unique<Impl>()) {
  impl_->ctx = EVP_MD_CTX_new();
  if (impl_->ctx == nullptr ||
      EVP_DigestInit_ex(impl_->ctx, Sha256Md(), nullptr) != 1) {
    throw std::runtime_error("EVP sha256 init failed");
  }
}

Sha256::~Sha256() { EVP_MD_CTX_free(impl_->ctx); }

Sha256& Sha256::Update(ByteView data) {
  EVP_DigestUpdate(impl_->ctx, data.data(), data.size());
  return *this;
}

Digest Sha256::Final() {
  Digest out{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(impl_->ctx, out.data(), &len);
  EVP_DigestInit_ex(impl_->ctx, Sha256Md(), nullptr);
  return out;
}

Digest Hash(ByteView data) {
  Digest out{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), out.data(), &len, Sha256Md(), nullptr);
  return out;
}

Digest Hash(std::initializer_list<ByteView> parts) {
  thread_local Sha256 hasher;
  for (auto p : parts) hasher.Update(p);
  return hasher.Final();
}

Digest HmacSha256(ByteView key, ByteView data) {
  Digest out{};
  unsigned int len = 0;
  HMAC(Sha256Md(), key.data(), static_cast<int>(key.size()), data.data(),
       data.size(), out.data(), &len);
  return out;
}

uint64_t Prf64(ByteView key, ByteView data) {
  Digest d = HmacSha256(key, data);
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | d[i];
  return v;
}

void OsRandom(std::span<uint8_t> out) {
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw std::runtime_error("RAND_bytes failed");
  }
}

Prg::Prg() { OsRandom(seed_); }

Prg::Prg(const Block32& seed) : seed_(seed) {}

Prg Prg::Derive(ByteView label) const {
  static constexpr uint8_t kTag[] = {'d', 'e', 'r', 'i', 'v', 'e'};
  return Prg(Hash({kTag, seed_, label}));
}

Block32 Prg::SeedFromU64(uint64_t value) {
  uint8_t raw[8];
  for (int i = 0; i < 8; ++i) raw[i] = static_cast<uint8_t>(value >> (8 * i));
  return Hash(ByteView(raw, 8));
}

void Prg::Refill() {
  struct CipherCtx {
    EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
    ~CipherCtx() { EVP_CIPHER_CTX_free(ctx); }
  };
  thread_local CipherCtx cipher;
  // Counter block = seed[16..32) + blocks_, as a 128-bit big-endian integer.
  uint8_t iv[16];
  std::memcpy(iv, seed_.data() + 16, 16);
  uint64_t carry = blocks_;
  for (int i = 15; i >= 0 && carry != 0; --i) {
    uint64_t sum = uint64_t{iv[i]} + (carry & 0xff);
    iv[i] = static_cast<uint8_t>(sum);
    carry = (carry >> 8) + (sum >> 8);
  }
  if (EVP_EncryptInit_ex(cipher.ctx, EVP_aes_128_ctr(), nullptr, seed_.data(),
                         iv) != 1) {
    throw std::runtime_error("AES-CTR init failed");
  }
  static constexpr std::array<uint8_t, kBufferBytes> kZeros{};
  int len = 0;
  EVP_EncryptUpdate(cipher.ctx, buffer_.data(), &len, kZeros.data(),
                    static_cast<int>(kZeros.size()));
  blocks_ += kBufferBytes / 16;
  used_ = 0;
}

void Prg::Fill(std::span<uint8_t> out) {
  size_t pos = 0;
  while (pos < out.size()) {
    if (used_ == buffer_.size()) Refill();
    size_t take = std::min(out.size() - pos, buffer_.size() - used_);
    std::memcpy(out.data() + pos, buffer_.data() + used_, take);
    used_ += take;
    pos += take;
  }
}

uint64_t Prg::NextU64() {
  uint8_t raw[8];
  Fill(raw);
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | raw[i];
  return v;
}

uint64_t Prg::Uniform(uint64_t bound) {
  if (bound == 0) throw DomainError("Uniform bound must be positive");
  const uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  while (true) {
    uint64_t v = NextU64();
    if (v < limit) return v % bound;
  }
}

}  // namespace authpsi::crypto
