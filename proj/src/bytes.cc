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

#include "authpsi/bytes.h"

#include <algorithm>

#include "authpsi/errors.h"

namespace authpsi {

namespace {

int HexNibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string ToHex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

Bytes FromHex(std::string_view hex) {
  if (hex.size() % 2 != 0) {
    throw DomainError("hex string has odd length");
  }
  Bytes out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i) {
    int hi = HexNibble(hex[2 * i]);
    int lo = HexNibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw DomainError("invalid hex digit");
    }
    out[i] = static_cast<uint8_t>((hi << 4) | lo);
  }
  return out;
}

template <size_t N>
std::array<uint8_t, N> FixedFromHex(std::string_view hex) {
  Bytes raw = FromHex(hex);
  if (raw.size() != N) {
    throw DomainError("hex value has wrong length: expected " +
                      std::to_string(N) + " bytes");
  }
  std::array<uint8_t, N> out{};
  std::copy(raw.begin(), raw.end(), out.begin());
  return out;
}

template std::array<uint8_t, 16> FixedFromHex<16>(std::string_view);
template std::array<uint8_t, 32> FixedFromHex<32>(std::string_view);

void ByteWriter::U16(uint16_t v) {
  out_.push_back(static_cast<uint8_t>(v >> 8));
  out_.push_back(static_cast<uint8_t>(v));
}

void ByteWriter::U32(uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out_.push_back(static_cast<uint8_t>(v >> s));
}

void ByteWriter::U64(uint64_t v) {
  for (int s = 56; s >= 0; s -= 8) out_.push_back(static_cast<uint8_t>(v >> s));
}

void ByteWriter::LengthPrefixed(ByteView bytes) {
  if (bytes.size() > UINT32_MAX) {
    throw DomainError("length-prefixed field exceeds 2^32 - 1 bytes");
  }
  U32(static_cast<uint32_t>(bytes.size()));
  Raw(bytes);
}

ByteView ByteReader::Raw(size_t n) {
  if (remaining() < n) {
    throw DomainError("truncated input: need " + std::to_string(n) +
                      " bytes, have " + std::to_string(remaining()));
  }
  auto v = in_.subspan(pos_, n);
  pos_ += n;
  return v;
}

uint8_t ByteReader::U8() { return Raw(1)[0]; }

uint16_t ByteReader::U16() {
  auto v = Raw(2);
  return static_cast<uint16_t>((v[0] << 8) | v[1]);
}

uint32_t ByteReader::U32() {
  auto v = Raw(4);
  return (uint32_t{v[0]} << 24) | (uint32_t{v[1]} << 16) |
         (uint32_t{v[2]} << 8) | uint32_t{v[3]};
}

uint64_t ByteReader::U64() {
  uint64_t hi = U32();
  return (hi << 32) | U32();
}

Bytes ByteReader::LengthPrefixed() {
  uint32_t n = U32();
  auto v = Raw(n);
  return Bytes(v.begin(), v.end());
}

void ByteReader::ExpectEnd() const {
  if (!done()) {
    throw DomainError("unexpected trailing bytes: " +
                      std::to_string(remaining()));
  }
}

}  // namespace authpsi
