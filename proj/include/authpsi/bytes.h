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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace authpsi {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

using Block16 = std::array<uint8_t, 16>;
using Block32 = std::array<uint8_t, 32>;

// Session identifiers double as Merkle leaf salts.
using SessionId = Block16;

inline ByteView AsView(std::string_view s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

std::string ToHex(ByteView bytes);
Bytes FromHex(std::string_view hex);

template <size_t N>
std::array<uint8_t, N> FixedFromHex(std::string_view hex);

// Big-endian writer used by every wire format in the library.
class ByteWriter {
 public:
  ByteWriter() = default;

  void U8(uint8_t v) { out_.push_back(v); }
  void U16(uint16_t v);
  void U32(uint32_t v);
  void U64(uint64_t v);
  void Raw(ByteView bytes) { out_.insert(out_.end(), bytes.begin(), bytes.end()); }
  void LengthPrefixed(ByteView bytes);

  size_t size() const { return out_.size(); }
  Bytes Take() { return std::move(out_); }

 private:
  Bytes out_;
};

// Reader over a borrowed buffer; every accessor throws DomainError on
// truncation.
class ByteReader {
 public:
  explicit ByteReader(ByteView in) : in_(in) {}

  uint8_t U8();
  uint16_t U16();
  uint32_t U32();
  uint64_t U64();
  ByteView Raw(size_t n);
  Bytes LengthPrefixed();
  template <size_t N>
  std::array<uint8_t, N> Fixed() {
    std::array<uint8_t, N> out{};
    auto v = Raw(N);
    std::copy(v.begin(), v.end(), out.begin());
    return out;
  }

  size_t remaining() const { return in_.size() - pos_; }
  bool done() const { return pos_ == in_.size(); }
  // Throws if trailing bytes are left over.
  void ExpectEnd() const;

 private:
  ByteView in_;
  size_t pos_ = 0;
};

}  // namespace authpsi
