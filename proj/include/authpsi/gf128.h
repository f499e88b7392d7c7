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
#include <functional>

#include "authpsi/bytes.h"

namespace authpsi {

// Element of GF(2^128) = GF(2)[x] / (x^128 + x^7 + x^2 + x + 1).
// Bit k of the 128-bit value (lo holds bits 0..63) is the coefficient of x^k.
class Gf128 {
 public:
  static constexpr size_t kBytes = 16;

  constexpr Gf128() = default;
  constexpr Gf128(uint64_t lo, uint64_t hi) : lo_(lo), hi_(hi) {}
  static constexpr Gf128 FromU64(uint64_t v) { return Gf128(v, 0); }
  static constexpr Gf128 Zero() { return Gf128(); }
  static constexpr Gf128 One() { return Gf128(1, 0); }

  constexpr uint64_t lo() const { return lo_; }
  constexpr uint64_t hi() const { return hi_; }
  constexpr bool IsZero() const { return lo_ == 0 && hi_ == 0; }
  constexpr bool Bit(int k) const {
    return ((k < 64 ? lo_ >> k : hi_ >> (k - 64)) & 1) != 0;
  }

  constexpr Gf128 operator+(Gf128 o) const { return {lo_ ^ o.lo_, hi_ ^ o.hi_}; }
  constexpr Gf128 operator^(Gf128 o) const { return *this + o; }
  constexpr Gf128& operator+=(Gf128 o) { return *this = *this + o; }
  constexpr Gf128& operator^=(Gf128 o) { return *this = *this + o; }
  Gf128 operator*(Gf128 o) const;
  Gf128& operator*=(Gf128 o) { return *this = *this * o; }

  constexpr bool operator==(const Gf128&) const = default;

  // 16 bytes, little-endian: byte 0 bit 0 is the constant term.
  Block16 ToBytes() const;
  void AppendTo(Bytes& out) const;
  static Gf128 FromBytes(ByteView bytes);

 private:
  uint64_t lo_ = 0;
  uint64_t hi_ = 0;
};

Gf128 Add(Gf128 a, Gf128 b);
Gf128 Mul(Gf128 a, Gf128 b);
Gf128 Square(Gf128 a);
Gf128 Pow(Gf128 a, uint64_t lo_exp, uint64_t hi_exp);
// Throws DomainError on zero.
Gf128 Inv(Gf128 a);

// <a, b> over GF(2^128).
Gf128 InnerProduct(std::span<const Gf128> a, std::span<const Gf128> b);

// 64-bit XOR-group value: zero-sharing shares, PRF and OPPRF outputs.
class XorValue {
 public:
  static constexpr size_t kBytes = 8;

  constexpr XorValue() = default;
  constexpr explicit XorValue(uint64_t bits) : bits_(bits) {}

  constexpr uint64_t bits() const { return bits_; }
  constexpr bool IsZero() const { return bits_ == 0; }

  constexpr XorValue operator^(XorValue o) const { return XorValue(bits_ ^ o.bits_); }
  constexpr XorValue& operator^=(XorValue o) { return *this = *this ^ o; }
  constexpr bool operator==(const XorValue&) const = default;

  // Zero-padded embedding into the field (high 64 bits zero).
  constexpr Gf128 Embed() const { return Gf128::FromU64(bits_); }
  // Truncation back to the low 64 bits.
  static constexpr XorValue Truncate(Gf128 v) { return XorValue(v.lo()); }

  // 8 bytes little-endian.
  void AppendTo(Bytes& out) const;
  static XorValue FromBytes(ByteView bytes);

 private:
  uint64_t bits_ = 0;
};

}  // namespace authpsi

template <>
struct std::hash<authpsi::XorValue> {
  size_t operator()(const authpsi::XorValue& v) const noexcept {
    return std::hash<uint64_t>{}(v.bits());
  }
};
