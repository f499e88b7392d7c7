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

#include "authpsi/gf128.h"

#include "authpsi/errors.h"

#if defined(__x86_64__)
#include <immintrin.h>
#include <wmmintrin.h>
#endif

namespace authpsi {

namespace {

struct U128 {
  uint64_t lo;
  uint64_t hi;
};

// Portable 64x64 -> 128 carry-less multiply, 4-bit windowed.
U128 ClmulPortable(uint64_t a, uint64_t b) {
  uint64_t table_lo[16];
  uint64_t table_hi[16];
  table_lo[0] = 0;
  table_hi[0] = 0;
  for (int i = 1; i < 16; ++i) {
    uint64_t lo = 0, hi = 0;
    for (int bit = 0; bit < 4; ++bit) {
      if ((i >> bit) & 1) {
        lo ^= a << bit;
        hi ^= bit == 0 ? 0 : a >> (64 - bit);
      }
    }
    table_lo[i] = lo;
    table_hi[i] = hi;
  }
  uint64_t lo = 0, hi = 0;
  for (int shift = 60; shift >= 0; shift -= 4) {
    hi = (hi << 4) | (lo >> 60);
    lo <<= 4;
    unsigned nib = (b >> shift) & 0xf;
    lo ^= table_lo[nib];
    hi ^= table_hi[nib];
  }
  return {lo, hi};
}

#if defined(__x86_64__)
__attribute__((target("pclmul,sse4.1"))) U128 ClmulHw(uint64_t a, uint64_t b) {
  __m128i va = _mm_set_epi64x(0, static_cast<long long>(a));
  __m128i vb = _mm_set_epi64x(0, static_cast<long long>(b));
  __m128i r = _mm_clmulepi64_si128(va, vb, 0x00);
  return {static_cast<uint64_t>(_mm_cvtsi128_si64(r)),
          static_cast<uint64_t>(_mm_extract_epi64(r, 1))};
}

bool HasPclmul() {
  static const bool has = __builtin_cpu_supports("pclmul");
  return has;
}
#endif

inline U128 Clmul(uint64_t a, uint64_t b) {
#if defined(__x86_64__)
  if (HasPclmul()) return ClmulHw(a, b);
#endif
  return ClmulPortable(a, b);
}

// x^128 = x^7 + x^2 + x + 1
constexpr uint64_t kReduction = 0x87;

Gf128 Reduce(uint64_t r0, uint64_t r1, uint64_t r2, uint64_t r3) {
  U128 u = Clmul(r3, kReduction);
  r1 ^= u.lo;
  r2 ^= u.hi;
  U128 w = Clmul(r2, kReduction);
  return Gf128(r0 ^ w.lo, r1 ^ w.hi);
}

}  // namespace

Gf128 Gf128::operator*(Gf128 o) const {
  U128 p0 = Clmul(lo_, o.lo_);
  U128 p1 = Clmul(hi_, o.hi_);
  U128 m0 = Clmul(lo_, o.hi_);
  U128 m1 = Clmul(hi_, o.lo_);
  uint64_t mid_lo = m0.lo ^ m1.lo;
  uint64_t mid_hi = m0.hi ^ m1.hi;
  return Reduce(p0.lo, p0.hi ^ mid_lo, p1.lo ^ mid_hi, p1.hi);
}

Block16 Gf128::ToBytes() const {
  Block16 out{};
  for (int i = 0; i < 8; ++i) {
    out[i] = static_cast<uint8_t>(lo_ >> (8 * i));
    out[8 + i] = static_cast<uint8_t>(hi_ >> (8 * i));
  }
  return out;
}

void Gf128::AppendTo(Bytes& out) const {
  auto b = ToBytes();
  out.insert(out.end(), b.begin(), b.end());
}

Gf128 Gf128::FromBytes(ByteView bytes) {
  if (bytes.size() != kBytes) {
    throw DomainError("field element must be 16 bytes");
  }
  uint64_t lo = 0, hi = 0;
  for (int i = 7; i >= 0; --i) {
    lo = (lo << 8) | bytes[i];
    hi = (hi << 8) | bytes[8 + i];
  }
  return Gf128(lo, hi);
}

Gf128 Add(Gf128 a, Gf128 b) { return a + b; }

Gf128 Mul(Gf128 a, Gf128 b) { return a * b; }

Gf128 Square(Gf128 a) { return a * a; }

Gf128 Pow(Gf128 a, uint64_t lo_exp, uint64_t hi_exp) {
  Gf128 result = Gf128::One();
  for (int k = 127; k >= 0; --k) {
    result = Square(result);
    bool bit = k < 64 ? (lo_exp >> k) & 1 : (hi_exp >> (k - 64)) & 1;
    if (bit) result = result * a;
  }
  return result;
}

Gf128 Inv(Gf128 a) {
  if (a.IsZero()) {
    throw DomainError("zero has no multiplicative inverse in GF(2^128)");
  }
  // a^(2^128 - 2) via an addition chain on a^(2^k - 1).
  Gf128 acc = a;  // a^(2^1 - 1)
  int have = 1;
  while (have < 64) {
    Gf128 t = acc;
    for (int i = 0; i < have; ++i) t = Square(t);
    acc = t * acc;
    have *= 2;
  }
  // acc = a^(2^64 - 1); extend to a^(2^127 - 1).
  Gf128 t = acc;
  for (int i = 0; i < 63; ++i) t = Square(t);
  // t = a^((2^64 - 1) * 2^63); multiply by a^(2^63 - 1).
  Gf128 low = a;
  for (int have2 = 1; have2 < 63; ++have2) low = Square(low) * a;
  acc = t * low;
  return Square(acc);
}

Gf128 InnerProduct(std::span<const Gf128> a, std::span<const Gf128> b) {
  if (a.size() != b.size()) {
    throw DomainError("inner product of vectors with different lengths");
  }
  Gf128 acc;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void XorValue::AppendTo(Bytes& out) const {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(bits_ >> (8 * i)));
}

XorValue XorValue::FromBytes(ByteView bytes) {
  if (bytes.size() != kBytes) {
    throw DomainError("XOR value must be 8 bytes");
  }
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
  return XorValue(v);
}

}  // namespace authpsi
