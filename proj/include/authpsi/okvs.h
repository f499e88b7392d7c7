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
#include <optional>
#include <span>
#include <vector>

#include "authpsi/bytes.h"
#include "authpsi/crypto.h"
#include "authpsi/gf128.h"

// Binary linear OKVS: each key maps to a row with `omega` ones among the
// first `m_sparse` columns followed by `m_dense` random field coefficients.
// Decoding is the inner product of that row with the table.
namespace authpsi::okvs {

inline constexpr uint8_t kDefaultOmega = 3;
inline constexpr uint32_t kDefaultLambda = 40;

struct OkvsParams {
  uint32_t n = 0;
  uint32_t m_sparse = 0;
  uint16_t m_dense = 0;
  uint8_t omega = kDefaultOmega;
  Block16 row_seed{};

  size_t size() const { return size_t{m_sparse} + m_dense; }

  // m_sparse = max(ceil(1.23 n), omega), m_dense = lambda / 2 + 10.
  static OkvsParams ForSize(uint32_t n, const Block16& row_seed,
                            uint32_t lambda = kDefaultLambda);

  bool operator==(const OkvsParams&) const = default;
};

struct RowSpec {
  std::vector<uint32_t> sparse_indices;  // strictly increasing
  std::vector<Gf128> dense_part;

  bool operator==(const RowSpec&) const = default;
};

struct OkvsTable {
  OkvsParams params;
  std::vector<Gf128> values;
};

RowSpec Row(ByteView key, const OkvsParams& params);

// Returns std::nullopt when the system cannot be solved (the encoder's
// failure indicator). Throws DomainError on duplicate keys or malformed
// parameters. `rng` fills unconstrained positions.
std::optional<OkvsTable> Encode(std::span<const Bytes> keys,
                                std::span<const Gf128> values,
                                const OkvsParams& params, crypto::Prg& rng);

Gf128 Decode(const OkvsParams& params, std::span<const Gf128> table,
             ByteView key);
inline Gf128 Decode(const OkvsTable& table, ByteView key) {
  return Decode(table.params, table.values, key);
}
Gf128 Decode(const OkvsParams& params, std::span<const Gf128> table,
             const RowSpec& row);

struct RetryResult {
  OkvsTable table;
  uint32_t attempts = 0;
};

// Attempt 1 uses base_params.row_seed; attempt k > 1 uses
// SHA-256("okvs-retry" || row_seed || k)[0..16).
Block16 RetrySeed(const Block16& base_seed, uint32_t attempt);

std::optional<RetryResult> EncodeWithRetry(std::span<const Bytes> keys,
                                           std::span<const Gf128> values,
                                           const OkvsParams& base_params,
                                           uint32_t max_attempts,
                                           crypto::Prg& rng);

// version || n (4B BE) || m_sparse (4B BE) || m_dense (2B BE) || omega ||
// row_seed (16B) || m x 16-byte field elements
Bytes SerializeTable(const OkvsTable& table);
OkvsTable ParseTable(ByteView bytes);
void WriteTable(ByteWriter& w, const OkvsTable& table);
OkvsTable ReadTable(ByteReader& r);

}  // namespace authpsi::okvs
