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

#include "authpsi/okvs.h"

#include <algorithm>
#include <numeric>

#include "authpsi/errors.h"

namespace authpsi::okvs {

namespace {

constexpr uint8_t kWireVersion = 0x01;
constexpr uint8_t kRowTag = 0x52;

void CheckParams(const OkvsParams& params) {
  if (params.omega < 2) throw DomainError("OKVS row weight must be >= 2");
  if (params.m_sparse < params.omega) {
    throw DomainError("OKVS sparse width smaller than row weight");
  }
  if (params.m_sparse < params.n) {
    throw DomainError("OKVS sparse width smaller than key count");
  }
}

void CheckDistinct(std::span<const Bytes> keys) {
  std::vector<const Bytes*> sorted;
  sorted.reserve(keys.size());
  for (const auto& k : keys) sorted.push_back(&k);
  std::sort(sorted.begin(), sorted.end(),
            [](const Bytes* a, const Bytes* b) { return *a < *b; });
  for (size_t i = 1; i < sorted.size(); ++i) {
    if (*sorted[i] == *sorted[i - 1]) {
      throw DomainError("OKVS keys must be pairwise distinct");
    }
  }
}

Gf128 RandomElem(crypto::Prg& rng) {
  uint64_t lo = rng.NextU64();
  return Gf128(lo, rng.NextU64());
}

// Dense Gauss-Jordan elimination over GF(2^128). Free unknowns are drawn
// from `rng`. Returns false when the system is inconsistent.
bool SolveDense(std::vector<std::vector<Gf128>>& m, std::vector<Gf128>& rhs,
                size_t unknowns, crypto::Prg& rng, std::vector<Gf128>& out) {
  const size_t rows = m.size();
  std::vector<size_t> pivot_col;
  size_t rank = 0;
  for (size_t col = 0; col < unknowns && rank < rows; ++col) {
    size_t pr = rank;
    while (pr < rows && m[pr][col].IsZero()) ++pr;
    if (pr == rows) continue;
    std::swap(m[pr], m[rank]);
    std::swap(rhs[pr], rhs[rank]);
    Gf128 inv = Inv(m[rank][col]);
    for (size_t c = col; c < unknowns; ++c) m[rank][c] *= inv;
    rhs[rank] *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][col].IsZero()) continue;
      Gf128 f = m[r][col];
      for (size_t c = col; c < unknowns; ++c) m[r][c] += f * m[rank][c];
      rhs[r] += f * rhs[rank];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (size_t r = rank; r < rows; ++r) {
    if (!rhs[r].IsZero()) return false;
  }
  out.assign(unknowns, Gf128());
  std::vector<bool> is_pivot(unknowns, false);
  for (size_t c : pivot_col) is_pivot[c] = true;
  for (size_t c = 0; c < unknowns; ++c) {
    if (!is_pivot[c]) out[c] = RandomElem(rng);
  }
  for (size_t r = 0; r < rank; ++r) {
    Gf128 v = rhs[r];
    for (size_t c = pivot_col[r] + 1; c < unknowns; ++c) {
      if (!is_pivot[c] && !m[r][c].IsZero()) v += m[r][c] * out[c];
    }
    out[pivot_col[r]] = v;
  }
  return true;
}

}  // namespace

OkvsParams OkvsParams::ForSize(uint32_t n, const Block16& row_seed,
                               uint32_t lambda) {
  OkvsParams p;
  p.n = n;
  uint64_t expanded = (uint64_t{n} * 123 + 99) / 100;
  p.m_sparse = static_cast<uint32_t>(std::max<uint64_t>(expanded, kDefaultOmega));
  p.m_dense = static_cast<uint16_t>(lambda / 2 + 10);
  p.omega = kDefaultOmega;
  p.row_seed = row_seed;
  return p;
}

RowSpec Row(ByteView key, const OkvsParams& params) {
  const uint8_t tag = kRowTag;
  crypto::Prg stream(crypto::Hash({ByteView(&tag, 1), params.row_seed, key}));
  RowSpec row;
  row.sparse_indices.reserve(params.omega);
  while (row.sparse_indices.size() < params.omega) {
    auto idx = static_cast<uint32_t>(stream.Uniform(params.m_sparse));
    if (std::find(row.sparse_indices.begin(), row.sparse_indices.end(), idx) ==
        row.sparse_indices.end()) {
      row.sparse_indices.push_back(idx);
    }
  }
  std::sort(row.sparse_indices.begin(), row.sparse_indices.end());
  row.dense_part.resize(params.m_dense);
  for (auto& c : row.dense_part) c = RandomElem(stream);
  return row;
}

Gf128 Decode(const OkvsParams& params, std::span<const Gf128> table,
             const RowSpec& row) {
  if (table.size() != params.size()) {
    throw DomainError("OKVS table size does not match its parameters");
  }
  Gf128 acc;
  for (uint32_t idx : row.sparse_indices) acc += table[idx];
  for (size_t j = 0; j < row.dense_part.size(); ++j) {
    acc += row.dense_part[j] * table[params.m_sparse + j];
  }
  return acc;
}

Gf128 Decode(const OkvsParams& params, std::span<const Gf128> table,
             ByteView key) {
  return Decode(params, table, Row(key, params));
}

std::optional<OkvsTable> Encode(std::span<const Bytes> keys,
                                std::span<const Gf128> values,
                                const OkvsParams& params, crypto::Prg& rng) {
  CheckParams(params);
  if (keys.size() != values.size()) {
    throw DomainError("OKVS key and value counts differ");
  }
  if (keys.size() != params.n) {
    throw DomainError("OKVS parameters were sized for a different key count");
  }
  CheckDistinct(keys);

  const size_t n = keys.size();
  const uint32_t ms = params.m_sparse;
  std::vector<RowSpec> rows;
  rows.reserve(n);
  for (const auto& k : keys) rows.push_back(Row(k, params));

  // Column -> incident rows (CSR).
  std::vector<uint32_t> degree(ms, 0);
  for (const auto& r : rows)
    for (uint32_t c : r.sparse_indices) ++degree[c];
  std::vector<uint32_t> offset(ms + 1, 0);
  for (uint32_t c = 0; c < ms; ++c) offset[c + 1] = offset[c] + degree[c];
  std::vector<uint32_t> incident(offset[ms]);
  {
    std::vector<uint32_t> fill(offset.begin(), offset.end() - 1);
    for (uint32_t r = 0; r < n; ++r)
      for (uint32_t c : rows[r].sparse_indices) incident[fill[c]++] = r;
  }

  // Triangulate: peel degree-1 columns. When peeling stalls, the rows of a
  // minimum-degree column except one are moved to the gap set, which is
  // later solved over the dense columns.
  enum : uint8_t { kActive, kPeeled, kGap };
  std::vector<uint8_t> state(n, kActive);
  std::vector<std::pair<uint32_t, uint32_t>> order;  // (row, pivot column)
  order.reserve(n);
  std::vector<uint32_t> gap;
  std::vector<uint32_t> queue;
  auto detach = [&](uint32_t row) {
    for (uint32_t c : rows[row].sparse_indices) {
      if (--degree[c] == 1) queue.push_back(c);
    }
  };
  for (uint32_t c = 0; c < ms; ++c)
    if (degree[c] == 1) queue.push_back(c);
  size_t remaining = n;
  while (remaining > 0) {
    while (!queue.empty()) {
      uint32_t c = queue.back();
      queue.pop_back();
      if (degree[c] != 1) continue;
      uint32_t row = UINT32_MAX;
      for (uint32_t k = offset[c]; k < offset[c + 1]; ++k) {
        if (state[incident[k]] == kActive) {
          row = incident[k];
          break;
        }
      }
      state[row] = kPeeled;
      order.emplace_back(row, c);
      --remaining;
      detach(row);
    }
    if (remaining == 0) break;
    uint32_t best = UINT32_MAX;
    for (uint32_t c = 0; c < ms; ++c) {
      if (degree[c] >= 2 && (best == UINT32_MAX || degree[c] < degree[best])) {
        best = c;
        if (degree[c] == 2) break;
      }
    }
    bool kept = false;
    for (uint32_t k = offset[best]; k < offset[best + 1]; ++k) {
      uint32_t row = incident[k];
      if (state[row] != kActive) continue;
      if (!kept) {
        kept = true;
        continue;
      }
      state[row] = kGap;
      gap.push_back(row);
      --remaining;
      detach(row);
    }
    if (gap.size() > params.m_dense) return std::nullopt;
  }

  std::vector<Gf128> p(params.size());
  std::vector<bool> is_pivot(ms, false);
  for (const auto& [row, col] : order) is_pivot[col] = true;
  for (uint32_t c = 0; c < ms; ++c) {
    if (!is_pivot[c]) p[c] = RandomElem(rng);
  }

  const size_t md = params.m_dense;
  if (gap.empty()) {
    for (size_t j = 0; j < md; ++j) p[ms + j] = RandomElem(rng);
  } else {
    // Each pivot value is affine in the dense unknowns D:
    // P[c] = form[c][0] + <form[c][1..], D>. Built in back-substitution order.
    const size_t width = md + 1;
    std::vector<Gf128> form(size_t{ms} * width);
    for (uint32_t c = 0; c < ms; ++c) {
      if (!is_pivot[c]) form[size_t{c} * width] = p[c];
    }
    auto accumulate = [&](const RowSpec& row, uint32_t skip, Gf128* out) {
      for (uint32_t c : row.sparse_indices) {
        if (c == skip) continue;
        const Gf128* f = &form[size_t{c} * width];
        for (size_t j = 0; j < width; ++j) out[j] += f[j];
      }
      for (size_t j = 0; j < md; ++j) out[1 + j] += row.dense_part[j];
    };
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto [r, pivot] = *it;
      Gf128* f = &form[size_t{pivot} * width];
      f[0] = values[r];
      accumulate(rows[r], pivot, f);
    }
    std::vector<std::vector<Gf128>> m(gap.size(), std::vector<Gf128>(md));
    std::vector<Gf128> rhs(gap.size());
    for (size_t g = 0; g < gap.size(); ++g) {
      std::vector<Gf128> acc(width);
      accumulate(rows[gap[g]], UINT32_MAX, acc.data());
      std::copy(acc.begin() + 1, acc.end(), m[g].begin());
      rhs[g] = values[gap[g]] + acc[0];
    }
    std::vector<Gf128> dense;
    if (!SolveDense(m, rhs, md, rng, dense)) return std::nullopt;
    std::copy(dense.begin(), dense.end(), p.begin() + ms);
  }

  // Back-substitute peeled rows, last peeled first.
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto [r, pivot] = *it;
    const RowSpec& row = rows[r];
    p[pivot] = Gf128();
    p[pivot] = values[r] + Decode(params, p, row);
  }

  return OkvsTable{params, std::move(p)};
}

Block16 RetrySeed(const Block16& base_seed, uint32_t attempt) {
  if (attempt <= 1) return base_seed;
  static constexpr char kLabel[] = "okvs-retry";
  uint8_t ctr[4] = {static_cast<uint8_t>(attempt >> 24),
                    static_cast<uint8_t>(attempt >> 16),
                    static_cast<uint8_t>(attempt >> 8),
                    static_cast<uint8_t>(attempt)};
  auto d = crypto::Hash(
      {AsView(std::string_view(kLabel, sizeof(kLabel) - 1)), base_seed, ctr});
  Block16 out{};
  std::copy_n(d.begin(), 16, out.begin());
  return out;
}

std::optional<RetryResult> EncodeWithRetry(std::span<const Bytes> keys,
                                           std::span<const Gf128> values,
                                           const OkvsParams& base_params,
                                           uint32_t max_attempts,
                                           crypto::Prg& rng) {
  if (max_attempts == 0) {
    throw DomainError("EncodeWithRetry needs at least one attempt");
  }
  for (uint32_t attempt = 1; attempt <= max_attempts; ++attempt) {
    OkvsParams params = base_params;
    params.row_seed = RetrySeed(base_params.row_seed, attempt);
    if (auto table = Encode(keys, values, params, rng)) {
      return RetryResult{std::move(*table), attempt};
    }
  }
  return std::nullopt;
}

void WriteTable(ByteWriter& w, const OkvsTable& table) {
  const auto& p = table.params;
  if (table.values.size() != p.size()) {
    throw DomainError("OKVS table size does not match its parameters");
  }
  w.U8(kWireVersion);
  w.U32(p.n);
  w.U32(p.m_sparse);
  w.U16(p.m_dense);
  w.U8(p.omega);
  w.Raw(p.row_seed);
  for (const auto& v : table.values) w.Raw(v.ToBytes());
}

OkvsTable ReadTable(ByteReader& r) {
  if (r.U8() != kWireVersion) throw DomainError("unknown OKVS table version");
  OkvsTable t;
  t.params.n = r.U32();
  t.params.m_sparse = r.U32();
  t.params.m_dense = r.U16();
  t.params.omega = r.U8();
  t.params.row_seed = r.Fixed<16>();
  CheckParams(t.params);
  if (r.remaining() / Gf128::kBytes < t.params.size()) {
    throw DomainError("truncated OKVS table");
  }
  t.values.resize(t.params.size());
  for (auto& v : t.values) v = Gf128::FromBytes(r.Raw(Gf128::kBytes));
  return t;
}

Bytes SerializeTable(const OkvsTable& table) {
  ByteWriter w;
  WriteTable(w, table);
  return w.Take();
}

OkvsTable ParseTable(ByteView bytes) {
  ByteReader r(bytes);
  OkvsTable t = ReadTable(r);
  r.ExpectEnd();
  return t;
}

}  // namespace authpsi::okvs
