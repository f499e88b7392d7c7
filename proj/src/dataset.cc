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

#include "authpsi/dataset.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "authpsi/crypto.h"
#include "authpsi/errors.h"

namespace authpsi::dataset {
namespace {

constexpr std::string_view kMagic = "#authpsi-dataset";

uint64_t HeaderField(std::string_view header, std::string_view name) {
  std::string key = " " + std::string(name) + "=";
  auto pos = header.find(key);
  if (pos == std::string_view::npos) {
    throw DomainError("dataset header lacks '" + std::string(name) + "'");
  }
  pos += key.size();
  auto end = header.find(' ', pos);
  std::string value(header.substr(pos, end == std::string_view::npos ? end : end - pos));
  if (value.empty() || !std::all_of(value.begin(), value.end(), ::isdigit)) {
    throw DomainError("dataset header field '" + std::string(name) + "' is not a number");
  }
  return std::stoull(value);
}

}  // namespace

std::string Format(const std::vector<Bytes>& elements) {
  size_t min_len = 0, max_len = 0;
  if (!elements.empty()) {
    auto [lo, hi] = std::minmax_element(
        elements.begin(), elements.end(),
        [](const Bytes& a, const Bytes& b) { return a.size() < b.size(); });
    min_len = lo->size();
    max_len = hi->size();
  }
  std::ostringstream out;
  out << kMagic << " count=" << elements.size() << " min_len=" << min_len
      << " max_len=" << max_len << "\n";
  for (const auto& e : elements) out << ToHex(e) << "\n";
  return out.str();
}

std::vector<Bytes> Parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string header;
  if (!std::getline(in, header) || !header.starts_with(kMagic)) {
    throw DomainError("missing dataset header");
  }
  uint64_t count = HeaderField(header, "count");
  uint64_t min_len = HeaderField(header, "min_len");
  uint64_t max_len = HeaderField(header, "max_len");

  std::vector<Bytes> elements;
  std::set<Bytes> seen;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Bytes e = FromHex(line);
    if (e.size() < min_len || e.size() > max_len) {
      throw DomainError("element length outside the header's range");
    }
    if (!seen.insert(e).second) throw DomainError("repeated element " + line);
    elements.push_back(std::move(e));
  }
  if (elements.size() != count) {
    throw DomainError("header count " + std::to_string(count) + " but " +
                      std::to_string(elements.size()) + " elements");
  }
  return elements;
}

std::vector<Bytes> Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open dataset " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str());
}

void Save(const std::filesystem::path& path, const std::vector<Bytes>& elements) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot write dataset " + path.string());
  out << Format(elements);
  if (!out) throw DomainError("write failed for " + path.string());
}

Generated Generate(const GenSpec& spec) {
  if (spec.count == 0) throw DomainError("count must be at least 1");
  if (spec.parties == 0) throw DomainError("need at least one party");
  if (spec.overlap > spec.count) throw DomainError("overlap exceeds the set size");
  if (spec.elem_bytes == 0) throw DomainError("elements must be at least one byte");
  const uint64_t needed = spec.overlap + (spec.count - spec.overlap) * spec.parties;
  // Keep rejection sampling cheap: use at most half of the value space.
  if (spec.elem_bytes < 8 &&
      static_cast<double>(needed) > std::ldexp(1.0, static_cast<int>(8 * spec.elem_bytes) - 1)) {
    throw DomainError("element width too small for the requested distinct elements");
  }

  crypto::Prg rng(crypto::Prg::SeedFromU64(spec.seed));
  std::set<Bytes> used;
  auto fresh = [&] {
    Bytes e(spec.elem_bytes);
    do {
      rng.Fill(e);
    } while (used.contains(e));
    used.insert(e);
    return e;
  };

  Generated g;
  for (uint64_t i = 0; i < spec.overlap; ++i) g.core.push_back(fresh());
  g.sets.resize(spec.parties);
  for (auto& set : g.sets) {
    set = g.core;
    for (uint64_t i = spec.overlap; i < spec.count; ++i) set.push_back(fresh());
    for (size_t i = set.size(); i > 1; --i) std::swap(set[i - 1], set[rng.Uniform(i)]);
  }
  return g;
}

}  // namespace authpsi::dataset
