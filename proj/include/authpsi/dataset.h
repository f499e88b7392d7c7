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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "authpsi/bytes.h"

// Element-set files: a header line followed by one hex element per line.
//   #authpsi-dataset count=N min_len=A max_len=B
namespace authpsi::dataset {

std::string Format(const std::vector<Bytes>& elements);
// Throws DomainError for a missing or inconsistent header, bad hex, or
// repeated elements.
std::vector<Bytes> Parse(std::string_view text);

std::vector<Bytes> Load(const std::filesystem::path& path);
void Save(const std::filesystem::path& path, const std::vector<Bytes>& elements);

struct GenSpec {
  uint64_t count = 0;      // elements per party
  size_t elem_bytes = 16;
  uint64_t seed = 0;
  uint16_t parties = 2;
  uint64_t overlap = 0;    // elements common to every party
};

struct Generated {
  std::vector<std::vector<Bytes>> sets;  // one per party
  std::vector<Bytes> core;               // the planted common elements
};

// Deterministic in `spec`. Elements outside the core are distinct across
// all parties, so the n-way intersection is exactly the core. Throws
// DomainError for count = 0, overlap > count, or element widths too
// narrow for the requested number of distinct values.
Generated Generate(const GenSpec& spec);

}  // namespace authpsi::dataset
