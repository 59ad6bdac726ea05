// Copyright 2026 The slicekit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "json.hpp"

namespace slicekit {

using Json = nlohmann::json;

/// Canonical JSON text: UTF-8, object keys sorted by code point, no
/// insignificant whitespace, numbers in shortest round-trip form.
std::string canonical_json(const Json& value);

/// 256-bit SHA-256 digest.
class Fingerprint {
 public:
  Fingerprint() = default;
  explicit Fingerprint(const std::array<std::uint8_t, 32>& bytes) : bytes_(bytes) {}

  static Fingerprint from_hex(std::string_view hex);

  std::string hex() const;
  /// Low 64 bits: the last eight digest bytes read big-endian.
  std::uint64_t low64() const;
  const std::array<std::uint8_t, 32>& bytes() const { return bytes_; }

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;

 private:
  std::array<std::uint8_t, 32> bytes_{};
};

Fingerprint sha256(std::string_view bytes);

/// Incremental SHA-256.
class Sha256Stream {
 public:
  Sha256Stream();
  ~Sha256Stream();
  Sha256Stream(const Sha256Stream&) = delete;
  Sha256Stream& operator=(const Sha256Stream&) = delete;

  void update(std::string_view bytes);
  Fingerprint finish();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace slicekit
