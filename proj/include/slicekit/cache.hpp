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

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slicekit/dataset.hpp"
#include "slicekit/identifier.hpp"
#include "slicekit/kernels.hpp"

namespace slicekit {

/// A pure per-example computation. `apply` sees the example restricted to the
/// requested columns, which are passed sorted by name; the same input bytes
/// must always produce the same output.
class CachedOperation {
 public:
  using ApplyFn = std::function<Json(const Example&, std::span<const std::string>)>;

  CachedOperation(Identifier identifier, ColumnKind output_kind, ApplyFn apply)
      : identifier_(std::move(identifier)), output_kind_(output_kind), apply_(std::move(apply)) {}

  const Identifier& identifier() const { return identifier_; }
  ColumnKind output_kind() const { return output_kind_; }
  Json apply(const Example& example, std::span<const std::string> columns) const {
    return apply_(example, columns);
  }

 private:
  Identifier identifier_;
  ColumnKind output_kind_;
  ApplyFn apply_;
};

/// Content-addressed store of canonical value bytes. Entry files live at
/// `<root>/<k0k1>/<k2k3>/<key>` with a `<key>.meta` sidecar naming the
/// operation and columns.
class CacheStore {
 public:
  explicit CacheStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  /// Hex SHA-256 of (operation canonical identifier, sorted columns, example fingerprint).
  static std::string key(const Identifier& op, std::span<const std::string> sorted_columns,
                         const Fingerprint& example);

  std::filesystem::path path_for(const std::string& key) const;

  std::optional<std::string> read(const std::string& key) const;
  /// Writes a new entry. An existing entry is left alone when its bytes match
  /// and rejected with a write error when they differ.
  void write(const std::string& key, std::string_view bytes, std::string_view meta) const;

  void clear() const;

 private:
  std::filesystem::path root_;
};

/// Row counts: rows served from disk and rows that had to be computed (rows
/// sharing a key are computed once but each counts).
struct CacheStats {
  std::size_t hits = 0;
  std::size_t misses = 0;
};

/// Name of the column `run_cached_op` appends: `<op canonical>:<c1>,<c2>`.
std::string cached_column_name(const Identifier& op, std::span<const std::string> columns);

std::vector<std::string> sorted_unique(std::span<const std::string> columns);

/// Appends the op's per-row output, reading from the cache when present and
/// computing (in parallel) and persisting otherwise.
Dataset run_cached_op(const CachedOperation& op, const Dataset& dataset,
                      std::span<const std::string> columns, const CacheStore& store,
                      CacheStats* stats = nullptr, kernels::Exec exec = kernels::Exec::kParallel);

/// Cached values for each row in order, optionally mapped through `proc`.
std::vector<Json> retrieve(const Dataset& dataset, std::span<const std::string> columns,
                           const Identifier& op, const CacheStore& store,
                           const std::function<Json(const Json&)>& proc = {});

}  // namespace slicekit
