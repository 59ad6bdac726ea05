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

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slicekit/canonical.hpp"
#include "slicekit/identifier.hpp"

namespace slicekit {

enum class ColumnKind { kText, kLabel, kScalar, kTextSequence, kOpaque };

std::string_view to_string(ColumnKind kind);
ColumnKind parse_column_kind(std::string_view text);

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::kText;

  friend bool operator==(const Column&, const Column&) = default;
};

/// One row: a JSON object whose keys are exactly the owning dataset's columns.
using Example = Json;

/// Immutable columnar table. Copies share row storage.
class Dataset {
 public:
  Dataset() : Dataset(Identifier("empty"), {}, {}) {}
  Dataset(Identifier identifier, std::vector<Column> columns, std::vector<Example> rows);

  const Identifier& identifier() const { return identifier_; }
  const std::vector<Column>& columns() const { return columns_; }
  std::size_t size() const { return rows_->size(); }
  bool empty() const { return rows_->empty(); }
  const Example& row(std::size_t i) const { return (*rows_)[i]; }
  std::span<const Example> rows() const { return *rows_; }
  const Fingerprint& fingerprint() const { return fingerprint_; }

  bool has_column(std::string_view name) const;
  const Column& column(std::string_view name) const;
  std::vector<std::string> column_names() const;
  std::vector<Json> column_values(std::string_view name) const;

  Dataset with_identifier(Identifier identifier) const;

  /// `[{"kind":..., "name":...}, ...]` in column order.
  Json schema_json() const;
  static std::vector<Column> schema_from_json(const Json& schema);

 private:
  Identifier identifier_;
  std::vector<Column> columns_;
  std::shared_ptr<const std::vector<Example>> rows_;
  Fingerprint fingerprint_;
};

/// SHA-256 over the canonical JSON of the selected (name, value) pairs.
Fingerprint fingerprint_example(const Example& example, std::span<const std::string> columns);

Dataset select_rows(const Dataset& dataset, std::span<const std::size_t> indices);
Dataset append_column(const Dataset& dataset, std::string name, ColumnKind kind,
                      std::vector<Json> values);

using ColumnKinds = std::map<std::string, ColumnKind>;

Dataset ingest_jsonl(const std::filesystem::path& path, const ColumnKinds& kinds = {});
Dataset parse_jsonl(std::string_view text, Identifier identifier, const ColumnKinds& kinds = {});
/// Header row plus RFC-4180 quoting; every column is text.
Dataset ingest_csv(const std::filesystem::path& path);
Dataset parse_csv(std::string_view text, Identifier identifier);

/// Canonical row lines, one per row, each terminated by '\n'.
std::string rows_to_jsonl(const Dataset& dataset);

/// Self-describing dataset file: a header line holding identifier and schema,
/// followed by the canonical row lines.
void write_dataset(const Dataset& dataset, const std::filesystem::path& path);
Dataset read_dataset(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace slicekit
