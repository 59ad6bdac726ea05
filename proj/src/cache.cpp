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

#include "slicekit/cache.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "slicekit/error.hpp"

namespace slicekit {
namespace fs = std::filesystem;

namespace {

std::string join(std::span<const std::string> items, char sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

Example restrict_to(const Example& row, std::span<const std::string> columns) {
  Example out = Json::object();
  for (const auto& c : columns) out[c] = row.at(c);
  return out;
}

}  // namespace

std::vector<std::string> sorted_unique(std::span<const std::string> columns) {
  std::vector<std::string> out(columns.begin(), columns.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CacheStore::CacheStore(fs::path root) : root_(std::move(root)) {}

std::string CacheStore::key(const Identifier& op, std::span<const std::string> sorted_columns,
                            const Fingerprint& example) {
  Json k = {{"op", op.canonical()},
            {"columns", std::vector<std::string>(sorted_columns.begin(), sorted_columns.end())},
            {"example", example.hex()}};
  return sha256(canonical_json(k)).hex();
}

fs::path CacheStore::path_for(const std::string& key) const {
  return root_ / key.substr(0, 2) / key.substr(2, 2) / key;
}

std::optional<std::string> CacheStore::read(const std::string& key) const {
  fs::path p = path_for(key);
  std::error_code ec;
  if (!fs::exists(p, ec)) {
    if (ec) throw CacheError(CacheError::Kind::kRead, "cache read failed for " + p.string() + ": " + ec.message());
    return std::nullopt;
  }
  std::ifstream in(p, std::ios::binary);
  if (!in) throw CacheError(CacheError::Kind::kRead, "cache read failed for " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw CacheError(CacheError::Kind::kRead, "cache read failed for " + p.string());
  return ss.str();
}

void CacheStore::write(const std::string& key, std::string_view bytes, std::string_view meta) const {
  if (auto existing = read(key)) {
    if (*existing != bytes) {
      throw CacheError(CacheError::Kind::kWrite,
                       "cache entry " + key + " already holds different bytes");
    }
    return;
  }
  fs::path p = path_for(key);
  try {
    fs::path meta_path = p;
    meta_path += ".meta";
    write_file_atomic(meta_path, meta);
    write_file_atomic(p, bytes);
  } catch (const std::exception& e) {
    throw CacheError(CacheError::Kind::kWrite, "cache write failed for " + p.string() + ": " + e.what());
  }
}

void CacheStore::clear() const {
  std::error_code ec;
  fs::remove_all(root_, ec);
  if (ec) throw CacheError(CacheError::Kind::kWrite, "cannot clear cache " + root_.string() + ": " + ec.message());
}

std::string cached_column_name(const Identifier& op, std::span<const std::string> columns) {
  return op.canonical() + ":" + join(sorted_unique(columns), ',');
}

Dataset run_cached_op(const CachedOperation& op, const Dataset& dataset,
                      std::span<const std::string> columns, const CacheStore& store,
                      CacheStats* stats, kernels::Exec exec) {
  auto cols = sorted_unique(columns);
  if (cols.empty()) throw SchemaError(op.identifier().canonical() + ": no input columns");
  for (const auto& c : cols) dataset.column(c);
  const std::string op_id = op.identifier().canonical();
  const std::string meta = "op=" + op_id + "\tcolumns=" + join(cols, ',') + "\n";

  const std::size_t n = dataset.size();
  std::vector<std::string> keys(n);
  std::vector<std::optional<std::string>> bytes(n);
  kernels::for_each_row(n, [&](std::size_t i) {
    keys[i] = CacheStore::key(op.identifier(), cols, fingerprint_example(dataset.row(i), cols));
    bytes[i] = store.read(keys[i]);
  }, exec);

  // One apply per distinct missing key, attributed to its first row.
  std::map<std::string, std::size_t> first_row;
  for (std::size_t i = 0; i < n; ++i) {
    if (!bytes[i]) first_row.emplace(keys[i], i);
  }
  std::vector<std::size_t> todo;
  for (const auto& [k, i] : first_row) todo.push_back(i);
  std::sort(todo.begin(), todo.end());
  std::vector<std::string> computed(todo.size());
  kernels::for_each_row(todo.size(), [&](std::size_t t) {
    std::size_t row = todo[t];
    Json value;
    try {
      value = op.apply(restrict_to(dataset.row(row), cols), cols);
    } catch (const CacheError&) {
      throw;
    } catch (const std::exception& e) {
      throw Error(op_id + " failed on row " + std::to_string(row) + ": " + e.what());
    }
    computed[t] = canonical_json(value);
    store.write(keys[row], computed[t], meta);
  }, exec);

  std::map<std::string, std::size_t> computed_at;
  for (std::size_t t = 0; t < todo.size(); ++t) computed_at.emplace(keys[todo[t]], t);

  std::vector<Json> values(n);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& b = bytes[i] ? *bytes[i] : computed[computed_at.at(keys[i])];
    if (bytes[i]) ++hits;
    values[i] = Json::parse(b);
  }
  if (stats) {
    stats->hits = hits;
    stats->misses = n - hits;
  }
  return append_column(dataset, cached_column_name(op.identifier(), cols), op.output_kind(),
                       std::move(values));
}

std::vector<Json> retrieve(const Dataset& dataset, std::span<const std::string> columns,
                           const Identifier& op, const CacheStore& store,
                           const std::function<Json(const Json&)>& proc) {
  auto cols = sorted_unique(columns);
  for (const auto& c : cols) dataset.column(c);
  std::vector<Json> out;
  out.reserve(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    auto key = CacheStore::key(op, cols, fingerprint_example(dataset.row(i), cols));
    auto bytes = store.read(key);
    if (!bytes) {
      std::string set;
      for (std::size_t k = 0; k < cols.size(); ++k) set += (k ? "," : "") + cols[k];
      throw CacheError(CacheError::Kind::kMissing, "no cached value for " + op.canonical() + " over [" +
                                                       set + "]; first missing row " + std::to_string(i));
    }
    Json value = Json::parse(*bytes);
    out.push_back(proc ? proc(value) : std::move(value));
  }
  return out;
}

}  // namespace slicekit
