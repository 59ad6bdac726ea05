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

#include "slicekit/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "slicekit/error.hpp"

namespace slicekit {
namespace fs = std::filesystem;

std::string_view to_string(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::kText: return "text";
    case ColumnKind::kLabel: return "label";
    case ColumnKind::kScalar: return "scalar";
    case ColumnKind::kTextSequence: return "sequence-of-text";
    case ColumnKind::kOpaque: return "opaque-json";
  }
  return "opaque-json";
}

ColumnKind parse_column_kind(std::string_view text) {
  if (text == "text") return ColumnKind::kText;
  if (text == "label") return ColumnKind::kLabel;
  if (text == "scalar") return ColumnKind::kScalar;
  if (text == "sequence-of-text") return ColumnKind::kTextSequence;
  if (text == "opaque-json") return ColumnKind::kOpaque;
  throw SchemaError("unknown column kind '" + std::string(text) + "'");
}

Dataset::Dataset(Identifier identifier, std::vector<Column> columns, std::vector<Example> rows)
    : identifier_(std::move(identifier)), columns_(std::move(columns)) {
  std::set<std::string> names;
  for (const auto& c : columns_) {
    if (!names.insert(c.name).second) throw SchemaError("duplicate column '" + c.name + "'");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (!r.is_object()) throw SchemaError("row " + std::to_string(i) + " is not an object");
    if (r.size() != names.size()) {
      throw SchemaError("row " + std::to_string(i) + " does not match the column schema");
    }
    for (const auto& name : names) {
      if (!r.contains(name)) {
        throw SchemaError("row " + std::to_string(i) + " lacks column '" + name + "'");
      }
    }
  }
  rows_ = std::make_shared<const std::vector<Example>>(std::move(rows));

  Sha256Stream hash;
  hash.update(canonical_json(schema_json()));
  hash.update("\n");
  for (const auto& r : *rows_) {
    hash.update(canonical_json(r));
    hash.update("\n");
  }
  fingerprint_ = hash.finish();
}

bool Dataset::has_column(std::string_view name) const {
  return std::any_of(columns_.begin(), columns_.end(),
                     [&](const Column& c) { return c.name == name; });
}

const Column& Dataset::column(std::string_view name) const {
  for (const auto& c : columns_) {
    if (c.name == name) return c;
  }
  throw SchemaError("unknown column '" + std::string(name) + "'");
}

std::vector<std::string> Dataset::column_names() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) out.push_back(c.name);
  return out;
}

std::vector<Json> Dataset::column_values(std::string_view name) const {
  column(name);
  std::vector<Json> out;
  out.reserve(size());
  for (const auto& r : *rows_) out.push_back(r.at(std::string(name)));
  return out;
}

Dataset Dataset::with_identifier(Identifier identifier) const {
  Dataset copy = *this;
  copy.identifier_ = std::move(identifier);
  return copy;
}

Json Dataset::schema_json() const {
  Json out = Json::array();
  for (const auto& c : columns_) {
    out.push_back({{"name", c.name}, {"kind", std::string(to_string(c.kind))}});
  }
  return out;
}

std::vector<Column> Dataset::schema_from_json(const Json& schema) {
  std::vector<Column> out;
  if (!schema.is_array()) throw SchemaError("schema must be an array");
  for (const auto& c : schema) {
    out.push_back({c.at("name").get<std::string>(),
                   parse_column_kind(c.at("kind").get<std::string>())});
  }
  return out;
}

Fingerprint fingerprint_example(const Example& example, std::span<const std::string> columns) {
  Json selected = Json::object();
  for (const auto& c : columns) {
    auto it = example.find(c);
    if (it == example.end()) throw SchemaError("unknown column '" + c + "'");
    selected[c] = *it;
  }
  return sha256(canonical_json(selected));
}

Dataset select_rows(const Dataset& dataset, std::span<const std::size_t> indices) {
  std::vector<Example> rows;
  rows.reserve(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= dataset.size()) {
      throw Error("select_rows: index " + std::to_string(indices[k]) + " out of bounds for " +
                  std::to_string(dataset.size()) + " rows");
    }
    if (k && indices[k] <= indices[k - 1]) {
      throw Error("select_rows: indices must be strictly increasing");
    }
    rows.push_back(dataset.row(indices[k]));
  }
  return Dataset(dataset.identifier(), dataset.columns(), std::move(rows));
}

Dataset append_column(const Dataset& dataset, std::string name, ColumnKind kind,
                      std::vector<Json> values) {
  if (dataset.has_column(name)) throw SchemaError("column '" + name + "' already exists");
  if (values.size() != dataset.size()) {
    throw SchemaError("append_column: " + std::to_string(values.size()) + " values for " +
                      std::to_string(dataset.size()) + " rows");
  }
  auto columns = dataset.columns();
  columns.push_back({name, kind});
  std::vector<Example> rows(dataset.rows().begin(), dataset.rows().end());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i][name] = std::move(values[i]);
  return Dataset(dataset.identifier(), std::move(columns), std::move(rows));
}

namespace {

ColumnKind infer_kind(const std::vector<const Json*>& values) {
  std::optional<ColumnKind> kind;
  for (const Json* v : values) {
    if (v->is_null()) continue;
    ColumnKind k;
    if (v->is_string()) {
      k = ColumnKind::kText;
    } else if (v->is_number() || v->is_boolean()) {
      k = ColumnKind::kScalar;
    } else if (v->is_array() &&
               std::all_of(v->begin(), v->end(), [](const Json& e) { return e.is_string(); })) {
      k = ColumnKind::kTextSequence;
    } else {
      k = ColumnKind::kOpaque;
    }
    if (kind && *kind != k) return ColumnKind::kOpaque;
    kind = k;
  }
  return kind.value_or(ColumnKind::kText);
}

Dataset assemble(Identifier identifier, std::vector<Json> objects,
                 const std::vector<std::string>& order, const ColumnKinds& kinds) {
  std::vector<Column> columns;
  for (const auto& name : order) {
    auto it = kinds.find(name);
    if (it != kinds.end()) {
      columns.push_back({name, it->second});
      continue;
    }
    std::vector<const Json*> values;
    for (const auto& o : objects) {
      auto f = o.find(name);
      if (f != o.end()) values.push_back(&*f);
    }
    columns.push_back({name, infer_kind(values)});
  }
  for (auto& o : objects) {
    for (const auto& name : order) {
      if (!o.contains(name)) o[name] = nullptr;
    }
  }
  return Dataset(std::move(identifier), std::move(columns), std::move(objects));
}

Identifier identifier_for(const fs::path& path) {
  return Identifier("dataset", {{"name", path.filename().string()}});
}

}  // namespace

Dataset parse_jsonl(std::string_view text, Identifier identifier, const ColumnKinds& kinds) {
  std::vector<Json> objects;
  std::vector<std::string> order;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    Json obj;
    try {
      obj = Json::parse(line);
    } catch (const Json::exception& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), line_no);
    }
    if (!obj.is_object()) throw ParseError("expected a JSON object", line_no);
    for (const auto& [key, value] : obj.items()) {
      if (seen.insert(key).second) order.push_back(key);
    }
    objects.push_back(std::move(obj));
  }
  if (objects.empty()) throw ParseError("empty dataset");
  return assemble(std::move(identifier), std::move(objects), order, kinds);
}

Dataset ingest_jsonl(const fs::path& path, const ColumnKinds& kinds) {
  return parse_jsonl(read_file(path), identifier_for(path), kinds);
}

Dataset parse_csv(std::string_view text, Identifier identifier) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line_no = 1;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    if (!(record.size() == 1 && record[0].empty())) records.push_back(std::move(record));
    record.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line_no;
        field += c;
      }
      continue;
    }
    if (c == '"') {
      if (field_started) throw ParseError("unexpected quote inside unquoted field", line_no);
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      continue;
    } else if (c == '\n') {
      end_record();
      ++line_no;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line_no);
  if (field_started || !record.empty()) end_record();
  if (records.size() < 2) throw ParseError("empty dataset");
  const auto& header = records.front();
  std::vector<Column> columns;
  for (const auto& h : header) columns.push_back({h, ColumnKind::kText});
  std::vector<Example> rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != header.size()) {
      throw ParseError("record has " + std::to_string(records[r].size()) + " fields, header has " +
                       std::to_string(header.size()));
    }
    Json row = Json::object();
    for (std::size_t c = 0; c < header.size(); ++c) row[header[c]] = records[r][c];
    rows.push_back(std::move(row));
  }
  return Dataset(std::move(identifier), std::move(columns), std::move(rows));
}

Dataset ingest_csv(const fs::path& path) { return parse_csv(read_file(path), identifier_for(path)); }

std::string rows_to_jsonl(const Dataset& dataset) {
  std::string out;
  for (const auto& r : dataset.rows()) {
    out += canonical_json(r);
    out += '\n';
  }
  return out;
}

void write_dataset(const Dataset& dataset, const fs::path& path) {
  Json header = {{"identifier", dataset.identifier().canonical()},
                 {"columns", dataset.schema_json()}};
  write_file_atomic(path, canonical_json(header) + "\n" + rows_to_jsonl(dataset));
}

Dataset read_dataset(const fs::path& path) {
  std::string text = read_file(path);
  std::size_t nl = text.find('\n');
  if (nl == std::string::npos) throw ParseError("dataset file lacks a header: " + path.string(), 1);
  Json header;
  try {
    header = Json::parse(std::string_view(text).substr(0, nl));
  } catch (const Json::exception& e) {
    throw ParseError(path.string() + ": " + e.what(), 1);
  }
  auto columns = Dataset::schema_from_json(header.at("columns"));
  std::vector<Example> rows;
  std::size_t pos = nl + 1;
  std::size_t line_no = 1;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++line_no;
    try {
      rows.push_back(Json::parse(std::string_view(text).substr(pos, end - pos)));
    } catch (const Json::exception& e) {
      throw ParseError(path.string() + ": " + e.what(), line_no);
    }
    pos = end + 1;
  }
  return Dataset(Identifier::parse(header.at("identifier").get<std::string>()), std::move(columns),
                 std::move(rows));
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  thread_local std::mt19937_64 rng{std::random_device{}()};
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(rng());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace slicekit
