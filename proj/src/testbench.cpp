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

#include "slicekit/testbench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <set>

#include "slicekit/error.hpp"
#include "slicekit/text.hpp"

namespace slicekit {
namespace fs = std::filesystem;

Version Version::parse(std::string_view text) {
  Version v;
  std::uint64_t parts[3] = {0, 0, 0};
  std::size_t idx = 0;
  bool digit = false;
  for (char c : text) {
    if (c == '.') {
      if (!digit || ++idx > 2) throw ParseError("bad version '" + std::string(text) + "'");
      digit = false;
    } else if (c >= '0' && c <= '9') {
      parts[idx] = parts[idx] * 10 + static_cast<std::uint64_t>(c - '0');
      digit = true;
    } else {
      throw ParseError("bad version '" + std::string(text) + "'");
    }
  }
  if (idx != 2 || !digit) throw ParseError("bad version '" + std::string(text) + "'");
  v.major = parts[0];
  v.minor = parts[1];
  v.patch = parts[2];
  return v;
}

std::string Version::str() const {
  return std::to_string(major) + "." + std::to_string(minor) + "." + std::to_string(patch);
}

std::string_view to_string(TaskKind kind) {
  return kind == TaskKind::kClassification ? "classification" : "sequence-generation";
}

TaskKind parse_task_kind(std::string_view text) {
  if (text == "classification") return TaskKind::kClassification;
  if (text == "sequence-generation") return TaskKind::kSequenceGeneration;
  throw SchemaError("unknown task kind '" + std::string(text) + "'");
}

Json TaskSpec::to_json() const {
  return {{"task", task}, {"kind", std::string(to_string(kind))}, {"inputs", inputs}, {"target", target},
          {"classes", classes}};
}

TaskSpec TaskSpec::from_json(const Json& json) {
  TaskSpec t;
  t.task = json.at("task").get<std::string>();
  t.kind = parse_task_kind(json.at("kind").get<std::string>());
  t.inputs = json.at("inputs").get<std::vector<std::string>>();
  t.target = json.at("target").get<std::string>();
  t.classes = json.value("classes", std::vector<std::string>{});
  return t;
}

std::string utc_now() {
  std::time_t t;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const Slice* TestBench::find(std::string_view name) const {
  for (const auto& s : slices) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

TestBench make_testbench(Identifier identifier, TaskSpec task, Version version) {
  return TestBench{std::move(identifier), version, std::move(task), {}, utc_now()};
}

TestBench add_slices(const TestBench& bench, std::span<const Slice> slices) {
  std::set<std::string> names;
  for (const auto& s : bench.slices) names.insert(s.name);
  TestBench out = bench;
  for (const auto& s : slices) {
    if (s.name.empty()) throw SchemaError("slice without a display name");
    if (!names.insert(s.name).second) throw SchemaError("duplicate slice name '" + s.name + "'");
    out.slices.push_back(s);
  }
  return out;
}

TestBench bump_major(const TestBench& bench) {
  TestBench out = bench;
  out.version = {bench.version.major + 1, 0, 0};
  return out;
}

TestBench bump_minor(const TestBench& bench) {
  TestBench out = bench;
  out.version = {bench.version.major, bench.version.minor + 1, 0};
  return out;
}

TestBench bump_patch(const TestBench& bench) {
  TestBench out = bench;
  out.version.patch += 1;
  return out;
}

namespace {

std::size_t longest_common_substring(const std::u32string& a, const std::u32string& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  std::size_t best = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
      best = std::max(best, cur[j]);
    }
    std::swap(prev, cur);
  }
  return best;
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
              c == '-' || c == '_';
    out += ok ? c : '_';
  }
  if (out.empty() || out.front() == '.') out.insert(out.begin(), '_');
  return out;
}

std::vector<std::string> slice_files(const TestBench& bench) {
  std::vector<std::string> files;
  std::set<std::string> used;
  for (const auto& s : bench.slices) {
    std::string base = sanitize(s.name);
    std::string file = base + ".jsonl";
    for (int k = 2; used.count(file); ++k) file = base + "-" + std::to_string(k) + ".jsonl";
    used.insert(file);
    files.push_back("slices/" + file);
  }
  return files;
}

}  // namespace

std::vector<SearchHit> search(const TestBench& bench, std::string_view query, std::size_t k) {
  if (query.empty()) throw Error("search: empty query");
  if (k == 0) throw Error("search: k must be at least 1");
  auto q = to_utf32(casefold(query));
  std::vector<SearchHit> hits;
  for (std::size_t i = 0; i < bench.slices.size(); ++i) {
    auto name = to_utf32(casefold(bench.slices[i].name));
    double score = static_cast<double>(longest_common_substring(q, name)) / static_cast<double>(q.size());
    hits.push_back({i, bench.slices[i].name, score});
  }
  std::stable_sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) { return a.score > b.score; });
  if (hits.size() > k) hits.resize(k);
  return hits;
}

Json manifest_json(const TestBench& bench, bool with_timestamp) {
  auto files = slice_files(bench);
  Json slices = Json::array();
  for (std::size_t i = 0; i < bench.slices.size(); ++i) {
    const auto& s = bench.slices[i];
    slices.push_back({{"name", s.name},
                      {"category", std::string(to_string(s.category))},
                      {"file", files[i]},
                      {"sha256", sha256(rows_to_jsonl(s.data)).hex()},
                      {"rows", s.data.size()},
                      {"dataset", s.data.identifier().canonical()},
                      {"schema", s.data.schema_json()},
                      {"fingerprint", s.data.fingerprint().hex()},
                      {"provenance", s.lineage.to_json()}});
  }
  Json m = {{"identifier", bench.identifier.canonical()},
            {"version", bench.version.str()},
            {"task", bench.task.to_json()},
            {"slices", slices}};
  if (with_timestamp) m["created_at"] = bench.created_at;
  return m;
}

std::string canonical_bytes(const TestBench& bench) { return canonical_json(manifest_json(bench, false)); }

void save(const TestBench& bench, const fs::path& dir) {
  fs::create_directories(dir);
  fs::remove_all(dir / "slices");
  fs::create_directories(dir / "slices");
  Json manifest = manifest_json(bench, true);
  for (std::size_t i = 0; i < bench.slices.size(); ++i) {
    write_file_atomic(dir / manifest["slices"][i]["file"].get<std::string>(), rows_to_jsonl(bench.slices[i].data));
  }
  write_file_atomic(dir / "manifest.json", canonical_json(manifest) + "\n");
}

TestBench load(const fs::path& dir) {
  fs::path manifest_path = dir / "manifest.json";
  Json m;
  try {
    m = Json::parse(read_file(manifest_path));
  } catch (const Json::exception& e) {
    throw ParseError("corrupt bundle manifest " + manifest_path.string() + ": " + e.what());
  }
  TestBench bench;
  try {
    bench.identifier = Identifier::parse(m.at("identifier").get<std::string>());
    bench.version = Version::parse(m.at("version").get<std::string>());
    bench.task = TaskSpec::from_json(m.at("task"));
    bench.created_at = m.value("created_at", std::string{});
  } catch (const Json::exception& e) {
    throw ParseError("corrupt bundle manifest " + manifest_path.string() + ": " + e.what());
  }
  for (const auto& entry : m.at("slices")) {
    fs::path file = dir / entry.at("file").get<std::string>();
    std::string bytes = read_file(file);
    if (sha256(bytes).hex() != entry.at("sha256").get<std::string>()) {
      throw IntegrityError("checksum mismatch for " + file.string());
    }
    Slice s;
    s.name = entry.at("name").get<std::string>();
    s.category = parse_slice_category(entry.at("category").get<std::string>());
    s.lineage = Provenance::from_json(entry.at("provenance"));
    auto columns = Dataset::schema_from_json(entry.at("schema"));
    std::vector<Example> rows;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < bytes.size()) {
      std::size_t nl = bytes.find('\n', pos);
      if (nl == std::string::npos) nl = bytes.size();
      ++line_no;
      try {
        rows.push_back(Json::parse(std::string_view(bytes).substr(pos, nl - pos)));
      } catch (const Json::exception& e) {
        throw ParseError(file.string() + ": " + e.what(), line_no);
      }
      pos = nl + 1;
    }
    s.data = Dataset(Identifier::parse(entry.at("dataset").get<std::string>()), std::move(columns), std::move(rows));
    if (s.data.fingerprint().hex() != entry.at("fingerprint").get<std::string>()) {
      throw IntegrityError("fingerprint mismatch for " + file.string());
    }
    bench.slices.push_back(std::move(s));
  }
  return bench;
}

}  // namespace slicekit
