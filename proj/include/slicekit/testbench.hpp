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

#include <compare>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slicekit/slice.hpp"

namespace slicekit {

struct Version {
  std::uint64_t major = 0;
  std::uint64_t minor = 1;
  std::uint64_t patch = 0;

  static Version parse(std::string_view text);
  std::string str() const;

  friend auto operator<=>(const Version&, const Version&) = default;
};

enum class TaskKind { kClassification, kSequenceGeneration };
std::string_view to_string(TaskKind kind);
TaskKind parse_task_kind(std::string_view text);

/// Free-form task name plus the column roles evaluation needs.
struct TaskSpec {
  std::string task;
  TaskKind kind = TaskKind::kClassification;
  std::vector<std::string> inputs;  // prediction join key columns
  std::string target;               // gold label or reference text
  std::vector<std::string> classes; // classification only, declared order

  Json to_json() const;
  static TaskSpec from_json(const Json& json);
};

/// UTC timestamp, `YYYY-MM-DDTHH:MM:SSZ`. Honours SOURCE_DATE_EPOCH.
std::string utc_now();

/// Versioned, immutable collection of slices.
struct TestBench {
  Identifier identifier;
  Version version;
  TaskSpec task;
  std::vector<Slice> slices;
  std::string created_at;

  const Slice* find(std::string_view name) const;
};

TestBench make_testbench(Identifier identifier, TaskSpec task, Version version = {});

TestBench add_slices(const TestBench& bench, std::span<const Slice> slices);

TestBench bump_major(const TestBench& bench);
TestBench bump_minor(const TestBench& bench);
TestBench bump_patch(const TestBench& bench);

struct SearchHit {
  std::size_t index = 0;
  std::string name;
  double score = 0.0;
};

/// Slices ranked by longest common substring of case-folded query and name,
/// divided by the query length; ties keep bench order.
std::vector<SearchHit> search(const TestBench& bench, std::string_view query, std::size_t k = 5);

/// Canonical manifest JSON. `created_at` is left out unless requested.
Json manifest_json(const TestBench& bench, bool with_timestamp);
/// Canonical bytes identifying a bench: its manifest without the timestamp.
std::string canonical_bytes(const TestBench& bench);

/// Writes `<dir>/manifest.json` and `<dir>/slices/<name>.jsonl`.
void save(const TestBench& bench, const std::filesystem::path& dir);
TestBench load(const std::filesystem::path& dir);

}  // namespace slicekit
