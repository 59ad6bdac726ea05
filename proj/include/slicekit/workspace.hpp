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
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "slicekit/builders.hpp"
#include "slicekit/predictions.hpp"
#include "slicekit/report.hpp"
#include "slicekit/testbench.hpp"

namespace slicekit {

/// What to evaluate. Exactly one prediction source is set.
struct EvalRequest {
  std::string bench_id;
  std::string model_id = "model";
  std::vector<std::string> metrics;  // empty: task defaults
  std::optional<PredictionSet> predictions;
  std::optional<RemoteModelConfig> remote;

  /// `predictions` is an array of prediction-file records; input objects are
  /// fingerprinted over `input_columns`.
  static EvalRequest from_json(const Json& json, std::span<const std::string> input_columns);
};

struct EvalResult {
  std::string report_id;
  Report report;
};

/// Shared state behind the CLI and the service. Layout under `root`:
///
///   datasets/<id>.jsonl      ingested datasets
///   cache/                   cached operation outputs
///   benches/<id>/            latest saved version of each testbench
///   reports/<report-id>.json canonical report JSON
///   jobs.log                 append-only job records
class Workspace {
 public:
  explicit Workspace(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  const CacheStore& cache() const { return cache_; }

  Dataset ingest(const std::filesystem::path& file, const std::string& dataset_id) const;
  Dataset dataset(const std::string& dataset_id) const;
  void put_dataset(const std::string& dataset_id, const Dataset& dataset) const;

  /// Runs a cached op over a stored dataset and stores the widened dataset.
  Dataset cache_op(const std::string& dataset_id, const Identifier& op, std::span<const std::string> columns,
                   CacheStats* stats = nullptr) const;

  /// Runs a builder spec (with optional `columns` parameter) on a stored
  /// dataset; when `bench_id` is given the slices are added to that bench.
  BuildResult run_builder(const std::string& dataset_id, const Identifier& spec,
                          std::span<const std::string> columns, const std::string& bench_id = {}) const;

  std::vector<std::string> bench_ids() const;
  bool has_bench(const std::string& bench_id) const;
  TestBench bench(const std::string& bench_id) const;
  TestBench new_bench(const std::string& bench_id, TaskSpec task) const;
  TestBench add_eval_set(const std::string& bench_id, const std::string& dataset_id, const std::string& name) const;
  /// `level` is major, minor or patch.
  TestBench bump(const std::string& bench_id, const std::string& level) const;
  TestBench import_bench(const std::filesystem::path& dir) const;
  void export_bench(const std::string& bench_id, const std::filesystem::path& dir) const;

  /// The standard composition: HasNegation, LexicalOverlap and Length deciles,
  /// SynonymAug, KeyboardAug, FixedSuffix and the source as an eval set.
  /// `text_columns` feed the builders; LexicalOverlap uses the first two.
  TestBench standard_bench(const std::string& bench_id, const std::string& dataset_id, TaskSpec task,
                           std::span<const std::string> text_columns, std::uint64_t seed = 0) const;

  /// Evaluates and stores the report. The report id is a digest of the bench
  /// bytes, model id, metrics and predictions, so identical inputs share it.
  EvalResult evaluate(const EvalRequest& request) const;
  Report report(const std::string& report_id) const;
  std::string report_json(const std::string& report_id) const;

  void append_job_log(const Json& record) const;

 private:
  std::filesystem::path dataset_path(const std::string& id) const;
  std::filesystem::path bench_dir(const std::string& id) const;
  std::filesystem::path report_path(const std::string& id) const;
  void store_bench(const std::string& bench_id, const TestBench& bench) const;
  std::mutex& bench_mutex(const std::string& bench_id) const;

  std::filesystem::path root_;
  CacheStore cache_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::unique_ptr<std::mutex>> bench_mutexes_;
};

/// Rejects ids that are empty or could escape the workspace directories.
void check_id(const std::string& id, const char* what);

}  // namespace slicekit
