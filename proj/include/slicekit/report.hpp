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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slicekit/testbench.hpp"

namespace slicekit {

/// Model outputs keyed by the hex fingerprint of each example's input columns.
class PredictionSet {
 public:
  PredictionSet() = default;
  PredictionSet(std::string model_id, TaskKind kind) : model_id_(std::move(model_id)), kind_(kind) {}

  const std::string& model_id() const { return model_id_; }
  TaskKind kind() const { return kind_; }
  std::size_t size() const { return outputs_.size(); }
  const std::map<std::string, Json>& outputs() const { return outputs_; }

  /// Adds an output; re-adding an identical output is a no-op, a different
  /// one is an error naming the fingerprint.
  void add(const std::string& fingerprint, Json output);
  const Json* find(const std::string& fingerprint) const;

  friend bool operator==(const PredictionSet&, const PredictionSet&) = default;

 private:
  std::string model_id_;
  TaskKind kind_ = TaskKind::kClassification;
  std::map<std::string, Json> outputs_;
};

struct ReportRow {
  std::string slice_id;
  SliceCategory category = SliceCategory::kEvalSet;
  std::size_t size = 0;
  std::map<std::string, double> metrics;
  std::vector<double> pred_dist;
  std::vector<double> gold_dist;
  std::vector<std::string> flags;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct Report {
  std::string model_id;
  std::string bench_id;
  std::string bench_version;
  std::vector<ReportRow> rows;
  std::string generated_at;

  const ReportRow* find(std::string_view slice_id) const;
  friend bool operator==(const Report&, const Report&) = default;
};

/// Label text of a gold or predicted value (strings as-is, other JSON dumped).
std::string label_of(const Json& value);

double accuracy(std::span<const std::string> gold, std::span<const std::string> pred);
double macro_f1(std::span<const std::string> gold, std::span<const std::string> pred,
                std::span<const std::string> classes);
std::vector<double> class_distribution(std::span<const std::string> labels, std::span<const std::string> classes);
/// Mean ROUGE-1 F1 with the gold text as article and the prediction as summary.
double rouge1_f1_metric(std::span<const std::string> gold, std::span<const std::string> pred);

/// Default metric names for a task: accuracy and macro_f1, or rouge1_f1.
std::vector<std::string> default_metrics(TaskKind kind);

ReportRow evaluate_slice(const PredictionSet& preds, const Slice& slice, const TaskSpec& task,
                         std::span<const std::string> metrics);

/// One row per slice, grouped subpopulation, transformation, attack, evalset,
/// bench order within each group. Slices are evaluated in parallel.
Report create_report(const TestBench& bench, const PredictionSet& preds, std::span<const std::string> metrics = {},
                     std::string generated_at = utc_now());

Json report_to_json(const Report& report);
Report report_from_json(const Json& json);

std::string emit_json(const Report& report);
std::string emit_markdown(const Report& report);
std::string emit_latex(const Report& report);

struct Regression {
  std::string slice_id;
  double before = 0.0;
  double after = 0.0;
  double drop = 0.0;
};

/// Slices whose metric fell by strictly more than `threshold`, largest drop first.
std::vector<Regression> diff(const Report& before, const Report& after, const std::string& metric, double threshold);
Json regressions_to_json(std::span<const Regression> regressions);

}  // namespace slicekit
