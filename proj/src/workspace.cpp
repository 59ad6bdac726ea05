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

#include "slicekit/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <regex>

#include "slicekit/error.hpp"
#include "slicekit/ops.hpp"

namespace fs = std::filesystem;

namespace slicekit {

void check_id(const std::string& id, const char* what) {
  static const std::regex ok(R"([A-Za-z0-9][A-Za-z0-9_.\-]*)");
  if (!std::regex_match(id, ok)) throw SchemaError(std::string("invalid ") + what + " id '" + id + "'");
}

EvalRequest EvalRequest::from_json(const Json& json, std::span<const std::string> input_columns) {
  EvalRequest r;
  try {
    r.bench_id = json.at("testbench").get<std::string>();
    if (json.contains("model_id")) r.model_id = json["model_id"].get<std::string>();
    if (json.contains("metrics")) r.metrics = json["metrics"].get<std::vector<std::string>>();
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("malformed evaluate request: ") + e.what());
  }
  int sources = json.contains("predictions") + json.contains("remote");
  if (sources != 1) throw SchemaError("evaluate request needs exactly one of \"predictions\" or \"remote\"");
  if (json.contains("predictions")) {
    const Json& p = json["predictions"];
    if (!p.is_array()) throw SchemaError("\"predictions\" must be an array of records");
    std::string lines;
    for (const auto& rec : p) lines += rec.dump() + "\n";
    r.predictions = parse_predictions_jsonl(lines, r.model_id, TaskKind::kClassification, input_columns);
  } else {
    const Json& c = json["remote"];
    RemoteModelConfig cfg;
    try {
      cfg.url = c.at("url").get<std::string>();
      if (c.contains("batch_size")) cfg.batch_size = c["batch_size"].get<std::size_t>();
      if (c.contains("timeout_ms")) cfg.timeout = std::chrono::milliseconds(c["timeout_ms"].get<std::int64_t>());
      if (c.contains("max_retries")) cfg.max_retries = c["max_retries"].get<int>();
      if (c.contains("backoff_ms")) cfg.backoff_base = std::chrono::milliseconds(c["backoff_ms"].get<std::int64_t>());
      if (c.contains("auth_header")) cfg.auth_header = c["auth_header"].get<std::string>();
    } catch (const Json::exception& e) {
      throw SchemaError(std::string("malformed remote config: ") + e.what());
    }
    cfg.validate();
    r.remote = cfg;
  }
  return r;
}

Workspace::Workspace(fs::path root) : root_(std::move(root)), cache_(root_ / "cache") {
  if (!fs::is_directory(root_)) throw NotFoundError("workspace root '" + root_.string() + "' does not exist");
  fs::create_directories(root_ / "datasets");
  fs::create_directories(root_ / "benches");
  fs::create_directories(root_ / "reports");
}

fs::path Workspace::dataset_path(const std::string& id) const {
  check_id(id, "dataset");
  return root_ / "datasets" / (id + ".jsonl");
}

fs::path Workspace::bench_dir(const std::string& id) const {
  check_id(id, "testbench");
  return root_ / "benches" / id;
}

fs::path Workspace::report_path(const std::string& id) const {
  check_id(id, "report");
  return root_ / "reports" / (id + ".json");
}

Dataset Workspace::ingest(const fs::path& file, const std::string& dataset_id) const {
  Dataset d = file.extension() == ".csv" ? ingest_csv(file) : ingest_jsonl(file);
  d = d.with_identifier(Identifier("dataset", {{"name", dataset_id}}));
  put_dataset(dataset_id, d);
  return d;
}

Dataset Workspace::dataset(const std::string& dataset_id) const {
  fs::path p = dataset_path(dataset_id);
  if (!fs::exists(p)) throw NotFoundError("unknown dataset '" + dataset_id + "'");
  return read_dataset(p);
}

void Workspace::put_dataset(const std::string& dataset_id, const Dataset& dataset) const {
  write_dataset(dataset, dataset_path(dataset_id));
}

Dataset Workspace::cache_op(const std::string& dataset_id, const Identifier& op, std::span<const std::string> columns,
                            CacheStats* stats) const {
  Dataset d = run_cached_op(make_cached_op(op), dataset(dataset_id), columns, cache_, stats);
  put_dataset(dataset_id, d);
  return d;
}

BuildResult Workspace::run_builder(const std::string& dataset_id, const Identifier& spec,
                                   std::span<const std::string> columns, const std::string& bench_id) const {
  Dataset data = dataset(dataset_id);
  if (!bench_id.empty() && !has_bench(bench_id)) throw NotFoundError("unknown testbench '" + bench_id + "'");
  auto builder = make_builder(spec);
  std::vector<std::string> cols(columns.begin(), columns.end());
  if (cols.empty()) cols = spec_columns(spec);
  if (cols.empty()) throw SchemaError("builder needs at least one column");
  BuildContext ctx{&cache_, kernels::Exec::kParallel};
  BuildResult result = (*builder)(data, cols, ctx);
  if (!bench_id.empty()) {
    std::lock_guard lock(bench_mutex(bench_id));
    store_bench(bench_id, add_slices(bench(bench_id), result.slices));
  }
  return result;
}

std::vector<std::string> Workspace::bench_ids() const {
  std::vector<std::string> ids;
  for (const auto& e : fs::directory_iterator(root_ / "benches")) {
    if (e.is_directory() && fs::exists(e.path() / "manifest.json")) ids.push_back(e.path().filename().string());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

bool Workspace::has_bench(const std::string& bench_id) const {
  return fs::exists(bench_dir(bench_id) / "manifest.json");
}

TestBench Workspace::bench(const std::string& bench_id) const {
  if (!has_bench(bench_id)) throw NotFoundError("unknown testbench '" + bench_id + "'");
  return load(bench_dir(bench_id));
}

std::mutex& Workspace::bench_mutex(const std::string& bench_id) const {
  std::lock_guard lock(mutex_);
  auto& m = bench_mutexes_[bench_id];
  if (!m) m = std::make_unique<std::mutex>();
  return *m;
}

void Workspace::store_bench(const std::string& bench_id, const TestBench& bench) const {
  // Write beside the live copy, then swap, so readers never see half a bundle.
  fs::path dir = bench_dir(bench_id);
  fs::path tmp = dir;
  tmp += ".tmp";
  fs::path old = dir;
  old += ".old";
  fs::remove_all(tmp);
  save(bench, tmp);
  fs::remove_all(old);
  if (fs::exists(dir)) fs::rename(dir, old);
  fs::rename(tmp, dir);
  fs::remove_all(old);
}

TestBench Workspace::new_bench(const std::string& bench_id, TaskSpec task) const {
  std::lock_guard lock(bench_mutex(bench_id));
  if (has_bench(bench_id)) throw SchemaError("testbench '" + bench_id + "' already exists");
  TestBench b = make_testbench(Identifier("TestBench", {{"name", bench_id}}), std::move(task));
  store_bench(bench_id, b);
  return b;
}

TestBench Workspace::add_eval_set(const std::string& bench_id, const std::string& dataset_id,
                                  const std::string& name) const {
  std::lock_guard lock(bench_mutex(bench_id));
  Slice s = wrap_eval_set(dataset(dataset_id), name);
  TestBench b = add_slices(bench(bench_id), std::span<const Slice>(&s, 1));
  store_bench(bench_id, b);
  return b;
}

TestBench Workspace::bump(const std::string& bench_id, const std::string& level) const {
  std::lock_guard lock(bench_mutex(bench_id));
  TestBench b = bench(bench_id);
  if (level == "major") {
    b = bump_major(b);
  } else if (level == "minor") {
    b = bump_minor(b);
  } else if (level == "patch") {
    b = bump_patch(b);
  } else {
    throw SchemaError("bump level must be major, minor or patch");
  }
  store_bench(bench_id, b);
  return b;
}

TestBench Workspace::import_bench(const fs::path& dir) const {
  TestBench b = load(dir);
  const Json* name = b.identifier.find("name");
  std::string id = name && name->is_string() ? name->get<std::string>() : b.identifier.name();
  std::lock_guard lock(bench_mutex(id));
  store_bench(id, b);
  return b;
}

void Workspace::export_bench(const std::string& bench_id, const fs::path& dir) const { save(bench(bench_id), dir); }

TestBench Workspace::standard_bench(const std::string& bench_id, const std::string& dataset_id, TaskSpec task,
                                    std::span<const std::string> text_columns, std::uint64_t seed) const {
  if (text_columns.empty()) throw SchemaError("standard testbench needs at least one text column");
  Dataset data = dataset(dataset_id);
  BuildContext ctx{&cache_, kernels::Exec::kParallel};
  Json deciles = Json::array();
  for (int i = 0; i < 10; ++i) {
    deciles.push_back({std::to_string(i * 10) + "%", std::to_string((i + 1) * 10) + "%"});
  }
  std::vector<std::string> cols(text_columns.begin(), text_columns.end());
  std::vector<Slice> slices;
  auto take = [&](const SliceBuilder& b, std::span<const std::string> c) {
    auto r = b(data, c, ctx);
    for (auto& s : r.slices) slices.push_back(std::move(s));
  };
  take(*has_negation(), cols);
  if (cols.size() >= 2) {
    std::vector<std::string> pair(cols.begin(), cols.begin() + 2);
    take(*lexical_overlap_subpopulation(parse_intervals(deciles)), pair);
  }
  take(*length_subpopulation(parse_intervals(deciles)), cols);
  take(*synonym_aug(seed, 0.3), cols);
  take(*keyboard_aug(seed, 0.1), cols);
  take(*fixed_suffix("aaaabbbb"), cols);
  slices.push_back(wrap_eval_set(data, dataset_id));

  std::lock_guard lock(bench_mutex(bench_id));
  if (has_bench(bench_id)) throw SchemaError("testbench '" + bench_id + "' already exists");
  TestBench b = add_slices(make_testbench(Identifier("TestBench", {{"name", bench_id}}), std::move(task)), slices);
  store_bench(bench_id, b);
  return b;
}

EvalResult Workspace::evaluate(const EvalRequest& request) const {
  std::lock_guard lock(bench_mutex(request.bench_id));
  TestBench b = bench(request.bench_id);
  PredictionSet preds;
  if (request.predictions) {
    preds = PredictionSet(request.model_id, b.task.kind);
    for (const auto& [fp, out] : request.predictions->outputs()) preds.add(fp, out);
  } else if (request.remote) {
    // Score every distinct input across the bench.
    preds = PredictionSet(request.model_id, b.task.kind);
    for (const auto& s : b.slices) {
      PredictionSet part = fetch_predictions_remote(*request.remote, s.data, b.task.inputs, request.model_id,
                                                    b.task.kind);
      for (const auto& [fp, out] : part.outputs()) preds.add(fp, out);
    }
  } else {
    throw SchemaError("evaluate request has no prediction source");
  }
  std::vector<std::string> metrics = request.metrics.empty() ? default_metrics(b.task.kind) : request.metrics;
  Json key{{"bench", sha256(canonical_bytes(b)).hex()},
           {"model_id", request.model_id},
           {"metrics", metrics},
           {"predictions", sha256(predictions_to_jsonl(preds)).hex()}};
  std::string id = sha256(canonical_json(key)).hex().substr(0, 16);
  Report report = create_report(b, preds, metrics);
  write_file_atomic(report_path(id), emit_json(report));
  return {id, std::move(report)};
}

std::string Workspace::report_json(const std::string& report_id) const {
  fs::path p = report_path(report_id);
  if (!fs::exists(p)) throw NotFoundError("unknown report '" + report_id + "'");
  return read_file(p);
}

Report Workspace::report(const std::string& report_id) const {
  Json j;
  try {
    j = Json::parse(report_json(report_id));
  } catch (const Json::exception& e) {
    throw ParseError("report '" + report_id + "' is corrupt: " + e.what());
  }
  return report_from_json(j);
}

void Workspace::append_job_log(const Json& record) const {
  std::lock_guard lock(mutex_);
  std::ofstream out(root_ / "jobs.log", std::ios::app | std::ios::binary);
  out << canonical_json(record) << '\n';
  if (!out) throw Error("cannot append to job log");
}

}  // namespace slicekit
