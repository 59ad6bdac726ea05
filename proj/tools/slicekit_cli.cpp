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

// Command-line front end. Every command works on a workspace directory
// (--root, default ".") shared with `slicekit serve`.

#include <CLI11.hpp>

#include <csignal>
#include <iostream>
#include <set>

#include "slicekit/error.hpp"
#include "slicekit/service.hpp"
#include "slicekit/workspace.hpp"

namespace sk = slicekit;

namespace {

sk::Service* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

void print_bench(const sk::TestBench& b) {
  std::cout << b.identifier.canonical() << " v" << b.version.str() << " (" << b.slices.size() << " slices)\n";
}

sk::TaskSpec task_from(const std::string& task, const std::string& kind, const std::vector<std::string>& inputs,
                       const std::string& target, const std::vector<std::string>& classes) {
  sk::TaskSpec t;
  t.task = task;
  t.kind = sk::parse_task_kind(kind);
  t.inputs = inputs;
  t.target = target;
  t.classes = classes;
  if (t.inputs.empty()) throw sk::SchemaError("--inputs is required");
  if (t.target.empty()) throw sk::SchemaError("--target is required");
  if (t.kind == sk::TaskKind::kClassification && t.classes.empty()) {
    throw sk::SchemaError("classification benches need --classes");
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slicekit: slice-based evaluation of NLP models"};
  app.require_subcommand(1);
  app.fallthrough();  // --root may follow the subcommand
  std::string root = ".";
  app.add_option("--root", root, "Workspace directory")->capture_default_str();

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Import a JSONL or CSV file as a dataset");
  std::string ingest_file, ingest_out;
  ingest->add_option("file", ingest_file)->required();
  ingest->add_option("--out", ingest_out, "Dataset id")->required();

  // cache
  auto* cache = app.add_subcommand("cache", "Run a cached operation over a dataset");
  std::string cache_ds, cache_op;
  std::vector<std::string> cache_cols;
  cache->add_option("dataset", cache_ds)->required();
  cache->add_option("--op", cache_op, "Operation identifier, e.g. tokenize()")->required();
  cache->add_option("--columns", cache_cols)->delimiter(',')->required();

  // slice
  auto* slice = app.add_subcommand("slice", "Run a slice builder");
  std::string slice_ds, slice_builder, slice_bench;
  std::vector<std::string> slice_cols;
  slice->add_option("dataset", slice_ds)->required();
  slice->add_option("--builder", slice_builder, "Canonical builder spec")->required();
  slice->add_option("--columns", slice_cols)->delimiter(',');
  slice->add_option("--bench", slice_bench, "Add the slices to this testbench");

  // bench
  auto* bench = app.add_subcommand("bench", "Manage testbenches");
  bench->require_subcommand(1);
  std::string b_id, b_task = "task", b_kind = "classification", b_target, b_dataset, b_name, b_level, b_query, b_dir;
  std::vector<std::string> b_inputs, b_classes, b_columns;
  std::size_t b_k = 5;
  std::uint64_t b_seed = 0;
  auto task_options = [&](CLI::App* c) {
    c->add_option("--task", b_task)->capture_default_str();
    c->add_option("--kind", b_kind, "classification or sequence-generation")->capture_default_str();
    c->add_option("--inputs", b_inputs, "Input columns (prediction join key)")->delimiter(',')->required();
    c->add_option("--target", b_target, "Gold column")->required();
    c->add_option("--classes", b_classes)->delimiter(',');
  };
  auto* b_new = bench->add_subcommand("new", "Create an empty testbench");
  b_new->add_option("id", b_id)->required();
  task_options(b_new);
  auto* b_std = bench->add_subcommand("standard", "Create a testbench with the standard slice composition");
  b_std->add_option("id", b_id)->required();
  b_std->add_option("--dataset", b_dataset)->required();
  b_std->add_option("--columns", b_columns, "Text columns for the builders")->delimiter(',')->required();
  b_std->add_option("--seed", b_seed)->capture_default_str();
  task_options(b_std);
  auto* b_add = bench->add_subcommand("add", "Add a dataset as an evaluation set");
  b_add->add_option("id", b_id)->required();
  b_add->add_option("--dataset", b_dataset)->required();
  b_add->add_option("--name", b_name, "Slice name (default: dataset id)");
  auto* b_bump = bench->add_subcommand("bump", "Bump the version");
  b_bump->add_option("id", b_id)->required();
  b_bump->add_option("--level", b_level)->check(CLI::IsMember({"major", "minor", "patch"}))->default_val("minor");
  auto* b_search = bench->add_subcommand("search", "Find slices by name");
  b_search->add_option("id", b_id)->required();
  b_search->add_option("query", b_query)->required();
  b_search->add_option("-k", b_k)->capture_default_str();
  auto* b_save = bench->add_subcommand("save", "Export a testbench bundle");
  b_save->add_option("id", b_id)->required();
  b_save->add_option("--dir", b_dir)->required();
  auto* b_load = bench->add_subcommand("load", "Import a testbench bundle");
  b_load->add_option("dir", b_dir)->required();
  auto* b_inputs_cmd = bench->add_subcommand("inputs", "List the distinct inputs a model must score, as JSONL");
  b_inputs_cmd->add_option("id", b_id)->required();
  auto* b_list = bench->add_subcommand("list", "List testbenches");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate predictions on a testbench");
  std::string e_bench, e_preds, e_remote, e_model = "model";
  std::vector<std::string> e_metrics;
  std::size_t e_batch = 32;
  int e_retries = 2;
  eval->add_option("--bench", e_bench)->required();
  auto* preds_opt = eval->add_option("--preds", e_preds, "Prediction JSONL file");
  auto* remote_opt = eval->add_option("--remote", e_remote, "Model endpoint URL");
  preds_opt->excludes(remote_opt);
  eval->add_option("--model-id", e_model)->capture_default_str();
  eval->add_option("--metrics", e_metrics)->delimiter(',');
  eval->add_option("--batch-size", e_batch)->capture_default_str();
  eval->add_option("--retries", e_retries)->capture_default_str();

  // report
  auto* report = app.add_subcommand("report", "Print a stored report");
  std::string r_id, r_format = "json";
  report->add_option("id", r_id)->required();
  report->add_option("--format", r_format)->check(CLI::IsMember({"json", "md", "latex"}))->capture_default_str();

  // diff
  auto* diff = app.add_subcommand("diff", "Slices where report b regressed against report a");
  std::string d_a, d_b, d_metric;
  double d_threshold = 0.0;
  diff->add_option("a", d_a)->required();
  diff->add_option("b", d_b)->required();
  diff->add_option("--metric", d_metric)->required();
  diff->add_option("--threshold", d_threshold)->capture_default_str();

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  int s_port = 8080;
  std::string s_host = "127.0.0.1";
  serve->add_option("--port", s_port)->capture_default_str();
  serve->add_option("--host", s_host)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    sk::Workspace ws(root);
    if (*ingest) {
      sk::Dataset d = ws.ingest(ingest_file, ingest_out);
      std::cout << ingest_out << ": " << d.size() << " rows, fingerprint " << d.fingerprint().hex() << "\n";
    } else if (*cache) {
      sk::CacheStats stats;
      ws.cache_op(cache_ds, sk::Identifier::parse(cache_op), cache_cols, &stats);
      std::cout << "hits " << stats.hits << ", misses " << stats.misses << "\n";
    } else if (*slice) {
      auto r = ws.run_builder(slice_ds, sk::Identifier::parse(slice_builder), slice_cols, slice_bench);
      for (const auto& s : r.slices) {
        std::cout << s.name << "\t" << sk::to_string(s.category) << "\t" << s.data.size() << "\n";
      }
    } else if (*bench) {
      if (*b_new) {
        print_bench(ws.new_bench(b_id, task_from(b_task, b_kind, b_inputs, b_target, b_classes)));
      } else if (*b_std) {
        print_bench(ws.standard_bench(b_id, b_dataset, task_from(b_task, b_kind, b_inputs, b_target, b_classes),
                                      b_columns, b_seed));
      } else if (*b_add) {
        print_bench(ws.add_eval_set(b_id, b_dataset, b_name.empty() ? b_dataset : b_name));
      } else if (*b_bump) {
        print_bench(ws.bump(b_id, b_level));
      } else if (*b_search) {
        for (const auto& h : sk::search(ws.bench(b_id), b_query, b_k)) {
          std::cout << h.score << "\t" << h.name << "\n";
        }
      } else if (*b_save) {
        ws.export_bench(b_id, b_dir);
      } else if (*b_load) {
        print_bench(ws.import_bench(b_dir));
      } else if (*b_inputs_cmd) {
        sk::TestBench b = ws.bench(b_id);
        std::set<std::string> seen;
        for (const auto& s : b.slices) {
          for (const auto& row : s.data.rows()) {
            std::string fp = sk::fingerprint_example(row, b.task.inputs).hex();
            if (!seen.insert(fp).second) continue;
            sk::Json input = sk::Json::object();
            for (const auto& c : b.task.inputs) input[c] = row.at(c);
            std::cout << sk::canonical_json({{"fingerprint", fp}, {"input", input}}) << "\n";
          }
        }
      } else if (*b_list) {
        for (const auto& id : ws.bench_ids()) std::cout << id << "\n";
      }
    } else if (*eval) {
      sk::EvalRequest req;
      req.bench_id = e_bench;
      req.model_id = e_model;
      req.metrics = e_metrics;
      sk::TestBench b = ws.bench(e_bench);
      if (!e_preds.empty()) {
        req.predictions = sk::load_predictions_jsonl(e_preds, e_model, b.task.kind, b.task.inputs);
      } else if (!e_remote.empty()) {
        sk::RemoteModelConfig cfg;
        cfg.url = e_remote;
        cfg.batch_size = e_batch;
        cfg.max_retries = e_retries;
        req.remote = cfg;
      } else {
        throw sk::SchemaError("eval needs --preds or --remote");
      }
      std::cout << ws.evaluate(req).report_id << "\n";
    } else if (*report) {
      if (r_format == "json") {
        std::cout << ws.report_json(r_id);
      } else if (r_format == "md") {
        std::cout << sk::emit_markdown(ws.report(r_id));
      } else {
        std::cout << sk::emit_latex(ws.report(r_id));
      }
    } else if (*diff) {
      auto regs = sk::diff(ws.report(d_a), ws.report(d_b), d_metric, d_threshold);
      if (regs.empty()) std::cout << "no regressions\n";
      for (const auto& r : regs) {
        std::cout << r.slice_id << "\t" << r.before << " -> " << r.after << "\t(-" << r.drop << ")\n";
      }
    } else if (*serve) {
      sk::Service service(ws);
      int port = service.bind(s_host, s_port);
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "serving " << root << " on http://" << s_host << ":" << port << "\n";
      service.run();
      g_service = nullptr;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
