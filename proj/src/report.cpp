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

#include "slicekit/report.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "slicekit/error.hpp"
#include "slicekit/kernels.hpp"
#include "slicekit/metrics.hpp"
#include "slicekit/text.hpp"

namespace slicekit {

void PredictionSet::add(const std::string& fingerprint, Json output) {
  auto [it, inserted] = outputs_.emplace(fingerprint, output);
  if (!inserted && it->second != output) {
    throw Error("conflicting predictions for fingerprint " + fingerprint);
  }
}

const Json* PredictionSet::find(const std::string& fingerprint) const {
  auto it = outputs_.find(fingerprint);
  return it == outputs_.end() ? nullptr : &it->second;
}

const ReportRow* Report::find(std::string_view slice_id) const {
  for (const auto& r : rows) {
    if (r.slice_id == slice_id) return &r;
  }
  return nullptr;
}

std::string label_of(const Json& value) { return value.is_string() ? value.get<std::string>() : value.dump(); }

double accuracy(std::span<const std::string> gold, std::span<const std::string> pred) {
  if (gold.size() != pred.size()) throw Error("accuracy: length mismatch");
  if (gold.empty()) throw Error("accuracy: no examples");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) correct += gold[i] == pred[i];
  return static_cast<double>(correct) / static_cast<double>(gold.size());
}

namespace {

std::size_t class_index(std::span<const std::string> classes, const std::string& label) {
  auto it = std::find(classes.begin(), classes.end(), label);
  if (it == classes.end()) throw SchemaError("unknown label '" + label + "'");
  return static_cast<std::size_t>(it - classes.begin());
}

}  // namespace

double macro_f1(std::span<const std::string> gold, std::span<const std::string> pred,
                std::span<const std::string> classes) {
  if (gold.size() != pred.size()) throw Error("macro_f1: length mismatch");
  if (classes.empty()) throw SchemaError("macro_f1: no classes declared");
  std::vector<std::size_t> tp(classes.size(), 0);
  std::vector<std::size_t> gold_n(classes.size(), 0);
  std::vector<std::size_t> pred_n(classes.size(), 0);
  for (std::size_t i = 0; i < gold.size(); ++i) {
    std::size_t g = class_index(classes, gold[i]);
    std::size_t p = class_index(classes, pred[i]);
    ++gold_n[g];
    ++pred_n[p];
    if (g == p) ++tp[g];
  }
  double sum = 0.0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    double precision = pred_n[c] ? static_cast<double>(tp[c]) / static_cast<double>(pred_n[c]) : 0.0;
    double recall = gold_n[c] ? static_cast<double>(tp[c]) / static_cast<double>(gold_n[c]) : 0.0;
    sum += precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
  }
  return sum / static_cast<double>(classes.size());
}

std::vector<double> class_distribution(std::span<const std::string> labels, std::span<const std::string> classes) {
  if (labels.empty()) throw Error("class_distribution: no labels");
  std::vector<std::size_t> counts(classes.size(), 0);
  for (const auto& l : labels) ++counts[class_index(classes, l)];
  std::vector<double> out;
  for (auto c : counts) out.push_back(static_cast<double>(c) / static_cast<double>(labels.size()));
  return out;
}

double rouge1_f1_metric(std::span<const std::string> gold, std::span<const std::string> pred) {
  if (gold.size() != pred.size()) throw Error("rouge1_f1: length mismatch");
  if (gold.empty()) throw Error("rouge1_f1: no examples");
  auto scores = kernels::rouge1_f1_rows(gold, pred, kernels::Exec::kSerial);
  double sum = 0.0;
  for (double s : scores) sum += s;
  return sum / static_cast<double>(scores.size());
}

std::vector<std::string> default_metrics(TaskKind kind) {
  if (kind == TaskKind::kClassification) return {"accuracy", "macro_f1"};
  return {"rouge1_f1"};
}

ReportRow evaluate_slice(const PredictionSet& preds, const Slice& slice, const TaskSpec& task,
                         std::span<const std::string> metrics) {
  ReportRow row;
  row.slice_id = slice.name;
  row.category = slice.category;
  row.size = slice.data.size();
  if (slice.data.empty()) {
    row.flags.push_back("empty");
    return row;
  }
  std::vector<std::string> gold;
  std::vector<std::string> pred;
  for (const auto& ex : slice.data.rows()) {
    std::string fp = fingerprint_example(ex, task.inputs).hex();
    const Json* out = preds.find(fp);
    if (!out) throw Error("missing prediction for fingerprint " + fp + " in slice '" + slice.name + "'");
    gold.push_back(label_of(ex.at(task.target)));
    pred.push_back(label_of(*out));
  }
  for (const auto& m : metrics) {
    if (m == "accuracy") {
      row.metrics[m] = accuracy(gold, pred);
    } else if (m == "macro_f1") {
      row.metrics[m] = macro_f1(gold, pred, task.classes);
    } else if (m == "rouge1_f1") {
      row.metrics[m] = rouge1_f1_metric(gold, pred);
    } else {
      throw SchemaError("unknown metric '" + m + "'");
    }
  }
  if (task.kind == TaskKind::kClassification) {
    row.pred_dist = class_distribution(pred, task.classes);
    row.gold_dist = class_distribution(gold, task.classes);
  }
  return row;
}

Report create_report(const TestBench& bench, const PredictionSet& preds, std::span<const std::string> metrics,
                     std::string generated_at) {
  std::vector<std::string> names(metrics.begin(), metrics.end());
  if (names.empty()) names = default_metrics(bench.task.kind);
  auto rows = kernels::map_rows<ReportRow>(bench.slices.size(), [&](std::size_t i) {
    try {
      return evaluate_slice(preds, bench.slices[i], bench.task, names);
    } catch (const std::exception& e) {
      std::string what = e.what();
      if (what.find("slice '") != std::string::npos) throw;
      throw Error("slice '" + bench.slices[i].name + "': " + what);
    }
  });
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ReportRow& a, const ReportRow& b) { return a.category < b.category; });
  return Report{preds.model_id(), bench.identifier.canonical(), bench.version.str(), std::move(rows),
                std::move(generated_at)};
}

Json report_to_json(const Report& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json metrics = Json::object();
    for (const auto& [k, v] : r.metrics) metrics[k] = v;
    rows.push_back({{"slice_id", r.slice_id},
                    {"category", std::string(to_string(r.category))},
                    {"size", r.size},
                    {"metrics", metrics},
                    {"pred_dist", r.pred_dist},
                    {"gold_dist", r.gold_dist},
                    {"flags", r.flags}});
  }
  return {{"model_id", report.model_id},
          {"testbench", {{"id", report.bench_id}, {"version", report.bench_version}}},
          {"rows", rows},
          {"generated_at", report.generated_at}};
}

Report report_from_json(const Json& json) {
  Report r;
  try {
    r.model_id = json.at("model_id").get<std::string>();
    r.bench_id = json.at("testbench").at("id").get<std::string>();
    r.bench_version = json.at("testbench").at("version").get<std::string>();
    r.generated_at = json.at("generated_at").get<std::string>();
    for (const auto& row : json.at("rows")) {
      ReportRow out;
      out.slice_id = row.at("slice_id").get<std::string>();
      out.category = parse_slice_category(row.at("category").get<std::string>());
      out.size = row.at("size").get<std::size_t>();
      for (const auto& [k, v] : row.at("metrics").items()) out.metrics[k] = v.get<double>();
      out.pred_dist = row.at("pred_dist").get<std::vector<double>>();
      out.gold_dist = row.at("gold_dist").get<std::vector<double>>();
      out.flags = row.at("flags").get<std::vector<std::string>>();
      r.rows.push_back(std::move(out));
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string emit_json(const Report& report) { return canonical_json(report_to_json(report)); }

namespace {

constexpr SliceCategory kCategories[] = {SliceCategory::kSubpopulation, SliceCategory::kTransformation,
                                         SliceCategory::kAttack, SliceCategory::kEvalSet};

std::string category_title(SliceCategory c) {
  switch (c) {
    case SliceCategory::kSubpopulation: return "Subpopulations";
    case SliceCategory::kTransformation: return "Transformations";
    case SliceCategory::kAttack: return "Attacks";
    case SliceCategory::kEvalSet: return "Evaluation Sets";
  }
  return "";
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string dist_text(const std::vector<double>& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) out += (i ? " / " : "") + fixed4(d[i]);
  return out;
}

std::vector<std::string> metric_columns(const std::vector<const ReportRow*>& rows) {
  std::set<std::string> names;
  for (const auto* r : rows) {
    for (const auto& [k, v] : r->metrics) names.insert(k);
  }
  return {names.begin(), names.end()};
}

std::vector<const ReportRow*> rows_in(const Report& report, SliceCategory c) {
  std::vector<const ReportRow*> out;
  for (const auto& r : report.rows) {
    if (r.category == c) out.push_back(&r);
  }
  return out;
}

std::string md_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string latex_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\textbackslash{}"; break;
      case '&': out += "\\&"; break;
      case '%': out += "\\%"; break;
      case '$': out += "\\$"; break;
      case '#': out += "\\#"; break;
      case '_': out += "\\_"; break;
      case '{': out += "\\{"; break;
      case '}': out += "\\}"; break;
      case '~': out += "\\textasciitilde{}"; break;
      case '^': out += "\\textasciicircum{}"; break;
      case '>': out += "\\textgreater{}"; break;
      case '<': out += "\\textless{}"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string emit_markdown(const Report& report) {
  std::ostringstream out;
  out << "# Robustness report: " << report.model_id << " on " << report.bench_id << " v" << report.bench_version
      << "\n";
  for (auto c : kCategories) {
    auto rows = rows_in(report, c);
    if (rows.empty()) continue;
    auto metrics = metric_columns(rows);
    out << "\n## " << category_title(c) << "\n\n| Slice | Size |";
    for (const auto& m : metrics) out << " " << m << " |";
    out << " Pred dist | Gold dist | Flags |\n|---|---:|";
    for (std::size_t i = 0; i < metrics.size(); ++i) out << "---:|";
    out << "---|---|---|\n";
    for (const auto* r : rows) {
      out << "| " << md_escape(r->slice_id) << " | " << r->size << " |";
      for (const auto& m : metrics) {
        auto it = r->metrics.find(m);
        out << " " << (it == r->metrics.end() ? "" : fixed4(it->second)) << " |";
      }
      std::string flags;
      for (std::size_t i = 0; i < r->flags.size(); ++i) flags += (i ? ", " : "") + r->flags[i];
      out << " " << dist_text(r->pred_dist) << " | " << dist_text(r->gold_dist) << " | " << flags << " |\n";
    }
  }
  return out.str();
}

std::string emit_latex(const Report& report) {
  std::ostringstream out;
  out << "\\begin{table}[ht]\n\\centering\n\\small\n";
  bool first = true;
  for (auto c : kCategories) {
    auto rows = rows_in(report, c);
    if (rows.empty()) continue;
    auto metrics = metric_columns(rows);
    std::size_t ncols = 2 + metrics.size() + 2;
    if (!first) out << "\\par\\medskip\n";
    first = false;
    out << "\\begin{tabular}{l" << std::string(1 + metrics.size(), 'r') << "ll}\n\\hline\n";
    out << "\\multicolumn{" << ncols << "}{l}{\\textbf{" << category_title(c) << "}} \\\\\n\\hline\n";
    out << "Slice & Size";
    for (const auto& m : metrics) out << " & " << latex_escape(m);
    out << " & Pred.\\ dist. & Gold dist. \\\\\n\\hline\n";
    for (const auto* r : rows) {
      out << latex_escape(r->slice_id) << " & " << r->size;
      for (const auto& m : metrics) {
        auto it = r->metrics.find(m);
        out << " & " << (it == r->metrics.end() ? "--" : fixed4(it->second));
      }
      out << " & " << latex_escape(dist_text(r->pred_dist)) << " & " << latex_escape(dist_text(r->gold_dist))
          << " \\\\\n";
    }
    out << "\\hline\n\\end{tabular}\n";
  }
  out << "\\caption{Robustness report for " << latex_escape(report.model_id) << " on testbench "
      << latex_escape(report.bench_id) << " (version " << latex_escape(report.bench_version)
      << "), broken out by evaluation category.}\n";
  out << "\\end{table}\n";
  return out.str();
}

std::vector<Regression> diff(const Report& before, const Report& after, const std::string& metric, double threshold) {
  if (before.bench_id != after.bench_id || before.bench_version != after.bench_version) {
    throw Error("diff: reports come from different testbenches (" + before.bench_id + " v" + before.bench_version +
                " vs " + after.bench_id + " v" + after.bench_version + ")");
  }
  bool known = false;
  for (const auto& r : before.rows) known = known || r.metrics.count(metric);
  for (const auto& r : after.rows) known = known || r.metrics.count(metric);
  if (!known) throw SchemaError("diff: unknown metric '" + metric + "'");
  std::vector<Regression> out;
  for (const auto& a : before.rows) {
    const ReportRow* b = after.find(a.slice_id);
    if (!b) continue;
    auto ia = a.metrics.find(metric);
    auto ib = b->metrics.find(metric);
    if (ia == a.metrics.end() || ib == b->metrics.end()) continue;
    if (ib->second < ia->second - threshold) {
      out.push_back({a.slice_id, ia->second, ib->second, ia->second - ib->second});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Regression& x, const Regression& y) { return x.drop > y.drop; });
  return out;
}

Json regressions_to_json(std::span<const Regression> regressions) {
  Json out = Json::array();
  for (const auto& r : regressions) {
    out.push_back({{"slice_id", r.slice_id}, {"before", r.before}, {"after", r.after}, {"drop", r.drop}});
  }
  return out;
}

}  // namespace slicekit
