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

// Acceptance suite: one PASS/FAIL line per primary criterion. Exits non-zero
// when any criterion fails.

#include <httplib.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "slicekit/builders.hpp"
#include "slicekit/cache.hpp"
#include "slicekit/error.hpp"
#include "slicekit/metrics.hpp"
#include "slicekit/ops.hpp"
#include "slicekit/report.hpp"
#include "slicekit/service.hpp"
#include "slicekit/testbench.hpp"
#include "slicekit/workspace.hpp"

namespace fs = std::filesystem;
using namespace slicekit;

namespace {

using Clock = std::chrono::steady_clock;
using Tokens = std::vector<std::string>;

// Failure details collected by a check; empty means pass.
struct Outcome {
  std::vector<std::string> problems;
  std::string detail;

  void fail(const std::string& why) {
    if (problems.size() < 5) problems.push_back(why);
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

class ScratchDir {
 public:
  ScratchDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("slicekit-accept-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string join(const Tokens& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? " " : "") + t[i];
  return out;
}

// --- oracles -----------------------------------------------------------------

// Matched n-gram count by pairing each summary n-gram with an unused
// identical article n-gram, one at a time.
std::size_t brute_overlap(const Tokens& a, const Tokens& s, std::size_t n) {
  auto grams = [n](const Tokens& t) {
    std::vector<Tokens> g;
    for (std::size_t i = 0; i + n <= t.size(); ++i) g.emplace_back(t.begin() + i, t.begin() + i + n);
    return g;
  };
  std::vector<Tokens> ag = grams(a), sg = grams(s);
  std::vector<bool> used(ag.size(), false);
  std::size_t matched = 0;
  for (const auto& g : sg) {
    for (std::size_t i = 0; i < ag.size(); ++i) {
      if (!used[i] && ag[i] == g) {
        used[i] = true;
        ++matched;
        break;
      }
    }
  }
  return matched;
}

std::size_t gram_total(const Tokens& t, std::size_t n) { return t.size() >= n ? t.size() - n + 1 : 0; }

// LCS over suffixes, filled from the back.
std::size_t lcs_oracle(const Tokens& a, const Tokens& b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = a.size(); i-- > 0;) {
    for (std::size_t j = b.size(); j-- > 0;) {
      t[i][j] = a[i] == b[j] ? 1 + t[i + 1][j + 1] : std::max(t[i + 1][j], t[i][j + 1]);
    }
  }
  return t[0][0];
}

// Pearson correlation of average ranks, ranks found by counting.
double spearman_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      double less = 0, equal = 0;
      for (double w : v) {
        less += w < v[i];
        equal += w == v[i];
      }
      r[i] = less + (equal + 1.0) / 2.0;
    }
    return r;
  };
  auto rx = ranks(x), ry = ranks(y);
  double n = static_cast<double>(x.size());
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// --- shared fixtures ---------------------------------------------------------

const fs::path kNews = fs::path(SLICEKIT_DATA_DIR) / "news_sample.jsonl";

Dataset news() {
  static const Dataset d = ingest_jsonl(kNews, {{"topic", ColumnKind::kLabel}, {"id", ColumnKind::kLabel}});
  return d;
}

Json deciles() {
  Json out = Json::array();
  for (int i = 0; i < 10; ++i) out.push_back({std::to_string(10 * i) + "%", std::to_string(10 * i + 10) + "%"});
  return out;
}

std::vector<std::string> topics(const Dataset& d) {
  std::set<std::string> s;
  for (const auto& r : d.rows()) s.insert(r.at("topic").get<std::string>());
  return {s.begin(), s.end()};
}

TaskSpec topic_task(const Dataset& d) {
  TaskSpec t;
  t.task = "topic";
  t.kind = TaskKind::kClassification;
  t.inputs = {"article"};
  t.target = "topic";
  t.classes = topics(d);
  return t;
}

// --- criteria ----------------------------------------------------------------

Outcome metric_oracles() {
  Outcome o;
  auto t0 = Clock::now();
  std::mt19937_64 rng(739);
  const Tokens alphabet{"a", "b", "c", "d", "e", "f", "g", "h"};
  const int pairs = 2000;
  for (int p = 0; p < pairs; ++p) {
    std::size_t k = 1 + rng() % alphabet.size();
    auto draw = [&] {
      Tokens t(rng() % 21);
      for (auto& tok : t) tok = alphabet[rng() % k];
      return t;
    };
    Tokens a = draw(), s = draw();
    for (auto [variant, n] : {std::pair{RougeVariant::kR1, 1u}, std::pair{RougeVariant::kR2, 2u}}) {
      RougeScores r = rouge(a, s, variant);
      std::size_t ov = brute_overlap(a, s, n);
      std::size_t st = gram_total(s, n), at = gram_total(a, n);
      // Rationals overlap/st and overlap/at compared as reduced integer pairs.
      o.expect(r.overlap == ov && r.summary_total == st && r.article_total == at,
               "rouge n=" + std::to_string(n) + " counts on '" + join(a) + "' / '" + join(s) + "'");
      double prec = st ? static_cast<double>(ov) / static_cast<double>(st) : 0.0;
      double rec = at ? static_cast<double>(ov) / static_cast<double>(at) : 0.0;
      o.expect(r.precision == prec && r.recall == rec, "rouge precision/recall value");
      o.expect(abstractiveness(join(a), join(s), variant) == 1.0 - prec, "abstractiveness != 1 - precision");
      o.expect(distillation(join(a), join(s), variant) == 1.0 - rec, "distillation != 1 - recall");
    }
    RougeScores l = rouge(a, s, RougeVariant::kRL);
    std::size_t lcs = lcs_oracle(a, s);
    o.expect(l.overlap == lcs && lcs_length(a, s) == lcs, "rougeL LCS on '" + join(a) + "' / '" + join(s) + "'");
    o.expect(l.summary_total == s.size() && l.article_total == a.size(), "rougeL denominators");
    double lp = s.empty() ? 0.0 : static_cast<double>(lcs) / static_cast<double>(s.size());
    o.expect(abstractiveness(join(a), join(s), RougeVariant::kRL) == 1.0 - lp, "rougeL abstractiveness identity");
  }
  double secs = seconds_since(t0);
  o.expect(secs < 10.0, "runtime " + std::to_string(secs) + " s");
  o.detail = std::to_string(pairs) + " pairs, " + std::to_string(secs).substr(0, 5) + " s";
  return o;
}

Outcome spearman_oracle_check() {
  Outcome o;
  std::mt19937_64 rng(740);
  double worst = 0;
  const int trials = 2000;
  for (int trial = 0; trial < trials; ++trial) {
    std::size_t n = 2 + rng() % 49;
    bool ties = trial % 2 == 0;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = ties ? static_cast<double>(rng() % 5) : std::ldexp(static_cast<double>(rng() >> 11), -53);
      y[i] = ties ? static_cast<double>(rng() % 4) : std::ldexp(static_cast<double>(rng() >> 11), -53);
    }
    auto constant = [](const std::vector<double>& v) {
      return std::all_of(v.begin(), v.end(), [&](double e) { return e == v[0]; });
    };
    if (constant(x) || constant(y)) continue;
    double got = spearman(x, y);
    double want = spearman_oracle(x, y);
    worst = std::max(worst, std::abs(got - want));
  }
  o.expect(worst <= 1e-9, "max deviation " + std::to_string(worst));
  std::vector<double> x{2, 1, 3}, y{1, 2, 3};
  o.expect(spearman(x, y) == 0.5, "hand case (2,1,3) vs (1,2,3)");
  std::ostringstream d;
  d << trials << " vectors, max |diff| " << worst;
  o.detail = d.str();
  return o;
}

Outcome decile_partition() {
  Outcome o;
  std::mt19937_64 rng(741);
  const std::vector<std::string> cols{"score"};
  double worst_real = 0;
  for (std::size_t n : {100u, 137u, 250u, 999u, 1000u}) {
    std::set<double> distinct;
    while (distinct.size() < n) distinct.insert(static_cast<double>(rng() % 10000000) / 13.0);
    std::vector<double> scores(distinct.begin(), distinct.end());
    std::shuffle(scores.begin(), scores.end(), rng);
    std::vector<Example> rows;
    for (double s : scores) rows.push_back(Json{{"score", s}});
    Dataset d(Identifier("scores"), {{"score", ColumnKind::kScalar}}, std::move(rows));
    ScoreSubpopulation builder(
        Identifier("Score"),
        [](std::span<const std::string> c) {
          std::string col = c[0];
          return CachedOperation(Identifier("score_of", {{"column", col}}), ColumnKind::kScalar,
                                 [col](const Example& e, std::span<const std::string>) { return e.at(col); });
        },
        parse_intervals(deciles()));
    BuildResult r = builder(d, cols);
    o.expect(r.slices.size() == 10, "expected 10 slices");
    for (std::size_t i = 0; i < n; ++i) {
      bool covered = false;
      for (std::size_t j = 0; j < r.slices.size(); ++j) covered = covered || r.membership.at(i, j);
      o.expect(covered, "n=" + std::to_string(n) + " row " + std::to_string(i) + " uncovered");
    }
    // Decile sizes are integers; the target is n/10 rounded up. For n a
    // multiple of 10 this is n/10 exactly.
    double target = static_cast<double>((n + 9) / 10);
    for (std::size_t j = 0; j < r.slices.size(); ++j) {
      double size = static_cast<double>(r.slices[j].data.size());
      worst_real = std::max(worst_real, std::abs(size - static_cast<double>(n) / 10.0));
      o.expect(std::abs(size - target) <= 1.0,
               "n=" + std::to_string(n) + " decile " + std::to_string(j) + " size " + std::to_string(size));
      o.expect(r.membership.column_sum(j) == r.slices[j].data.size(), "column sum mismatch");
    }
  }
  std::ostringstream det;
  det << "n = 100, 137, 250, 999, 1000; sizes within 1 of ceil(n/10); max |size - n/10| = " << worst_real;
  o.detail = det.str();
  return o;
}

Outcome lead3_bias() {
  Outcome o;
  auto t0 = Clock::now();
  Dataset d = news();
  const std::vector<std::string> cols{"article", "summary"};
  auto builder = summary_subpopulation("position", parse_intervals(deciles()));
  BuildResult r = (*builder)(d, cols);
  auto mean_r1 = [](const Dataset& slice) {
    std::vector<std::string> gold, lead;
    for (const auto& row : slice.rows()) {
      gold.push_back(row.at("summary"));
      lead.push_back(lead3(row.at("article").get<std::string>()));
    }
    auto f = kernels::rouge1_f1_rows(gold, lead);
    return 100.0 * std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(f.size());
  };
  o.expect(d.size() >= 100, "corpus has fewer than 100 articles");
  o.expect(r.slices.size() == 10 && !r.slices.front().data.rows().empty() && !r.slices.back().data.rows().empty(),
           "decile slices missing");
  if (!o.problems.empty()) return o;
  double earliest = mean_r1(r.slices.front().data);
  double latest = mean_r1(r.slices.back().data);
  double gap = earliest - latest;
  double secs = seconds_since(t0);
  o.expect(gap >= 3.0, "gap " + std::to_string(gap) + " points");
  o.expect(secs < 30.0, "runtime " + std::to_string(secs) + " s");
  std::ostringstream det;
  det.precision(2);
  det << std::fixed << "earliest " << earliest << ", latest " << latest << ", gap " << gap << " points, "
      << d.size() << " articles, " << secs << " s";
  o.detail = det.str();
  return o;
}

Outcome lead3_extractive() {
  Outcome o;
  Dataset d = news();
  std::size_t zero = 0;
  for (const auto& row : d.rows()) {
    std::string article = row.at("article");
    double a = abstractiveness(article, lead3(article), RougeVariant::kR1);
    if (a == 0.0) {
      ++zero;
    } else {
      o.fail("article " + row.at("id").get<std::string>() + " abstractiveness " + std::to_string(a));
    }
  }
  o.detail = std::to_string(zero) + "/" + std::to_string(d.size()) + " articles";
  return o;
}

std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> out;
  if (!fs::exists(root)) return out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    out[fs::relative(e.path(), root).string()] = std::string(std::istreambuf_iterator<char>(in), {});
  }
  return out;
}

Outcome cache_soundness() {
  Outcome o;
  ScratchDir dir;
  CacheStore store(dir.path() / "cache");
  Dataset d = news();
  std::atomic<std::size_t> calls{0};
  const std::vector<std::string> cols{"summary", "article"};
  std::vector<CachedOperation> ops;
  for (const auto& base : {make_cached_op(Identifier("tokenize")), make_cached_op(Identifier("split_sentences"))}) {
    ops.emplace_back(base.identifier(), base.output_kind(), [base, &calls](const Example& e, std::span<const std::string> c) {
      ++calls;
      return base.apply(e, c);
    });
  }
  auto retrieve_all = [&] {
    std::vector<std::string> out;
    for (const auto& op : ops) {
      run_cached_op(op, d, cols, store);
      for (const auto& v : retrieve(d, cols, op.identifier(), store)) out.push_back(canonical_json(v));
    }
    return out;
  };
  auto first = retrieve_all();
  auto disk = snapshot(store.root());
  std::size_t first_calls = calls.exchange(0);
  store.clear();
  auto recomputed = retrieve_all();
  o.expect(recomputed == first, "values differ after clear + recompute");
  o.expect(snapshot(store.root()) == disk, "cache bytes differ after clear + recompute");
  calls = 0;
  auto third = retrieve_all();
  o.expect(calls.load() == 0, std::to_string(calls.load()) + " apply calls on a warm cache");
  o.expect(third == first, "warm-cache values differ");
  o.expect(snapshot(store.root()) == disk, "warm run changed cache bytes");
  o.detail = std::to_string(first.size()) + " values, " + std::to_string(first_calls) + " cold apply calls, " +
             std::to_string(disk.size()) + " files";
  return o;
}

TestBench round_trip_bench(const Dataset& d) {
  const std::vector<std::string> art{"article"};
  const std::vector<std::string> pair{"article", "summary"};
  std::vector<Slice> slices;
  auto take = [&](BuildResult r) {
    for (auto& s : r.slices) slices.push_back(std::move(s));
  };
  take((*summary_subpopulation("position", parse_intervals(deciles())))(d, pair));
  take((*length_subpopulation(parse_intervals(Json::parse(R"([["0%","50%"],["50%","100%"]])"))))(d, art));
  take(HasPhrase({"her", "she"})(d, art));
  take((*synonym_aug(5, 0.3))(d, art));
  take((*keyboard_aug(6, 0.1))(d, art));
  take((*fixed_suffix("aaaabbbb"))(d, art));
  // A subpopulation of a transformed slice: two recorded steps.
  Slice kb = slices.back();
  for (const auto& s : slices) {
    if (s.name.rfind("KeyboardAug", 0) == 0) kb = s;
  }
  take(HasPhrase({"market"})(kb, art));
  slices.push_back(wrap_eval_set(d, "news"));
  return add_slices(make_testbench(Identifier("TestBench", {{"name", "news"}}), topic_task(d)), slices);
}

Outcome bench_round_trip() {
  Outcome o;
  ScratchDir dir;
  Dataset d = news();
  TestBench b = round_trip_bench(d);
  save(b, dir.path() / "one");
  TestBench loaded = load(dir.path() / "one");
  save(loaded, dir.path() / "two");
  auto one = snapshot(dir.path() / "one");
  auto two = snapshot(dir.path() / "two");
  o.expect(!one.empty() && one == two, "save -> load -> save bundles differ");
  o.expect(loaded.slices.size() == b.slices.size(), "slice count changed on load");
  std::size_t replayed = 0;
  for (const auto& s : loaded.slices) {
    Dataset again = replay_lineage(d, s.lineage);
    o.expect(again.fingerprint() == s.data.fingerprint() && rows_to_jsonl(again) == rows_to_jsonl(s.data),
             "replay of '" + s.name + "' differs");
    ++replayed;
  }
  o.detail = std::to_string(one.size()) + " bundle files, " + std::to_string(replayed) + " lineages replayed";
  return o;
}

std::string run_cli(const std::string& args, bool& ok) {
  std::string cmd = std::string(SLICEKIT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    ok = false;
    return {};
  }
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  ok = pclose(pipe) == 0;
  while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
  return out;
}

Outcome report_consistency() {
  Outcome o;
  Dataset d = news();
  TaskSpec task = topic_task(d);
  const std::vector<std::string> art{"article"};

  // Partition by integer token counts into disjoint absolute ranges.
  Json ranges = Json::array();
  for (int lo = 0; lo < 400; lo += 40) ranges.push_back({lo, lo + 39});
  ranges.push_back({400, "inf"});
  std::vector<Slice> slices;
  for (auto& s : (*length_subpopulation(parse_intervals(ranges)))(d, art).slices) slices.push_back(std::move(s));
  for (auto& s : (*synonym_aug(9, 0.3))(d, art).slices) slices.push_back(std::move(s));
  slices.push_back(wrap_eval_set(d, "news"));
  TestBench b = add_slices(make_testbench(Identifier("TestBench", {{"name", "news"}}), task), slices);

  // A model that is right when the fingerprint starts with a digit.
  PredictionSet preds("digit-model", TaskKind::kClassification);
  for (const auto& s : b.slices) {
    for (const auto& row : s.data.rows()) {
      std::string fp = fingerprint_example(row, task.inputs).hex();
      preds.add(fp, std::isdigit(static_cast<unsigned char>(fp[0])) ? row.at("topic").get<std::string>()
                                                                     : task.classes.front());
    }
  }
  Report r = create_report(b, preds);
  for (const auto& row : r.rows) {
    for (const auto* dist : {&row.pred_dist, &row.gold_dist}) {
      double sum = std::accumulate(dist->begin(), dist->end(), 0.0);
      o.expect(row.size == 0 || std::abs(sum - 1.0) <= 1e-9, "distribution of " + row.slice_id + " sums to " +
                                                                 std::to_string(sum));
    }
  }
  std::vector<std::string> gold, pred;
  for (const auto& row : d.rows()) {
    gold.push_back(row.at("topic"));
    pred.push_back(preds.find(fingerprint_example(row, task.inputs).hex())->get<std::string>());
  }
  double direct = accuracy(gold, pred);
  const ReportRow* whole = r.find("news");
  o.expect(whole && whole->metrics.at("accuracy") == direct, "whole-dataset accuracy differs from direct");
  double weighted = 0;
  std::size_t total = 0;
  for (const auto& row : r.rows) {
    if (row.slice_id.rfind("Length", 0) != 0 || row.size == 0) continue;
    weighted += row.metrics.at("accuracy") * static_cast<double>(row.size);
    total += row.size;
  }
  o.expect(total == d.size(), "length ranges do not partition the dataset");
  o.expect(std::abs(weighted / static_cast<double>(total) - direct) <= 1e-12, "weighted partition mean differs");

  // CLI and service against twin workspaces holding the same bench.
  setenv("SOURCE_DATE_EPOCH", "1790000000", 1);
  ScratchDir a_dir, b_dir;
  {
    Workspace ws(a_dir.path());
    ws.put_dataset("news", d);
    std::vector<std::string> text_cols{"article", "summary"};
    ws.standard_bench("news-bench", "news", task, text_cols, 21);
  }
  fs::copy(a_dir.path(), b_dir.path(), fs::copy_options::recursive | fs::copy_options::overwrite_existing);
  bool ok = true;
  std::string inputs = run_cli("--root " + b_dir.path().string() + " bench inputs news-bench", ok);
  o.expect(ok, "bench inputs failed: " + inputs);
  Json records = Json::array();
  {
    std::istringstream in(inputs);
    std::ofstream out(b_dir.path() / "preds.jsonl");
    std::string line;
    while (std::getline(in, line)) {
      Json rec = Json::parse(line);
      std::string fp = rec["fingerprint"];
      Json p{{"fingerprint", fp}, {"output", task.classes[static_cast<std::size_t>(fp[1]) % task.classes.size()]}};
      out << p.dump() << '\n';
      records.push_back(p);
    }
  }
  std::string cli_id = run_cli("--root " + b_dir.path().string() + " eval --bench news-bench --preds " +
                                   (b_dir.path() / "preds.jsonl").string() + " --model-id digit-model",
                               ok);
  o.expect(ok, "cli eval failed: " + cli_id);
  std::string cli_json = run_cli("--root " + b_dir.path().string() + " report " + cli_id + " --format json", ok);

  Workspace ws(a_dir.path());
  Service service(ws);
  int port = service.bind("127.0.0.1", 0);
  std::thread server([&] { service.run(); });
  httplib::Client client("127.0.0.1", port);
  std::string service_json;
  auto accepted =
      client.Post("/api/evaluate",
                  Json{{"testbench", "news-bench"}, {"model_id", "digit-model"}, {"predictions", records}}.dump(),
                  "application/json");
  if (accepted && accepted->status == 202) {
    std::string job_id = Json::parse(accepted->body)["job_id"];
    for (int i = 0; i < 6000; ++i) {
      auto j = client.Get("/api/jobs/" + job_id);
      if (!j) continue;
      Json job = Json::parse(j->body);
      if (job["status"] == "done") {
        auto rep = client.Get("/api/reports/" + job["result"]["report_id"].get<std::string>());
        if (rep) service_json = rep->body;
        break;
      }
      if (job["status"] == "failed") {
        o.fail("service job failed: " + job["error"].get<std::string>());
        break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
  } else {
    o.fail("service rejected the evaluation");
  }
  service.stop();
  server.join();
  service.wait_for_jobs();
  unsetenv("SOURCE_DATE_EPOCH");
  o.expect(!cli_json.empty() && cli_json == service_json, "CLI and service report JSON differ");
  o.detail = std::to_string(r.rows.size()) + " rows, accuracy " + std::to_string(direct) + ", report " + cli_id;
  return o;
}

Outcome transform_determinism() {
  Outcome o;
  Dataset d = news();
  const std::vector<std::string> cols{"article", "summary"};
  std::vector<std::unique_ptr<Perturbation>> transforms;
  transforms.push_back(synonym_aug(31, 0.3));
  transforms.push_back(keyboard_aug(32, 0.1));
  transforms.push_back(fixed_suffix("aaaabbbb"));
  for (const auto& t : transforms) {
    Dataset x = t->apply(d, cols, kernels::Exec::kParallel);
    Dataset y = t->apply(d, cols, kernels::Exec::kParallel);
    Dataset z = t->apply(d, cols, kernels::Exec::kSerial);
    std::string name = t->identifier().canonical();
    o.expect(rows_to_jsonl(x) == rows_to_jsonl(y) && rows_to_jsonl(x) == rows_to_jsonl(z),
             name + " not reproducible");
    o.expect(rows_to_jsonl(x) != rows_to_jsonl(d), name + " changed nothing");
    for (std::size_t i = 0; i < d.size(); ++i) {
      o.expect(x.row(i).at("topic") == d.row(i).at("topic") && x.row(i).at("id") == d.row(i).at("id"),
               name + " touched a label on row " + std::to_string(i));
    }
  }
  o.detail = std::to_string(transforms.size()) + " transformations x " + std::to_string(d.size()) + " rows";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "metric oracle equivalence", metric_oracles},
      {2, "spearman correctness", spearman_oracle_check},
      {3, "decile partition", decile_partition},
      {4, "lead-3 positional bias", lead3_bias},
      {5, "lead-3 extractiveness", lead3_extractive},
      {6, "cache soundness and idempotence", cache_soundness},
      {7, "testbench round trip", bench_round_trip},
      {8, "report consistency", report_consistency},
      {9, "transformation determinism and label safety", transform_determinism},
  };
  int failed = 0;
  auto t0 = Clock::now();
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    bool pass = o.problems.empty();
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " [" << c.number << "] " << c.name;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << '\n';
    for (const auto& p : o.problems) std::cout << "    " << p << '\n';
    std::cout.flush();
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - static_cast<std::size_t>(failed) << "/"
            << criteria.size() << " in " << seconds_since(t0) << " s\n";
  return failed ? 1 : 0;
}
