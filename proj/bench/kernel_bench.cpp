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

// Serial vs OpenMP timings for the row kernels. Arg 0 is serial, 1 parallel.

#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>

#include "slicekit/cache.hpp"
#include "slicekit/dataset.hpp"
#include "slicekit/metrics.hpp"
#include "slicekit/ops.hpp"

namespace {

using namespace slicekit;
namespace fs = std::filesystem;

kernels::Exec exec_of(const benchmark::State& state) {
  return state.range(0) ? kernels::Exec::kParallel : kernels::Exec::kSerial;
}

const Dataset& corpus() {
  static const Dataset d = ingest_jsonl(fs::path(SLICEKIT_DATA_DIR) / "news_sample.jsonl");
  return d;
}

std::vector<std::string> column(const std::string& name) {
  std::vector<std::string> out;
  for (const auto& r : corpus().rows()) out.push_back(r.at(name));
  return out;
}

void BM_SummaryProfiles(benchmark::State& state) {
  auto articles = column("article");
  auto summaries = column("summary");
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::summary_profiles(articles, summaries, RougeVariant::kR1, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(articles.size()));
}
BENCHMARK(BM_SummaryProfiles)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Rouge1Rows(benchmark::State& state) {
  auto summaries = column("summary");
  std::vector<std::string> leads;
  for (const auto& a : column("article")) leads.push_back(lead3(a));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::rouge1_f1_rows(summaries, leads, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(summaries.size()));
}
BENCHMARK(BM_Rouge1Rows)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// Cold cache each iteration: the cost is the op plus the writes.
void BM_RunCachedOp(benchmark::State& state) {
  std::random_device rd;
  fs::path root = fs::temp_directory_path() / ("slicekit-bench-" + std::to_string(rd()));
  CacheStore store(root);
  CachedOperation op = similarity_matrix_op(SimilarityMetric::kRouge1F1, "article", "summary");
  const std::vector<std::string> cols{"article", "summary"};
  for (auto _ : state) {
    state.PauseTiming();
    store.clear();
    state.ResumeTiming();
    benchmark::DoNotOptimize(run_cached_op(op, corpus(), cols, store, nullptr, exec_of(state)));
  }
  fs::remove_all(root);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus().size()));
}
BENCHMARK(BM_RunCachedOp)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
