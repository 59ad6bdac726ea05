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

#include "slicekit/cache.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <map>

#include "slicekit/error.hpp"
#include "slicekit/ops.hpp"
#include "support.hpp"

namespace slicekit {
namespace {

using testing::TempDir;
using testing::text_dataset;

// Upper-cases text and counts how often it ran.
CachedOperation counting_op(std::atomic<int>& calls) {
  return CachedOperation(Identifier("shout"), ColumnKind::kText,
                         [&calls](const Example& ex, std::span<const std::string> cols) {
                           ++calls;
                           std::string s = ex.at(cols[0]).get<std::string>();
                           for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
                           return Json(s);
                         });
}

std::map<std::string, std::string> snapshot(const std::filesystem::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[e.path().string()] = read_file(e.path());
  }
  return files;
}

TEST(CacheStoreTest, KeyMatchesReferenceDigest) {
  std::vector<std::string> cols{"text"};
  Fingerprint fp = fingerprint_example(Json{{"text", "a"}}, cols);
  // From tests/oracles/reference.py.
  EXPECT_EQ(CacheStore::key(Identifier("tokenize"), cols, fp),
            "668fad75601c986eda27a9bc51bf81e411a5d35a556fcd67948b2f7fe70cb865");
}

TEST(CacheStoreTest, LayoutFansOutOnKeyPrefix) {
  TempDir dir;
  CacheStore store(dir.path());
  std::string key = "668fad75601c986eda27a9bc51bf81e411a5d35a556fcd67948b2f7fe70cb865";
  EXPECT_EQ(store.path_for(key), dir.path() / "66" / "8f" / key);
  store.write(key, "[\"a\"]", "op=tokenize()\tcolumns=text\n");
  EXPECT_EQ(store.read(key), std::optional<std::string>("[\"a\"]"));
  auto meta = store.path_for(key);
  meta += ".meta";
  EXPECT_EQ(read_file(meta), "op=tokenize()\tcolumns=text\n");
}

TEST(CacheStoreTest, NeverOverwritesWithDifferentBytes) {
  TempDir dir;
  CacheStore store(dir.path());
  std::string key(64, 'a');
  store.write(key, "1", "m\n");
  EXPECT_NO_THROW(store.write(key, "1", "m\n"));
  try {
    store.write(key, "2", "m\n");
    FAIL();
  } catch (const CacheError& e) {
    EXPECT_EQ(e.kind(), CacheError::Kind::kWrite);
  }
  EXPECT_EQ(store.read(key), std::optional<std::string>("1"));
  EXPECT_EQ(store.read(std::string(64, 'b')), std::nullopt);
}

TEST(RunCachedOpTest, TokenizeAppendsColumn) {
  TempDir dir;
  CacheStore store(dir.path());
  std::vector<std::string> cols{"text"};
  Dataset out = run_cached_op(tokenize_op(), text_dataset({"a b", "c"}), cols, store);
  std::string name = "tokenize():text";
  ASSERT_TRUE(out.has_column(name));
  EXPECT_EQ(out.column(name).kind, ColumnKind::kTextSequence);
  EXPECT_EQ(out.row(0)[name], Json::array({"a", "b"}));
  EXPECT_EQ(out.row(1)[name], Json::array({"c"}));
}

TEST(RunCachedOpTest, SecondRunHitsCacheOnly) {
  TempDir dir;
  CacheStore store(dir.path());
  std::atomic<int> calls{0};
  std::vector<std::string> cols{"text"};
  Dataset d = text_dataset({"one", "two", "three", "two"});
  CacheStats first;
  Dataset a = run_cached_op(counting_op(calls), d, cols, store, &first);
  EXPECT_EQ(calls.load(), 3);  // duplicate rows share a key
  EXPECT_EQ(first.misses, 4u);
  auto before = snapshot(dir.path());
  CacheStats second;
  Dataset b = run_cached_op(counting_op(calls), d, cols, store, &second);
  EXPECT_EQ(calls.load(), 3);
  EXPECT_EQ(second.hits, 4u);
  EXPECT_EQ(second.misses, 0u);
  EXPECT_EQ(a.fingerprint(), b.fingerprint());
  EXPECT_EQ(snapshot(dir.path()), before);
}

TEST(RunCachedOpTest, SharedRowsAreNotRecomputed) {
  TempDir dir;
  CacheStore store(dir.path());
  std::atomic<int> calls{0};
  std::vector<std::string> cols{"text"};
  run_cached_op(counting_op(calls), text_dataset({"r1", "r2", "r3", "r4"}), cols, store);
  calls = 0;
  run_cached_op(counting_op(calls), text_dataset({"r3", "r4", "r5", "r6"}), cols, store);
  EXPECT_EQ(calls.load(), 2);
}

TEST(RunCachedOpTest, ApplyErrorNamesRowAndOp) {
  TempDir dir;
  CacheStore store(dir.path());
  CachedOperation bad(Identifier("explode"), ColumnKind::kScalar,
                      [](const Example& ex, std::span<const std::string>) -> Json {
                        if (ex.at("text") == "boom") throw std::runtime_error("kaboom");
                        return 1;
                      });
  std::vector<std::string> cols{"text"};
  try {
    run_cached_op(bad, text_dataset({"ok", "fine", "boom"}), cols, store);
    FAIL();
  } catch (const Error& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("row 2"), std::string::npos) << what;
    EXPECT_NE(what.find("explode()"), std::string::npos) << what;
  }
}

TEST(RunCachedOpTest, SerialAndParallelAgree) {
  TempDir d1, d2;
  std::vector<std::string> texts;
  for (int i = 0; i < 200; ++i) texts.push_back("token " + std::to_string(i) + " and more, words.");
  std::vector<std::string> cols{"text"};
  Dataset s = run_cached_op(tokenize_op(), text_dataset(texts), cols, CacheStore(d1.path()), nullptr,
                            kernels::Exec::kSerial);
  Dataset p = run_cached_op(tokenize_op(), text_dataset(texts), cols, CacheStore(d2.path()), nullptr,
                            kernels::Exec::kParallel);
  EXPECT_EQ(s.fingerprint(), p.fingerprint());
  EXPECT_EQ(snapshot(d1.path()).size(), snapshot(d2.path()).size());
}

TEST(RetrieveTest, ProcAndMissingEntries) {
  TempDir dir;
  CacheStore store(dir.path());
  std::vector<std::string> cols{"text"};
  Dataset d = text_dataset({"a b c", "d"});
  try {
    retrieve(d, cols, Identifier("tokenize"), store);
    FAIL();
  } catch (const CacheError& e) {
    EXPECT_EQ(e.kind(), CacheError::Kind::kMissing);
    std::string what = e.what();
    EXPECT_NE(what.find("tokenize()"), std::string::npos);
    EXPECT_NE(what.find("[text]"), std::string::npos);
    EXPECT_NE(what.find("row 0"), std::string::npos);
  }
  Dataset out = run_cached_op(tokenize_op(), d, cols, store);
  auto same = retrieve(d, cols, Identifier("tokenize"), store, [](const Json& v) { return v; });
  EXPECT_EQ(same, out.column_values("tokenize():text"));
  auto lengths = retrieve(d, cols, Identifier("tokenize"), store, [](const Json& v) { return Json(v.size()); });
  EXPECT_EQ(lengths, (std::vector<Json>{3, 1}));
}

TEST(LexicalOverlapTest, SpecExamples) {
  std::vector<std::string> a{"a", "b", "c"}, b{"b", "c", "d"}, sub{"B", "a"}, far{"x"}, none{};
  EXPECT_DOUBLE_EQ(op_lexical_overlap(a, b), 2.0 / 3.0);
  EXPECT_EQ(op_lexical_overlap(a, sub), 1.0);
  EXPECT_EQ(op_lexical_overlap(a, far), 0.0);
  EXPECT_EQ(op_lexical_overlap(a, none), 0.0);
}

TEST(CachedOpsTest, RebuiltFromIdentifier) {
  for (const auto& op : {tokenize_op(), sentences_op(), lexical_overlap_op("premise", "hypothesis"),
                         similarity_matrix_op(SimilarityMetric::kRougeLF1, "article", "summary"),
                         summary_metric_op("order", RougeVariant::kR2, "article", "summary")}) {
    EXPECT_EQ(make_cached_op(op.identifier()).identifier(), op.identifier());
  }
  EXPECT_THROW(make_cached_op(Identifier("nope")), Error);
}

}  // namespace
}  // namespace slicekit
