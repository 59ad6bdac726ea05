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

#include "slicekit/ops.hpp"

#include <set>

#include "slicekit/error.hpp"
#include "slicekit/text.hpp"

namespace slicekit {

double op_lexical_overlap(std::span<const std::string> tokens_a, std::span<const std::string> tokens_b) {
  std::set<std::string> a;
  std::set<std::string> b;
  for (const auto& t : tokens_a) a.insert(casefold(t));
  for (const auto& t : tokens_b) b.insert(casefold(t));
  if (b.empty()) return 0.0;
  std::size_t shared = 0;
  for (const auto& t : b) shared += a.count(t);
  return static_cast<double>(shared) / static_cast<double>(b.size());
}

std::string text_value(const Example& example, const std::string& column) {
  const Json& v = example.at(column);
  if (v.is_null()) return {};
  if (!v.is_string()) throw SchemaError("column '" + column + "' is not text");
  return v.get<std::string>();
}

namespace {

void require(std::span<const std::string> columns, const std::string& column, const std::string& op) {
  for (const auto& c : columns) {
    if (c == column) return;
  }
  throw SchemaError(op + ": column '" + column + "' is not among the input columns");
}

}  // namespace

CachedOperation tokenize_op() {
  return CachedOperation(Identifier("tokenize"), ColumnKind::kTextSequence,
                         [](const Example& ex, std::span<const std::string> cols) {
                           Json out = Json::array();
                           for (const auto& c : cols) {
                             for (auto& t : tokenize(text_value(ex, c))) out.push_back(std::move(t));
                           }
                           return out;
                         });
}

CachedOperation sentences_op() {
  return CachedOperation(Identifier("split_sentences"), ColumnKind::kTextSequence,
                         [](const Example& ex, std::span<const std::string> cols) {
                           Json out = Json::array();
                           for (const auto& c : cols) {
                             for (auto& s : split_sentences(text_value(ex, c))) out.push_back(std::move(s));
                           }
                           return out;
                         });
}

CachedOperation similarity_matrix_op(SimilarityMetric metric, std::string article_column,
                                     std::string summary_column) {
  Identifier id("similarity_matrix", {{"metric", std::string(to_string(metric))},
                                      {"article", article_column},
                                      {"summary", summary_column}});
  return CachedOperation(id, ColumnKind::kOpaque,
                         [=](const Example& ex, std::span<const std::string> cols) {
                           require(cols, article_column, "similarity_matrix");
                           require(cols, summary_column, "similarity_matrix");
                           return op_similarity_matrix(text_value(ex, article_column),
                                                       text_value(ex, summary_column), metric)
                               .to_json();
                         });
}

CachedOperation lexical_overlap_op(std::string a_column, std::string b_column) {
  Identifier id("lexical_overlap", {{"a", a_column}, {"b", b_column}});
  return CachedOperation(id, ColumnKind::kScalar, [=](const Example& ex, std::span<const std::string> cols) {
    require(cols, a_column, "lexical_overlap");
    require(cols, b_column, "lexical_overlap");
    auto a = metric_tokens(text_value(ex, a_column));
    auto b = metric_tokens(text_value(ex, b_column));
    return Json(op_lexical_overlap(a, b));
  });
}

CachedOperation summary_metric_op(std::string metric, RougeVariant variant, std::string article_column,
                                  std::string summary_column) {
  static const std::set<std::string> kKnown = {"abstractiveness", "distillation", "position", "dispersion",
                                                "order"};
  if (!kKnown.count(metric)) throw SchemaError("unknown summary metric '" + metric + "'");
  Identifier id("summary_metric", {{"metric", metric},
                                   {"variant", std::string(to_string(variant))},
                                   {"article", article_column},
                                   {"summary", summary_column}});
  return CachedOperation(id, ColumnKind::kScalar, [=](const Example& ex, std::span<const std::string> cols) {
    require(cols, article_column, "summary_metric");
    require(cols, summary_column, "summary_metric");
    std::string article = text_value(ex, article_column);
    std::string summary = text_value(ex, summary_column);
    if (metric == "abstractiveness") return Json(abstractiveness(article, summary, variant));
    if (metric == "distillation") return Json(distillation(article, summary, variant));
    auto m = similarity_matrix(article, summary);
    if (metric == "position") return Json(position(m));
    if (metric == "dispersion") return Json(dispersion(m));
    return Json(order(m).value);
  });
}

CachedOperation make_cached_op(const Identifier& id) {
  auto str = [&](std::string_view key, std::string fallback = {}) {
    const Json* v = id.find(key);
    if (!v) {
      if (fallback.empty()) throw SchemaError(id.name() + ": missing parameter '" + std::string(key) + "'");
      return fallback;
    }
    return v->is_string() ? v->get<std::string>() : v->dump();
  };
  if (id.name() == "tokenize") return tokenize_op();
  if (id.name() == "split_sentences") return sentences_op();
  if (id.name() == "similarity_matrix") {
    return similarity_matrix_op(parse_similarity_metric(str("metric", "rouge1-f1")), str("article"),
                                str("summary"));
  }
  if (id.name() == "lexical_overlap") return lexical_overlap_op(str("a"), str("b"));
  if (id.name() == "summary_metric") {
    return summary_metric_op(str("metric"), parse_rouge_variant(str("variant", "R1")), str("article"),
                             str("summary"));
  }
  throw SchemaError("unknown cached operation '" + id.canonical() + "'");
}

}  // namespace slicekit
