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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slicekit/cache.hpp"
#include "slicekit/metrics.hpp"
#include "slicekit/text.hpp"

namespace slicekit {

// Built-in deterministic operations. They stand in for external NLP
// pipelines; anything else can be cached by writing a CachedOperation.

inline std::vector<std::string> op_tokenize(std::string_view text) { return tokenize(text); }
inline std::vector<std::string> op_split_sentences(std::string_view text) { return split_sentences(text); }
inline SentenceSimilarityMatrix op_similarity_matrix(std::string_view article, std::string_view summary,
                                                     SimilarityMetric metric = SimilarityMetric::kRouge1F1) {
  return similarity_matrix(article, summary, metric);
}

/// |fold(a) ∩ fold(b)| / |fold(b)| over unique tokens; 0 when b is empty.
double op_lexical_overlap(std::span<const std::string> tokens_a, std::span<const std::string> tokens_b);

/// Text of a text column; null reads as the empty string.
std::string text_value(const Example& example, const std::string& column);

/// `tokenize()`: tokens of every input column, columns in name order.
CachedOperation tokenize_op();
/// `split_sentences()`.
CachedOperation sentences_op();
/// `similarity_matrix(metric=..., article=..., summary=...)`.
CachedOperation similarity_matrix_op(SimilarityMetric metric, std::string article_column,
                                     std::string summary_column);
/// `lexical_overlap(a=..., b=...)`.
CachedOperation lexical_overlap_op(std::string a_column, std::string b_column);
/// `summary_metric(metric=abstractiveness|distillation|position|dispersion|order,
/// variant=R1, article=..., summary=...)`.
CachedOperation summary_metric_op(std::string metric, RougeVariant variant, std::string article_column,
                                  std::string summary_column);

/// Reconstructs a built-in operation from its canonical identifier.
CachedOperation make_cached_op(const Identifier& identifier);

}  // namespace slicekit
