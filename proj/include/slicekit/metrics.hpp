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

#include "slicekit/identifier.hpp"
#include "slicekit/kernels.hpp"

namespace slicekit {

enum class RougeVariant { kR1, kR2, kRL };

std::string_view to_string(RougeVariant variant);
RougeVariant parse_rouge_variant(std::string_view text);

/// Contiguous n-token windows with multiplicities.
using NgramCounts = std::map<std::vector<std::string>, std::size_t>;
NgramCounts ngram_multiset(std::span<const std::string> tokens, std::size_t n);

/// Overlap counts are kept alongside the ratios so callers can compare
/// results exactly as rationals.
struct RougeScores {
  RougeVariant variant = RougeVariant::kR1;
  std::size_t overlap = 0;
  std::size_t summary_total = 0;  // precision denominator
  std::size_t article_total = 0;  // recall denominator
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// ROUGE of `summary` against `article`. R1/R2 use clipped n-gram counts, RL
/// uses the token-level longest common subsequence. A zero denominator yields 0.
RougeScores rouge(std::span<const std::string> article, std::span<const std::string> summary,
                  RougeVariant variant);

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

// 1 - precision and 1 - recall, over case-folded metric tokens.
double abstractiveness(std::string_view article, std::string_view summary,
                       RougeVariant variant = RougeVariant::kR1);
double distillation(std::string_view article, std::string_view summary,
                    RougeVariant variant = RougeVariant::kR1);

/// M[i][j]: similarity of article sentence i to summary sentence j.
struct SentenceSimilarityMatrix {
  std::size_t rows = 0;  // article sentences
  std::size_t cols = 0;  // summary sentences
  std::vector<double> values;  // row-major
  Identifier metric;

  double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
  Json to_json() const;
  static SentenceSimilarityMatrix from_json(const Json& json);
};

struct MatchVector {
  std::vector<std::size_t> indices;
};

/// Column-wise argmax; ties go to the lowest article index.
MatchVector match_vector(const SentenceSimilarityMatrix& m);

double position(const MatchVector& match);
/// Population variance of the matched indices.
double dispersion(const MatchVector& match);

struct OrderScore {
  double value = 0.0;
  bool degenerate = false;  // fewer than two summary sentences
};
OrderScore order(const MatchVector& match);

double position(const SentenceSimilarityMatrix& m);
double dispersion(const SentenceSimilarityMatrix& m);
OrderScore order(const SentenceSimilarityMatrix& m);

/// Average ranks, 1-based; ties share the mean of their rank range.
std::vector<double> average_ranks(std::span<const double> xs);

/// Pearson correlation of average ranks; 0 when either side is constant.
double spearman(std::span<const double> xs, std::span<const double> ys);

/// First three sentences joined by single spaces.
std::string lead3(std::string_view article);

enum class SimilarityMetric { kRouge1F1, kRouge2F1, kRougeLF1 };
std::string_view to_string(SimilarityMetric metric);
SimilarityMetric parse_similarity_metric(std::string_view text);

/// Sentence-split both texts and fill M with the chosen F1 over metric tokens.
SentenceSimilarityMatrix similarity_matrix(std::string_view article, std::string_view summary,
                                           SimilarityMetric metric = SimilarityMetric::kRouge1F1);

/// Every summary-level score at once; position/dispersion/order come from a
/// single similarity matrix.
struct SummaryProfile {
  double abstractiveness = 0.0;
  double distillation = 0.0;
  double position = 0.0;
  double dispersion = 0.0;
  double order = 0.0;
  bool order_degenerate = false;
};

SummaryProfile summary_profile(std::string_view article, std::string_view summary,
                               RougeVariant variant = RougeVariant::kR1,
                               SimilarityMetric metric = SimilarityMetric::kRouge1F1);

namespace kernels {

std::vector<SummaryProfile> summary_profiles(std::span<const std::string> articles,
                                             std::span<const std::string> summaries,
                                             RougeVariant variant, Exec exec = Exec::kParallel);

/// ROUGE-1 F1 of each prediction against its reference.
std::vector<double> rouge1_f1_rows(std::span<const std::string> references,
                                   std::span<const std::string> predictions,
                                   Exec exec = Exec::kParallel);

}  // namespace kernels
}  // namespace slicekit
