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

#include "slicekit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "slicekit/error.hpp"
#include "slicekit/text.hpp"

namespace slicekit {

std::string_view to_string(RougeVariant variant) {
  switch (variant) {
    case RougeVariant::kR1: return "R1";
    case RougeVariant::kR2: return "R2";
    case RougeVariant::kRL: return "RL";
  }
  return "R1";
}

RougeVariant parse_rouge_variant(std::string_view text) {
  if (text == "R1" || text == "rouge1") return RougeVariant::kR1;
  if (text == "R2" || text == "rouge2") return RougeVariant::kR2;
  if (text == "RL" || text == "rougeL") return RougeVariant::kRL;
  throw SchemaError("unknown rouge variant '" + std::string(text) + "'");
}

NgramCounts ngram_multiset(std::span<const std::string> tokens, std::size_t n) {
  if (n == 0) throw Error("ngram_multiset: n must be at least 1");
  NgramCounts out;
  if (tokens.size() < n) return out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++out[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return out;
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

}  // namespace

RougeScores rouge(std::span<const std::string> article, std::span<const std::string> summary,
                  RougeVariant variant) {
  RougeScores s;
  s.variant = variant;
  if (variant == RougeVariant::kRL) {
    s.overlap = lcs_length(article, summary);
    s.summary_total = summary.size();
    s.article_total = article.size();
  } else {
    std::size_t n = variant == RougeVariant::kR1 ? 1 : 2;
    auto a = ngram_multiset(article, n);
    auto b = ngram_multiset(summary, n);
    for (const auto& [gram, count] : b) {
      s.summary_total += count;
      auto it = a.find(gram);
      if (it != a.end()) s.overlap += std::min(count, it->second);
    }
    for (const auto& [gram, count] : a) s.article_total += count;
  }
  s.precision = ratio(s.overlap, s.summary_total);
  s.recall = ratio(s.overlap, s.article_total);
  s.f1 = harmonic(s.precision, s.recall);
  return s;
}

double abstractiveness(std::string_view article, std::string_view summary, RougeVariant variant) {
  auto a = metric_tokens(article);
  auto s = metric_tokens(summary);
  return 1.0 - rouge(a, s, variant).precision;
}

double distillation(std::string_view article, std::string_view summary, RougeVariant variant) {
  auto a = metric_tokens(article);
  auto s = metric_tokens(summary);
  return 1.0 - rouge(a, s, variant).recall;
}

Json SentenceSimilarityMatrix::to_json() const {
  Json m = Json::array();
  for (std::size_t i = 0; i < rows; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < cols; ++j) row.push_back(at(i, j));
    m.push_back(std::move(row));
  }
  return {{"metric", metric.canonical()}, {"rows", rows}, {"cols", cols}, {"values", m}};
}

SentenceSimilarityMatrix SentenceSimilarityMatrix::from_json(const Json& json) {
  SentenceSimilarityMatrix m;
  m.metric = Identifier::parse(json.at("metric").get<std::string>());
  m.rows = json.at("rows").get<std::size_t>();
  m.cols = json.at("cols").get<std::size_t>();
  const auto& values = json.at("values");
  if (values.size() != m.rows) throw SchemaError("similarity matrix: row count mismatch");
  for (const auto& row : values) {
    if (row.size() != m.cols) throw SchemaError("similarity matrix: column count mismatch");
    for (const auto& v : row) m.values.push_back(v.get<double>());
  }
  return m;
}

MatchVector match_vector(const SentenceSimilarityMatrix& m) {
  if (m.rows == 0) throw Error("no article sentences");
  MatchVector out;
  out.indices.reserve(m.cols);
  for (std::size_t j = 0; j < m.cols; ++j) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < m.rows; ++i) {
      if (m.at(i, j) > m.at(best, j)) best = i;
    }
    out.indices.push_back(best);
  }
  return out;
}

double position(const MatchVector& match) {
  if (match.indices.empty()) throw Error("position: no summary sentences");
  double sum = 0.0;
  for (auto i : match.indices) sum += static_cast<double>(i);
  return sum / static_cast<double>(match.indices.size());
}

double dispersion(const MatchVector& match) {
  double mu = position(match);
  double sum = 0.0;
  for (auto i : match.indices) {
    double d = static_cast<double>(i) - mu;
    sum += d * d;
  }
  return sum / static_cast<double>(match.indices.size());
}

OrderScore order(const MatchVector& match) {
  if (match.indices.empty()) throw Error("order: no summary sentences");
  if (match.indices.size() < 2) return {0.0, true};
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t j = 0; j < match.indices.size(); ++j) {
    xs.push_back(static_cast<double>(match.indices[j]));
    ys.push_back(static_cast<double>(j + 1));
  }
  return {spearman(xs, ys), false};
}

double position(const SentenceSimilarityMatrix& m) { return position(match_vector(m)); }
double dispersion(const SentenceSimilarityMatrix& m) { return dispersion(match_vector(m)); }
OrderScore order(const SentenceSimilarityMatrix& m) { return order(match_vector(m)); }

std::vector<double> average_ranks(std::span<const double> xs) {
  std::vector<std::size_t> idx(xs.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j + 1 < idx.size() && xs[idx[j + 1]] == xs[idx[i]]) ++j;
    double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error("spearman: length mismatch (" + std::to_string(xs.size()) + " vs " +
                std::to_string(ys.size()) + ")");
  }
  if (xs.size() < 2) throw Error("spearman: need at least two observations");
  auto rx = average_ranks(xs);
  auto ry = average_ranks(ys);
  const double n = static_cast<double>(rx.size());
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double cov = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    double dx = rx[i] - mx;
    double dy = ry[i] - my;
    cov += dx * dy;
    vx += dx * dx;
    vy += dy * dy;
  }
  if (vx == 0.0 || vy == 0.0) return 0.0;
  double r = cov / std::sqrt(vx * vy);
  return std::clamp(r, -1.0, 1.0);
}

std::string lead3(std::string_view article) {
  auto sentences = split_sentences(article);
  std::string out;
  for (std::size_t i = 0; i < sentences.size() && i < 3; ++i) {
    if (i) out += ' ';
    out += sentences[i];
  }
  return out;
}

std::string_view to_string(SimilarityMetric metric) {
  switch (metric) {
    case SimilarityMetric::kRouge1F1: return "rouge1-f1";
    case SimilarityMetric::kRouge2F1: return "rouge2-f1";
    case SimilarityMetric::kRougeLF1: return "rougeL-f1";
  }
  return "rouge1-f1";
}

SimilarityMetric parse_similarity_metric(std::string_view text) {
  if (text == "rouge1-f1") return SimilarityMetric::kRouge1F1;
  if (text == "rouge2-f1") return SimilarityMetric::kRouge2F1;
  if (text == "rougeL-f1") return SimilarityMetric::kRougeLF1;
  throw SchemaError("unknown similarity metric '" + std::string(text) + "'");
}

SentenceSimilarityMatrix similarity_matrix(std::string_view article, std::string_view summary,
                                           SimilarityMetric metric) {
  RougeVariant variant = metric == SimilarityMetric::kRouge1F1   ? RougeVariant::kR1
                         : metric == SimilarityMetric::kRouge2F1 ? RougeVariant::kR2
                                                                 : RougeVariant::kRL;
  std::vector<std::vector<std::string>> a;
  std::vector<std::vector<std::string>> s;
  for (const auto& sent : split_sentences(article)) a.push_back(metric_tokens(sent));
  for (const auto& sent : split_sentences(summary)) s.push_back(metric_tokens(sent));
  SentenceSimilarityMatrix m;
  m.rows = a.size();
  m.cols = s.size();
  m.metric = Identifier("similarity", {{"metric", std::string(to_string(metric))}});
  m.values.resize(m.rows * m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) m.values[i * m.cols + j] = rouge(a[i], s[j], variant).f1;
  }
  return m;
}

SummaryProfile summary_profile(std::string_view article, std::string_view summary,
                               RougeVariant variant, SimilarityMetric metric) {
  SummaryProfile p;
  auto a = metric_tokens(article);
  auto s = metric_tokens(summary);
  auto r = rouge(a, s, variant);
  p.abstractiveness = 1.0 - r.precision;
  p.distillation = 1.0 - r.recall;
  auto m = similarity_matrix(article, summary, metric);
  if (m.rows > 0 && m.cols > 0) {
    auto match = match_vector(m);
    p.position = position(match);
    p.dispersion = dispersion(match);
    auto o = order(match);
    p.order = o.value;
    p.order_degenerate = o.degenerate;
  } else {
    p.order_degenerate = true;
  }
  return p;
}

namespace kernels {

std::vector<SummaryProfile> summary_profiles(std::span<const std::string> articles,
                                             std::span<const std::string> summaries,
                                             RougeVariant variant, Exec exec) {
  if (articles.size() != summaries.size()) throw Error("summary_profiles: length mismatch");
  return map_rows<SummaryProfile>(
      articles.size(), [&](std::size_t i) { return summary_profile(articles[i], summaries[i], variant); },
      exec);
}

std::vector<double> rouge1_f1_rows(std::span<const std::string> references,
                                   std::span<const std::string> predictions, Exec exec) {
  if (references.size() != predictions.size()) throw Error("rouge1_f1_rows: length mismatch");
  return map_rows<double>(
      references.size(),
      [&](std::size_t i) {
        auto ref = metric_tokens(references[i]);
        auto pred = metric_tokens(predictions[i]);
        return rouge(ref, pred, RougeVariant::kR1).f1;
      },
      exec);
}

}  // namespace kernels
}  // namespace slicekit
