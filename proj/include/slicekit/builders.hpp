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

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "slicekit/cache.hpp"
#include "slicekit/lexicon.hpp"
#include "slicekit/metrics.hpp"
#include "slicekit/prng.hpp"
#include "slicekit/slice.hpp"

namespace slicekit {

struct BuildContext {
  const CacheStore* cache = nullptr;  // scores are cached here when set
  kernels::Exec exec = kernels::Exec::kParallel;
};

/// Base for everything that turns a dataset (or slice) into slices.
///
/// Each produced slice records one lineage step: the builder's canonical spec
/// narrowed to that slice (a single interval for score builders) plus a
/// `columns` parameter. Replaying that step on the same input reproduces the
/// slice.
class SliceBuilder {
 public:
  virtual ~SliceBuilder() = default;

  /// Canonical spec without the `columns` parameter.
  virtual Identifier identifier() const = 0;
  virtual SliceCategory category() const = 0;

  BuildResult operator()(const Slice& source, std::span<const std::string> columns,
                         const BuildContext& ctx = {}) const;
  BuildResult operator()(const Dataset& dataset, std::span<const std::string> columns,
                         const BuildContext& ctx = {}) const {
    return (*this)(source_slice(dataset), columns, ctx);
  }

 protected:
  virtual BuildResult build(const Slice& source, std::span<const std::string> columns,
                            const BuildContext& ctx) const = 0;

  static Identifier step_for(Identifier spec, std::span<const std::string> columns);
  static std::string child_name(const Slice& source, const std::string& name);
};

// --- subpopulations ------------------------------------------------------

/// Creates the scalar-valued cached operation scoring rows over `columns`.
using ScoreOpFactory = std::function<CachedOperation(std::span<const std::string> columns)>;

/// Scores every row once and emits one slice per interval. Percentile
/// endpoints resolve by nearest rank against the scores of the input rows;
/// bounds are inclusive and a row joins every interval holding its score.
class ScoreSubpopulation : public SliceBuilder {
 public:
  ScoreSubpopulation(Identifier spec, ScoreOpFactory score, std::vector<Interval> intervals);

  Identifier identifier() const override;
  SliceCategory category() const override { return SliceCategory::kSubpopulation; }
  const std::vector<Interval>& intervals() const { return intervals_; }

  /// Scores for each row of `data` (cached through ctx.cache when set).
  std::vector<double> scores(const Dataset& data, std::span<const std::string> columns,
                             const BuildContext& ctx) const;

 protected:
  BuildResult build(const Slice& source, std::span<const std::string> columns,
                    const BuildContext& ctx) const override;

 private:
  Identifier spec_;
  ScoreOpFactory score_;
  std::vector<Interval> intervals_;
};

std::unique_ptr<ScoreSubpopulation> length_subpopulation(std::vector<Interval> intervals);
std::unique_ptr<ScoreSubpopulation> lexical_overlap_subpopulation(std::vector<Interval> intervals);
/// `metric` is one of abstractiveness, distillation, position, dispersion, order.
/// Columns are (article, summary).
std::unique_ptr<ScoreSubpopulation> summary_subpopulation(const std::string& metric,
                                                          std::vector<Interval> intervals,
                                                          RougeVariant variant = RougeVariant::kR1);

/// Rows where any phrase occurs as a contiguous, case-folded token run of any
/// selected column.
class HasPhrase : public SliceBuilder {
 public:
  explicit HasPhrase(std::vector<std::string> phrases, std::string name = "HasPhrase");

  Identifier identifier() const override;
  SliceCategory category() const override { return SliceCategory::kSubpopulation; }

 protected:
  BuildResult build(const Slice& source, std::span<const std::string> columns,
                    const BuildContext& ctx) const override;

 private:
  std::vector<std::string> phrases_;
  std::vector<std::vector<std::string>> phrase_tokens_;
  std::string name_;
};

/// HasPhrase over the bundled negation list.
std::unique_ptr<HasPhrase> has_negation();

/// Rows whose case-folded token at index `n` equals `token`.
class PositionSubpopulation : public SliceBuilder {
 public:
  PositionSubpopulation(std::string token, std::int64_t n);

  Identifier identifier() const override;
  SliceCategory category() const override { return SliceCategory::kSubpopulation; }

 protected:
  BuildResult build(const Slice& source, std::span<const std::string> columns,
                    const BuildContext& ctx) const override;

 private:
  std::string token_;
  std::string folded_;
  std::size_t n_;
};

// --- transformations and attacks -----------------------------------------

/// Rewrites one text value. `rng` is seeded per row by
/// seed XOR low64(fingerprint of the row's selected columns), and the
/// columns are visited in name order.
using TextRewrite = std::function<std::string(const std::string& text, SplitMix64& rng, bool& changed)>;

/// Row-wise perturbation. Only the selected text columns are rewritten; all
/// other values are copied unchanged.
class Perturbation : public SliceBuilder {
 public:
  Perturbation(Identifier spec, SliceCategory category, std::string display_name, std::uint64_t seed,
               TextRewrite rewrite);

  Identifier identifier() const override { return spec_; }
  SliceCategory category() const override { return category_; }

  /// The transformed copy of `data`.
  Dataset apply(const Dataset& data, std::span<const std::string> columns, kernels::Exec exec) const;

 protected:
  BuildResult build(const Slice& source, std::span<const std::string> columns,
                    const BuildContext& ctx) const override;

 private:
  Identifier spec_;
  SliceCategory category_;
  std::string display_name_;
  std::uint64_t seed_;
  TextRewrite rewrite_;
};

/// Synonym replacement: each token with a lexicon entry is replaced with
/// probability `rate` by a uniformly drawn candidate.
std::unique_ptr<Perturbation> synonym_aug(std::uint64_t seed, double rate,
                                          const SynonymLexicon& lexicon = SynonymLexicon::bundled(),
                                          const std::string& lexicon_name = "bundled");

/// Keyboard typos: tokens of at least three characters get, with probability
/// `rate`, one interior character swapped for a QWERTY neighbour.
std::unique_ptr<Perturbation> keyboard_aug(std::uint64_t seed, double rate,
                                           const KeyboardMap& keyboard = KeyboardMap::bundled());

/// Appends " " + suffix to each selected column.
std::unique_ptr<Perturbation> fixed_suffix(std::string suffix);

/// Any pure text perturbation registered as an attack.
std::unique_ptr<Perturbation> attack_adapter(Identifier spec, std::string display_name,
                                             std::function<std::string(const std::string&)> perturb);

// --- evaluation sets -----------------------------------------------------

/// Wraps a dataset as an evalset slice after checking it carries `required`.
Slice wrap_eval_set(const Dataset& dataset, const std::string& name, std::span<const Column> required = {});

// --- registry ------------------------------------------------------------

/// Builds the builder described by a canonical spec (a `columns` parameter, if
/// present, is ignored). Knows every built-in builder plus registered scores.
std::unique_ptr<SliceBuilder> make_builder(const Identifier& spec);

/// Columns recorded in a spec's `columns` parameter.
std::vector<std::string> spec_columns(const Identifier& spec);

/// Makes `make_builder` understand `<name>(intervals=[...])`.
void register_score_builder(const std::string& name, ScoreOpFactory factory);

/// Re-executes a lineage on its source dataset and returns the slice data.
Dataset replay_lineage(const Dataset& source, const Provenance& lineage, const BuildContext& ctx = {});

}  // namespace slicekit
