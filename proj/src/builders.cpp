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

#include "slicekit/builders.hpp"

#include <unicode/uchar.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "slicekit/error.hpp"
#include "slicekit/ops.hpp"
#include "slicekit/text.hpp"

namespace slicekit {

namespace {

Json columns_json(std::span<const std::string> columns) {
  return Json(std::vector<std::string>(columns.begin(), columns.end()));
}

std::string format_rate(double rate) { return Json(rate).dump(); }

Example restrict_to(const Example& row, std::span<const std::string> columns) {
  Example out = Json::object();
  for (const auto& c : columns) out[c] = row.at(c);
  return out;
}

std::vector<std::string> folded_tokens(std::string_view text) {
  auto tokens = tokenize(text);
  for (auto& t : tokens) t = casefold(t);
  return tokens;
}

bool contains_run(std::span<const std::string> haystack, std::span<const std::string> needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) != haystack.end();
}

void require_columns(const Dataset& data, std::span<const std::string> columns, const std::string& who) {
  if (columns.empty()) throw SchemaError(who + ": no columns given");
  for (const auto& c : columns) {
    if (!data.has_column(c)) throw SchemaError(who + ": unknown column '" + c + "'");
  }
}

BuildResult subpopulation_result(const Slice& source, std::vector<std::uint8_t> keep, const Identifier& step,
                                 const std::string& name) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i]) rows.push_back(i);
  }
  Slice slice;
  slice.data = select_rows(source.data, rows);
  slice.category = SliceCategory::kSubpopulation;
  slice.lineage = source.lineage.then(step);
  slice.name = name;
  SliceMembership membership(source.data.size(), {name});
  for (auto r : rows) membership.set(r, 0);
  return {source.data, {std::move(slice)}, std::move(membership)};
}

}  // namespace

// --- SliceBuilder ----------------------------------------------------------

BuildResult SliceBuilder::operator()(const Slice& source, std::span<const std::string> columns,
                                     const BuildContext& ctx) const {
  return build(source, columns, ctx);
}

Identifier SliceBuilder::step_for(Identifier spec, std::span<const std::string> columns) {
  return spec.with("columns", columns_json(columns));
}

std::string SliceBuilder::child_name(const Slice& source, const std::string& name) {
  if (source.lineage.steps.empty() || source.name.empty()) return name;
  return source.name + " > " + name;
}

// --- ScoreSubpopulation ----------------------------------------------------

ScoreSubpopulation::ScoreSubpopulation(Identifier spec, ScoreOpFactory score, std::vector<Interval> intervals)
    : spec_(std::move(spec)), score_(std::move(score)), intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw SchemaError(spec_.name() + ": at least one interval is required");
}

Identifier ScoreSubpopulation::identifier() const {
  return spec_.with("intervals", intervals_to_json(intervals_));
}

std::vector<double> ScoreSubpopulation::scores(const Dataset& data, std::span<const std::string> columns,
                                               const BuildContext& ctx) const {
  require_columns(data, columns, spec_.name());
  CachedOperation op = score_(columns);
  std::vector<double> out;
  if (ctx.cache) {
    Dataset scored = run_cached_op(op, data, columns, *ctx.cache, nullptr, ctx.exec);
    const std::string col = cached_column_name(op.identifier(), columns);
    out.reserve(scored.size());
    for (const auto& row : scored.rows()) {
      const Json& v = row.at(col);
      out.push_back(v.is_number() ? v.get<double>() : std::nan(""));
    }
  } else {
    auto cols = sorted_unique(columns);
    out = kernels::map_rows<double>(
        data.size(),
        [&](std::size_t i) {
          Json v;
          try {
            v = op.apply(restrict_to(data.row(i), cols), cols);
          } catch (const std::exception& e) {
            throw Error(op.identifier().canonical() + " failed on row " + std::to_string(i) + ": " + e.what());
          }
          return v.is_number() ? v.get<double>() : std::nan("");
        },
        ctx.exec);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!std::isfinite(out[i])) {
      throw Error(spec_.name() + ": non-finite score at row " + std::to_string(i));
    }
  }
  return out;
}

BuildResult ScoreSubpopulation::build(const Slice& source, std::span<const std::string> columns,
                                      const BuildContext& ctx) const {
  if (source.data.empty()) throw Error(spec_.name() + ": dataset is empty");
  auto values = scores(source.data, columns, ctx);
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());

  std::vector<std::string> names;
  std::vector<std::pair<double, double>> ranges;
  for (const auto& interval : intervals_) {
    double lo = resolve(interval.lo, sorted);
    double hi = resolve(interval.hi, sorted);
    if (lo > hi) {
      std::ostringstream msg;
      msg << spec_.name() << ": interval " << interval.label() << " resolves to [" << lo << ", " << hi
          << "] with lo > hi";
      throw SchemaError(msg.str());
    }
    ranges.emplace_back(lo, hi);
    names.push_back(child_name(source, spec_.name() + interval.label()));
  }

  BuildResult result{source.data, {}, SliceMembership(source.data.size(), names)};
  for (std::size_t j = 0; j < intervals_.size(); ++j) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] >= ranges[j].first && values[i] <= ranges[j].second) {
        rows.push_back(i);
        result.membership.set(i, j);
      }
    }
    Slice slice;
    slice.data = select_rows(source.data, rows);
    slice.category = SliceCategory::kSubpopulation;
    slice.lineage = source.lineage.then(
        step_for(spec_.with("intervals", Json::array({intervals_[j].to_json()})), columns));
    slice.name = names[j];
    result.slices.push_back(std::move(slice));
  }
  return result;
}

std::unique_ptr<ScoreSubpopulation> length_subpopulation(std::vector<Interval> intervals) {
  return std::make_unique<ScoreSubpopulation>(
      Identifier("Length"),
      [](std::span<const std::string>) {
        return CachedOperation(Identifier("token_count"), ColumnKind::kScalar,
                               [](const Example& ex, std::span<const std::string> cols) {
                                 std::size_t n = 0;
                                 for (const auto& c : cols) n += tokenize(text_value(ex, c)).size();
                                 return Json(n);
                               });
      },
      std::move(intervals));
}

std::unique_ptr<ScoreSubpopulation> lexical_overlap_subpopulation(std::vector<Interval> intervals) {
  return std::make_unique<ScoreSubpopulation>(
      Identifier("LexicalOverlap"),
      [](std::span<const std::string> cols) {
        if (cols.size() != 2) throw SchemaError("LexicalOverlap: expects exactly two columns");
        return lexical_overlap_op(cols[0], cols[1]);
      },
      std::move(intervals));
}

namespace {

const std::map<std::string, std::string>& summary_builder_names() {
  static const std::map<std::string, std::string> names = {{"abstractiveness", "Abstractiveness"},
                                                           {"distillation", "Distillation"},
                                                           {"position", "SummaryPosition"},
                                                           {"dispersion", "SummaryDispersion"},
                                                           {"order", "SummaryOrder"}};
  return names;
}

}  // namespace

std::unique_ptr<ScoreSubpopulation> summary_subpopulation(const std::string& metric,
                                                          std::vector<Interval> intervals,
                                                          RougeVariant variant) {
  auto it = summary_builder_names().find(metric);
  if (it == summary_builder_names().end()) throw SchemaError("unknown summary metric '" + metric + "'");
  Identifier spec(it->second);
  if (metric == "abstractiveness" || metric == "distillation") {
    spec = spec.with("variant", std::string(to_string(variant)));
  }
  return std::make_unique<ScoreSubpopulation>(
      spec,
      [metric, variant](std::span<const std::string> cols) {
        if (cols.size() != 2) throw SchemaError("summary metrics expect (article, summary) columns");
        return summary_metric_op(metric, variant, cols[0], cols[1]);
      },
      std::move(intervals));
}

// --- HasPhrase ---------------------------------------------------------------

HasPhrase::HasPhrase(std::vector<std::string> phrases, std::string name)
    : phrases_(std::move(phrases)), name_(std::move(name)) {
  if (phrases_.empty()) throw SchemaError(name_ + ": at least one phrase is required");
  for (const auto& p : phrases_) {
    auto tokens = folded_tokens(p);
    if (tokens.empty()) throw SchemaError(name_ + ": empty phrase");
    phrase_tokens_.push_back(std::move(tokens));
  }
}

Identifier HasPhrase::identifier() const {
  if (name_ == "HasNegation") return Identifier("HasNegation");
  return Identifier(name_, {{"phrases", Json(phrases_)}});
}

BuildResult HasPhrase::build(const Slice& source, std::span<const std::string> columns,
                             const BuildContext& ctx) const {
  require_columns(source.data, columns, name_);
  auto keep = kernels::map_rows<std::uint8_t>(
      source.data.size(),
      [&](std::size_t i) -> std::uint8_t {
        for (const auto& c : columns) {
          auto tokens = folded_tokens(text_value(source.data.row(i), c));
          for (const auto& phrase : phrase_tokens_) {
            if (contains_run(tokens, phrase)) return 1;
          }
        }
        return 0;
      },
      ctx.exec);
  std::string label = name_;
  if (name_ != "HasNegation") {
    label += "(";
    for (std::size_t i = 0; i < phrases_.size(); ++i) label += (i ? "," : "") + phrases_[i];
    label += ")";
  }
  return subpopulation_result(source, std::move(keep), step_for(identifier(), columns), child_name(source, label));
}

std::unique_ptr<HasPhrase> has_negation() { return std::make_unique<HasPhrase>(negation_words(), "HasNegation"); }

// --- PositionSubpopulation ---------------------------------------------------

PositionSubpopulation::PositionSubpopulation(std::string token, std::int64_t n)
    : token_(std::move(token)), folded_(casefold(token_)) {
  if (n < 0) throw SchemaError("Position: n must be non-negative");
  n_ = static_cast<std::size_t>(n);
}

Identifier PositionSubpopulation::identifier() const {
  return Identifier("Position", {{"token", token_}, {"n", n_}});
}

BuildResult PositionSubpopulation::build(const Slice& source, std::span<const std::string> columns,
                                         const BuildContext& ctx) const {
  require_columns(source.data, columns, "Position");
  auto keep = kernels::map_rows<std::uint8_t>(
      source.data.size(),
      [&](std::size_t i) -> std::uint8_t {
        for (const auto& c : columns) {
          auto tokens = tokenize(text_value(source.data.row(i), c));
          if (n_ < tokens.size() && casefold(tokens[n_]) == folded_) return 1;
        }
        return 0;
      },
      ctx.exec);
  return subpopulation_result(source, std::move(keep), step_for(identifier(), columns),
                              child_name(source, "Position(" + token_ + "@" + std::to_string(n_) + ")"));
}

// --- Perturbation ------------------------------------------------------------

Perturbation::Perturbation(Identifier spec, SliceCategory category, std::string display_name, std::uint64_t seed,
                           TextRewrite rewrite)
    : spec_(std::move(spec)),
      category_(category),
      display_name_(std::move(display_name)),
      seed_(seed),
      rewrite_(std::move(rewrite)) {
  if (category_ != SliceCategory::kTransformation && category_ != SliceCategory::kAttack) {
    throw SchemaError("perturbations are transformations or attacks");
  }
}

Dataset Perturbation::apply(const Dataset& data, std::span<const std::string> columns, kernels::Exec exec) const {
  require_columns(data, columns, spec_.name());
  auto cols = sorted_unique(columns);
  for (const auto& c : cols) {
    if (data.column(c).kind != ColumnKind::kText) {
      throw SchemaError(spec_.name() + ": column '" + c + "' is not a text column");
    }
  }
  auto rows = kernels::map_rows<Example>(
      data.size(),
      [&](std::size_t i) {
        const Example& row = data.row(i);
        SplitMix64 rng(seed_ ^ fingerprint_example(row, cols).low64());
        Example out = row;
        for (const auto& c : cols) {
          const Json& v = row.at(c);
          if (!v.is_string()) continue;
          bool changed = false;
          std::string text = rewrite_(v.get_ref<const std::string&>(), rng, changed);
          if (changed) out[c] = std::move(text);
        }
        return out;
      },
      exec);
  return Dataset(data.identifier(), data.columns(), std::move(rows));
}

BuildResult Perturbation::build(const Slice& source, std::span<const std::string> columns,
                                const BuildContext& ctx) const {
  std::string name = child_name(source, display_name_);
  Slice slice;
  slice.data = apply(source.data, columns, ctx.exec);
  slice.category = category_;
  slice.lineage = source.lineage.then(step_for(spec_, columns));
  slice.name = name;
  SliceMembership membership(source.data.size(), {name});
  for (std::size_t i = 0; i < source.data.size(); ++i) membership.set(i, 0);
  return {source.data, {std::move(slice)}, std::move(membership)};
}

namespace {

void check_rate(double rate, const std::string& who) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw SchemaError(who + ": rate must lie in [0, 1]");
}

std::string splice(const std::string& normalized, std::vector<std::pair<TokenSpan, std::string>> edits) {
  std::string out;
  std::size_t pos = 0;
  for (const auto& [span, replacement] : edits) {
    out.append(normalized, pos, span.offset - pos);
    out += replacement;
    pos = span.offset + span.text.size();
  }
  out.append(normalized, pos, std::string::npos);
  return out;
}

std::string match_case(const std::string& original, const std::string& replacement) {
  auto o = to_utf32(original);
  auto r = to_utf32(replacement);
  if (o.empty() || r.empty() || !u_isupper(static_cast<UChar32>(o[0]))) return replacement;
  r[0] = static_cast<char32_t>(u_toupper(static_cast<UChar32>(r[0])));
  return to_utf8(r);
}

}  // namespace

std::unique_ptr<Perturbation> synonym_aug(std::uint64_t seed, double rate, const SynonymLexicon& lexicon,
                                          const std::string& lexicon_name) {
  check_rate(rate, "SynonymAug");
  Identifier spec("SynonymAug", {{"seed", seed}, {"rate", rate}, {"lexicon", lexicon_name}});
  std::string name = "SynonymAug(" + format_rate(rate) + ",seed=" + std::to_string(seed) + ")";
  return std::make_unique<Perturbation>(
      spec, SliceCategory::kTransformation, name, seed,
      [lexicon, rate](const std::string& text, SplitMix64& rng, bool& changed) {
        std::string normalized = nfc(text);
        std::vector<std::pair<TokenSpan, std::string>> edits;
        for (auto& span : tokenize_spans(normalized)) {
          const auto* candidates = lexicon.find(casefold(span.text));
          if (!candidates) continue;
          if (rng.uniform() < rate) {
            const std::string& pick = (*candidates)[rng.below(candidates->size())];
            edits.emplace_back(span, match_case(span.text, pick));
          }
        }
        changed = !edits.empty();
        return changed ? splice(normalized, std::move(edits)) : text;
      });
}

std::unique_ptr<Perturbation> keyboard_aug(std::uint64_t seed, double rate, const KeyboardMap& keyboard) {
  check_rate(rate, "KeyboardAug");
  Identifier spec("KeyboardAug", {{"seed", seed}, {"rate", rate}});
  std::string name = "KeyboardAug(" + format_rate(rate) + ",seed=" + std::to_string(seed) + ")";
  return std::make_unique<Perturbation>(
      spec, SliceCategory::kTransformation, name, seed,
      [keyboard, rate](const std::string& text, SplitMix64& rng, bool& changed) {
        std::string normalized = nfc(text);
        std::vector<std::pair<TokenSpan, std::string>> edits;
        for (auto& span : tokenize_spans(normalized)) {
          auto cps = to_utf32(span.text);
          if (cps.size() < 3) continue;
          if (!(rng.uniform() < rate)) continue;
          std::size_t pos = 1 + static_cast<std::size_t>(rng.below(cps.size() - 2));
          auto c = static_cast<UChar32>(cps[pos]);
          const auto& near = keyboard.neighbours(static_cast<char32_t>(u_tolower(c)));
          if (near.empty()) continue;
          auto repl = static_cast<UChar32>(near[rng.below(near.size())]);
          cps[pos] = static_cast<char32_t>(u_isupper(c) ? u_toupper(repl) : repl);
          edits.emplace_back(span, to_utf8(cps));
        }
        changed = !edits.empty();
        return changed ? splice(normalized, std::move(edits)) : text;
      });
}

std::unique_ptr<Perturbation> fixed_suffix(std::string suffix) {
  if (suffix.empty()) throw SchemaError("FixedSuffix: suffix must be non-empty");
  Identifier spec("FixedSuffix", {{"suffix", suffix}});
  return std::make_unique<Perturbation>(spec, SliceCategory::kAttack, "FixedSuffix(" + suffix + ")", 0,
                                        [suffix](const std::string& text, SplitMix64&, bool& changed) {
                                          changed = true;
                                          return text + " " + suffix;
                                        });
}

std::unique_ptr<Perturbation> attack_adapter(Identifier spec, std::string display_name,
                                             std::function<std::string(const std::string&)> perturb) {
  return std::make_unique<Perturbation>(std::move(spec), SliceCategory::kAttack, std::move(display_name), 0,
                                        [perturb](const std::string& text, SplitMix64&, bool& changed) {
                                          std::string out = perturb(text);
                                          changed = out != text;
                                          return out;
                                        });
}

// --- evaluation sets ---------------------------------------------------------

Slice wrap_eval_set(const Dataset& dataset, const std::string& name, std::span<const Column> required) {
  std::vector<std::string> missing;
  for (const auto& c : required) {
    if (!dataset.has_column(c.name) || dataset.column(c.name).kind != c.kind) missing.push_back(c.name);
  }
  if (!missing.empty()) {
    std::string list;
    for (std::size_t i = 0; i < missing.size(); ++i) list += (i ? ", " : "") + missing[i];
    throw SchemaError("evaluation set '" + name + "' is missing columns: " + list);
  }
  Slice s = source_slice(dataset);
  s.category = SliceCategory::kEvalSet;
  s.lineage = s.lineage.then(Identifier("EvalSet", {{"name", name}}));
  s.name = name;
  return s;
}

// --- registry ----------------------------------------------------------------

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, ScoreOpFactory>& score_registry() {
  static std::map<std::string, ScoreOpFactory> r;
  return r;
}

std::string string_param(const Identifier& spec, std::string_view key) {
  const Json& v = spec.at(key);
  if (!v.is_string()) throw SchemaError(spec.name() + ": parameter '" + std::string(key) + "' must be a string");
  return v.get<std::string>();
}

double number_param(const Identifier& spec, std::string_view key) {
  const Json& v = spec.at(key);
  if (!v.is_number()) throw SchemaError(spec.name() + ": parameter '" + std::string(key) + "' must be a number");
  return v.get<double>();
}

std::uint64_t seed_param(const Identifier& spec) {
  const Json& v = spec.at("seed");
  if (!v.is_number_integer()) throw SchemaError(spec.name() + ": seed must be an integer");
  return v.is_number_unsigned() ? v.get<std::uint64_t>() : static_cast<std::uint64_t>(v.get<std::int64_t>());
}

}  // namespace

void register_score_builder(const std::string& name, ScoreOpFactory factory) {
  std::lock_guard lock(registry_mutex());
  score_registry()[name] = std::move(factory);
}

std::vector<std::string> spec_columns(const Identifier& spec) {
  const Json* c = spec.find("columns");
  if (!c) return {};
  if (c->is_string()) return {c->get<std::string>()};
  return c->get<std::vector<std::string>>();
}

std::unique_ptr<SliceBuilder> make_builder(const Identifier& spec) {
  const std::string& name = spec.name();
  auto intervals = [&] { return parse_intervals(spec.at("intervals")); };
  auto variant = [&] {
    const Json* v = spec.find("variant");
    return v ? parse_rouge_variant(v->get<std::string>()) : RougeVariant::kR1;
  };
  if (name == "Length") return length_subpopulation(intervals());
  if (name == "LexicalOverlap") return lexical_overlap_subpopulation(intervals());
  if (name == "Abstractiveness") return summary_subpopulation("abstractiveness", intervals(), variant());
  if (name == "Distillation") return summary_subpopulation("distillation", intervals(), variant());
  if (name == "SummaryPosition") return summary_subpopulation("position", intervals());
  if (name == "SummaryDispersion") return summary_subpopulation("dispersion", intervals());
  if (name == "SummaryOrder") return summary_subpopulation("order", intervals());
  if (name == "HasPhrase") {
    const Json& p = spec.at("phrases");
    std::vector<std::string> phrases = p.is_string() ? std::vector<std::string>{p.get<std::string>()}
                                                     : p.get<std::vector<std::string>>();
    return std::make_unique<HasPhrase>(std::move(phrases));
  }
  if (name == "HasNegation") return has_negation();
  if (name == "Position") {
    return std::make_unique<PositionSubpopulation>(string_param(spec, "token"),
                                                   static_cast<std::int64_t>(number_param(spec, "n")));
  }
  if (name == "SynonymAug") {
    const Json* lex = spec.find("lexicon");
    std::string lexicon = lex ? lex->get<std::string>() : "bundled";
    if (lexicon == "bundled") return synonym_aug(seed_param(spec), number_param(spec, "rate"));
    return synonym_aug(seed_param(spec), number_param(spec, "rate"), SynonymLexicon::load(lexicon), lexicon);
  }
  if (name == "KeyboardAug") return keyboard_aug(seed_param(spec), number_param(spec, "rate"));
  if (name == "FixedSuffix") return fixed_suffix(string_param(spec, "suffix"));

  std::lock_guard lock(registry_mutex());
  auto it = score_registry().find(name);
  if (it != score_registry().end()) {
    Identifier base(name);
    for (const auto& [k, v] : spec.params()) {
      if (k != "intervals" && k != "columns") base = base.with(k, v);
    }
    return std::make_unique<ScoreSubpopulation>(base, it->second, intervals());
  }
  throw SchemaError("unknown slice builder '" + spec.canonical() + "'");
}

Dataset replay_lineage(const Dataset& source, const Provenance& lineage, const BuildContext& ctx) {
  if (!lineage.source_fingerprint.empty() && source.fingerprint().hex() != lineage.source_fingerprint) {
    throw Error("replay: source dataset fingerprint does not match the recorded lineage");
  }
  Slice current = source_slice(source);
  for (const auto& step : lineage.steps) {
    if (step.name() == "EvalSet") continue;
    auto builder = make_builder(step);
    auto columns = spec_columns(step);
    auto result = (*builder)(current, columns, ctx);
    if (result.slices.size() != 1) {
      throw Error("replay: step " + step.canonical() + " produced " + std::to_string(result.slices.size()) +
                  " slices");
    }
    current = std::move(result.slices.front());
  }
  return current.data;
}

}  // namespace slicekit
