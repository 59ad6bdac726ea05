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

#include "slicekit/slice.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "slicekit/error.hpp"

namespace slicekit {

std::string_view to_string(SliceCategory category) {
  switch (category) {
    case SliceCategory::kSubpopulation: return "subpopulation";
    case SliceCategory::kTransformation: return "transformation";
    case SliceCategory::kAttack: return "attack";
    case SliceCategory::kEvalSet: return "evalset";
  }
  return "evalset";
}

SliceCategory parse_slice_category(std::string_view text) {
  if (text == "subpopulation") return SliceCategory::kSubpopulation;
  if (text == "transformation") return SliceCategory::kTransformation;
  if (text == "attack") return SliceCategory::kAttack;
  if (text == "evalset") return SliceCategory::kEvalSet;
  throw SchemaError("unknown slice category '" + std::string(text) + "'");
}

Provenance Provenance::then(Identifier step) const {
  Provenance p = *this;
  p.steps.push_back(std::move(step));
  return p;
}

Json Provenance::to_json() const {
  Json steps_json = Json::array();
  for (const auto& s : steps) steps_json.push_back(s.canonical());
  return {{"source", source.canonical()}, {"source_fingerprint", source_fingerprint}, {"steps", steps_json}};
}

Provenance Provenance::from_json(const Json& json) {
  Provenance p;
  p.source = Identifier::parse(json.at("source").get<std::string>());
  p.source_fingerprint = json.at("source_fingerprint").get<std::string>();
  for (const auto& s : json.at("steps")) p.steps.push_back(Identifier::parse(s.get<std::string>()));
  return p;
}

Slice source_slice(const Dataset& dataset) {
  Slice s;
  s.data = dataset;
  s.category = SliceCategory::kEvalSet;
  s.lineage.source = dataset.identifier();
  s.lineage.source_fingerprint = dataset.fingerprint().hex();
  return s;
}

SliceMembership::SliceMembership(std::size_t examples, std::vector<std::string> slice_ids)
    : examples_(examples), slice_ids_(std::move(slice_ids)), bits_(examples * slice_ids_.size(), 0) {}

std::size_t SliceMembership::column_sum(std::size_t slice) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < examples_; ++i) n += at(i, slice);
  return n;
}

std::vector<std::size_t> SliceMembership::true_rows(std::size_t slice) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < examples_; ++i) {
    if (at(i, slice)) out.push_back(i);
  }
  return out;
}

namespace {

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return Json(v).dump();
}

}  // namespace

Bound Bound::absolute(double v) {
  Bound b;
  b.value = v;
  b.text = format_number(v);
  return b;
}

Bound Bound::parse(const Json& json) {
  if (json.is_number()) {
    Bound b;
    b.value = json.get<double>();
    b.text = json.dump();
    return b;
  }
  if (!json.is_string()) throw SchemaError("interval bound must be a number or a string");
  std::string s = json.get<std::string>();
  if (s == "inf" || s == "+inf" || s == "∞") return Bound::absolute(std::numeric_limits<double>::infinity());
  if (s == "-inf") return Bound::absolute(-std::numeric_limits<double>::infinity());
  if (s.empty() || s.back() != '%') {
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      Bound b = Bound::absolute(v);
      b.text = s;
      return b;
    } catch (const std::exception&) {
      throw SchemaError("bad interval bound '" + s + "'");
    }
  }
  std::string digits = s.substr(0, s.size() - 1);
  Bound b;
  b.percentile = true;
  b.text = s;
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool seen_point = false;
  bool any_digit = false;
  for (char c : digits) {
    if (c == '.' && !seen_point) {
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) throw SchemaError("bad percentile '" + s + "'");
    any_digit = true;
    if (num > std::numeric_limits<std::int64_t>::max() / 20 || den > std::numeric_limits<std::int64_t>::max() / 20) {
      throw SchemaError("percentile '" + s + "' has too many digits");
    }
    num = num * 10 + (c - '0');
    if (seen_point) den *= 10;
  }
  if (!any_digit) throw SchemaError("bad percentile '" + s + "'");
  if (num > 100 * den) throw SchemaError("percentile '" + s + "' exceeds 100%");
  b.p_numerator = num;
  b.p_denominator = den;
  b.value = static_cast<double>(num) / static_cast<double>(den);
  return b;
}

Json Bound::to_json() const {
  if (percentile) return text;
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

Interval Interval::parse(const Json& json) {
  if (!json.is_array() || json.size() != 2) throw SchemaError("interval must be a [lo, hi] pair");
  return {Bound::parse(json[0]), Bound::parse(json[1])};
}

Json Interval::to_json() const { return Json::array({lo.to_json(), hi.to_json()}); }

std::string Interval::label() const { return "(" + lo.text + "," + hi.text + ")"; }

std::vector<Interval> parse_intervals(const Json& json) {
  if (!json.is_array()) throw SchemaError("intervals must be an array");
  std::vector<Interval> out;
  for (const auto& i : json) out.push_back(Interval::parse(i));
  return out;
}

Json intervals_to_json(std::span<const Interval> intervals) {
  Json out = Json::array();
  for (const auto& i : intervals) out.push_back(i.to_json());
  return out;
}

double nearest_rank(std::span<const double> sorted, std::int64_t p_numerator, std::int64_t p_denominator) {
  if (sorted.empty()) throw Error("percentile of an empty distribution");
  using wide = __int128;
  wide n = static_cast<wide>(sorted.size());
  wide num = static_cast<wide>(p_numerator) * n;
  wide den = static_cast<wide>(p_denominator) * 100;
  wide rank = (num + den - 1) / den;
  if (rank < 1) rank = 1;
  if (rank > n) rank = n;
  return sorted[static_cast<std::size_t>(rank - 1)];
}

double resolve(const Bound& bound, std::span<const double> sorted) {
  if (!bound.percentile) return bound.value;
  return nearest_rank(sorted, bound.p_numerator, bound.p_denominator);
}

}  // namespace slicekit
