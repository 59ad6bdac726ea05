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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slicekit/dataset.hpp"
#include "slicekit/identifier.hpp"

namespace slicekit {

/// The four evaluation idioms.
enum class SliceCategory { kSubpopulation, kTransformation, kAttack, kEvalSet };

std::string_view to_string(SliceCategory category);
SliceCategory parse_slice_category(std::string_view text);

/// Origin dataset plus the builder steps applied to it, in order.
struct Provenance {
  Identifier source;
  std::string source_fingerprint;  // hex
  std::vector<Identifier> steps;

  Provenance then(Identifier step) const;
  Json to_json() const;
  static Provenance from_json(const Json& json);
};

struct Slice {
  Dataset data;
  SliceCategory category = SliceCategory::kEvalSet;
  Provenance lineage;
  std::string name;
};

/// A dataset viewed as a slice with an empty lineage, the starting point for builders.
Slice source_slice(const Dataset& dataset);

/// Boolean matrix, one row per input example, one column per slice.
class SliceMembership {
 public:
  SliceMembership() = default;
  SliceMembership(std::size_t examples, std::vector<std::string> slice_ids);

  std::size_t examples() const { return examples_; }
  std::size_t slices() const { return slice_ids_.size(); }
  const std::vector<std::string>& slice_ids() const { return slice_ids_; }

  bool at(std::size_t example, std::size_t slice) const { return bits_[example * slices() + slice] != 0; }
  void set(std::size_t example, std::size_t slice, bool value = true) {
    bits_[example * slices() + slice] = value ? 1 : 0;
  }
  std::size_t column_sum(std::size_t slice) const;
  std::vector<std::size_t> true_rows(std::size_t slice) const;

 private:
  std::size_t examples_ = 0;
  std::vector<std::string> slice_ids_;
  std::vector<std::uint8_t> bits_;
};

/// Return value of every slice builder.
struct BuildResult {
  Dataset dataset;
  std::vector<Slice> slices;
  SliceMembership membership;
};

/// Interval endpoint: an absolute value or a percentile of the empirical scores.
struct Bound {
  bool percentile = false;
  double value = 0.0;           // absolute value, or P for display
  std::int64_t p_numerator = 0;  // P = p_numerator / p_denominator
  std::int64_t p_denominator = 1;
  std::string text;             // as written

  static Bound absolute(double v);
  static Bound parse(const Json& json);
  Json to_json() const;
};

/// Both ends inclusive.
struct Interval {
  Bound lo;
  Bound hi;

  static Interval parse(const Json& json);
  Json to_json() const;
  std::string label() const;  // "(lo,hi)"
};

std::vector<Interval> parse_intervals(const Json& json);
Json intervals_to_json(std::span<const Interval> intervals);

/// Nearest-rank percentile of ascending `sorted`: the value at 1-based index
/// ceil(P*n/100), with 0% giving the minimum.
double nearest_rank(std::span<const double> sorted, std::int64_t p_numerator, std::int64_t p_denominator);

double resolve(const Bound& bound, std::span<const double> sorted);

}  // namespace slicekit
