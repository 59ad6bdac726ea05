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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slicekit/canonical.hpp"

namespace slicekit {

/// Name plus ordered parameters, rendered canonically as
/// `name(key1=val1, key2=val2)`. Parameter values are JSON scalars, strings or
/// arrays. Strings that cannot be mistaken for another token are written bare,
/// everything else as canonical JSON.
class Identifier {
 public:
  using Param = std::pair<std::string, Json>;

  Identifier() = default;
  explicit Identifier(std::string name, std::vector<Param> params = {});

  static Identifier parse(std::string_view text);

  const std::string& name() const { return name_; }
  const std::vector<Param>& params() const { return params_; }

  /// Value of `key`, or nullopt.
  const Json* find(std::string_view key) const;
  const Json& at(std::string_view key) const;
  bool has(std::string_view key) const { return find(key) != nullptr; }

  /// Returns a copy with `key` appended (or replaced in place when present).
  Identifier with(std::string key, Json value) const;

  std::string canonical() const;

  friend bool operator==(const Identifier& a, const Identifier& b) {
    return a.canonical() == b.canonical();
  }

 private:
  std::string name_;
  std::vector<Param> params_;
};

/// Renders a single parameter value the way `Identifier::canonical` does.
std::string render_param_value(const Json& value);

}  // namespace slicekit
