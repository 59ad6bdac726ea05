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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace slicekit {

/// Directory holding the bundled lexicon files. `SLICEKIT_DATA_DIR` in the
/// environment overrides the compiled-in location.
std::filesystem::path data_dir();

/// `word<TAB>syn1,syn2,...` with case-folded keys.
class SynonymLexicon {
 public:
  static SynonymLexicon parse(std::string_view tsv);
  static SynonymLexicon load(const std::filesystem::path& path);
  static const SynonymLexicon& bundled();

  const std::vector<std::string>* find(const std::string& folded) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::vector<std::string>> entries_;
};

/// QWERTY neighbours for [a-z0-9], `char<TAB>neighbours`.
class KeyboardMap {
 public:
  static KeyboardMap parse(std::string_view tsv);
  static KeyboardMap load(const std::filesystem::path& path);
  static const KeyboardMap& bundled();

  /// Neighbours of a lowercase key, empty when unmapped.
  const std::u32string& neighbours(char32_t key) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<char32_t, std::u32string> entries_;
};

/// Fixed negation list used by HasNegation.
const std::vector<std::string>& negation_words();

}  // namespace slicekit
