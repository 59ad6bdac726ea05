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

#include "slicekit/lexicon.hpp"

#include <cstdlib>

#include "slicekit/dataset.hpp"
#include "slicekit/error.hpp"
#include "slicekit/text.hpp"

namespace slicekit {
namespace fs = std::filesystem;

fs::path data_dir() {
  if (const char* env = std::getenv("SLICEKIT_DATA_DIR"); env && *env) return env;
  return SLICEKIT_DATA_DIR;
}

namespace {

template <class Fn>
void for_each_tsv_line(std::string_view tsv, Fn&& fn) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < tsv.size()) {
    std::size_t nl = tsv.find('\n', pos);
    if (nl == std::string_view::npos) nl = tsv.size();
    std::string_view line = tsv.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) throw ParseError("expected key<TAB>value", line_no);
    fn(line.substr(0, tab), line.substr(tab + 1), line_no);
  }
}

}  // namespace

SynonymLexicon SynonymLexicon::parse(std::string_view tsv) {
  SynonymLexicon lex;
  for_each_tsv_line(tsv, [&](std::string_view key, std::string_view value, std::size_t line_no) {
    std::vector<std::string> candidates;
    std::size_t start = 0;
    while (start <= value.size()) {
      std::size_t comma = value.find(',', start);
      if (comma == std::string_view::npos) comma = value.size();
      std::string c = trim(value.substr(start, comma - start));
      if (!c.empty()) candidates.push_back(std::move(c));
      start = comma + 1;
    }
    if (candidates.empty()) throw ParseError("synonym entry without candidates", line_no);
    lex.entries_[casefold(trim(key))] = std::move(candidates);
  });
  return lex;
}

SynonymLexicon SynonymLexicon::load(const fs::path& path) { return parse(read_file(path)); }

const SynonymLexicon& SynonymLexicon::bundled() {
  static const SynonymLexicon lex = load(data_dir() / "synonyms.tsv");
  return lex;
}

const std::vector<std::string>* SynonymLexicon::find(const std::string& folded) const {
  auto it = entries_.find(folded);
  return it == entries_.end() ? nullptr : &it->second;
}

KeyboardMap KeyboardMap::parse(std::string_view tsv) {
  KeyboardMap map;
  for_each_tsv_line(tsv, [&](std::string_view key, std::string_view value, std::size_t line_no) {
    auto k = to_utf32(key);
    if (k.size() != 1) throw ParseError("keyboard key must be a single character", line_no);
    auto v = to_utf32(trim(value));
    if (v.empty()) throw ParseError("keyboard key without neighbours", line_no);
    map.entries_[k[0]] = std::move(v);
  });
  return map;
}

KeyboardMap KeyboardMap::load(const fs::path& path) { return parse(read_file(path)); }

const KeyboardMap& KeyboardMap::bundled() {
  static const KeyboardMap map = load(data_dir() / "qwerty.tsv");
  return map;
}

const std::u32string& KeyboardMap::neighbours(char32_t key) const {
  static const std::u32string kNone;
  auto it = entries_.find(key);
  return it == entries_.end() ? kNone : it->second;
}

const std::vector<std::string>& negation_words() {
  static const std::vector<std::string> words = {"no",      "not",     "never",   "n't",     "none",
                                                 "nobody",  "nothing", "neither", "nor",     "cannot"};
  return words;
}

}  // namespace slicekit
