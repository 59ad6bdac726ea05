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
#include <string>
#include <string_view>
#include <vector>

namespace slicekit {

/// Unicode NFC normalisation of UTF-8 text.
std::string nfc(std::string_view text);

/// Full Unicode case folding.
std::string casefold(std::string_view text);

struct TokenSpan {
  std::string text;
  std::size_t offset = 0;  // byte offset into the NFC-normalised input
};

/// Whitespace tokenizer. Input is NFC-normalised, split on maximal whitespace
/// runs, then each punctuation code point (general category P) at the start or
/// end of a chunk becomes its own token. Case is preserved.
std::vector<std::string> tokenize(std::string_view text);
std::vector<TokenSpan> tokenize_spans(std::string_view normalized);

/// Splits after '.', '!' or '?' when followed by whitespace and an uppercase
/// letter, or by the end of the text. Sentences are trimmed; none is empty.
std::vector<std::string> split_sentences(std::string_view text);

/// True when every code point of `token` is punctuation.
bool is_punctuation(std::string_view token);

/// Tokens used by the overlap metrics: tokenized, case folded, with
/// punctuation-only tokens removed.
std::vector<std::string> metric_tokens(std::string_view text);

/// Decodes UTF-8 into code points; invalid sequences become U+FFFD.
std::u32string to_utf32(std::string_view text);
std::string to_utf8(std::u32string_view text);

std::string trim(std::string_view text);

}  // namespace slicekit
