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

#include "slicekit/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "slicekit/error.hpp"

namespace slicekit {
namespace {

struct CodePoint {
  UChar32 value;
  std::size_t offset;
  std::size_t length;
};

std::vector<CodePoint> decode(std::string_view text) {
  std::vector<CodePoint> out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) c = 0xFFFD;
    out.push_back({c, static_cast<std::size_t>(start), static_cast<std::size_t>(i - start)});
  }
  return out;
}

bool is_space(UChar32 c) { return u_isUWhiteSpace(c); }
bool is_punct(UChar32 c) { return u_ispunct(c); }

}  // namespace

std::string nfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normaliser unavailable");
  auto src = icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  if (norm->isNormalized(src, status) && U_SUCCESS(status)) return std::string(text);
  status = U_ZERO_ERROR;
  icu::UnicodeString dst = norm->normalize(src, status);
  if (U_FAILURE(status)) throw Error("NFC normalisation failed");
  std::string out;
  dst.toUTF8String(out);
  return out;
}

std::string casefold(std::string_view text) {
  auto s = icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  s.foldCase(U_FOLD_CASE_DEFAULT);
  std::string out;
  s.toUTF8String(out);
  return out;
}

std::vector<TokenSpan> tokenize_spans(std::string_view normalized) {
  std::vector<TokenSpan> out;
  auto cps = decode(normalized);
  auto emit = [&](std::size_t first, std::size_t last) {  // [first, last)
    std::size_t begin = cps[first].offset;
    std::size_t end = cps[last - 1].offset + cps[last - 1].length;
    out.push_back({std::string(normalized.substr(begin, end - begin)), begin});
  };
  std::size_t i = 0;
  while (i < cps.size()) {
    if (is_space(cps[i].value)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < cps.size() && !is_space(cps[j].value)) ++j;
    std::size_t lo = i;
    std::size_t hi = j;
    while (lo < hi && is_punct(cps[lo].value)) {
      emit(lo, lo + 1);
      ++lo;
    }
    std::size_t tail = hi;
    while (tail > lo && is_punct(cps[tail - 1].value)) --tail;
    if (lo < tail) emit(lo, tail);
    for (std::size_t k = tail; k < hi; ++k) emit(k, k + 1);
    i = j;
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize_spans(nfc(text))) out.push_back(std::move(t.text));
  return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  auto cps = decode(text);
  std::size_t start = 0;  // byte offset of current sentence
  auto push = [&](std::size_t end) {
    std::string s = trim(text.substr(start, end - start));
    if (!s.empty()) out.push_back(std::move(s));
    start = end;
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    UChar32 c = cps[i].value;
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t j = i + 1;
    while (j < cps.size() && is_space(cps[j].value)) ++j;
    bool boundary = j == cps.size() || (j > i + 1 && u_isupper(cps[j].value));
    if (boundary) push(cps[i].offset + cps[i].length);
  }
  push(text.size());
  return out;
}

bool is_punctuation(std::string_view token) {
  auto cps = decode(token);
  if (cps.empty()) return false;
  for (const auto& c : cps) {
    if (!is_punct(c.value)) return false;
  }
  return true;
}

std::vector<std::string> metric_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize(text)) {
    if (!is_punctuation(t)) out.push_back(casefold(t));
  }
  return out;
}

std::u32string to_utf32(std::string_view text) {
  std::u32string out;
  for (const auto& c : decode(text)) out.push_back(static_cast<char32_t>(c.value));
  return out;
}

std::string to_utf8(std::u32string_view text) {
  std::string out;
  for (char32_t c : text) {
    uint8_t buf[4];
    int32_t n = 0;
    UBool err = false;
    U8_APPEND(buf, n, 4, static_cast<UChar32>(c), err);
    if (err) continue;
    out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
  }
  return out;
}

std::string trim(std::string_view text) {
  auto cps = decode(text);
  std::size_t lo = 0;
  std::size_t hi = cps.size();
  while (lo < hi && is_space(cps[lo].value)) ++lo;
  while (hi > lo && is_space(cps[hi - 1].value)) --hi;
  if (lo == hi) return {};
  std::size_t begin = cps[lo].offset;
  std::size_t end = cps[hi - 1].offset + cps[hi - 1].length;
  return std::string(text.substr(begin, end - begin));
}

}  // namespace slicekit
