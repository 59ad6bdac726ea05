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

#include "slicekit/identifier.hpp"

#include <cctype>

#include "slicekit/error.hpp"

namespace slicekit {
namespace {

bool is_json_number(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  if (i >= s.size()) return false;
  if (s[i] == '0') {
    ++i;
  } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  } else {
    return false;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  }
  return i == s.size();
}

bool is_bare_safe(std::string_view s) {
  if (s.empty() || s == "true" || s == "false" || s == "null" || is_json_number(s)) return false;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (!(std::isalnum(u) || c == '_' || c == '.' || c == '%' || c == '+' || c == '-' ||
          c == '/' || c == ':' || c == '@')) {
      return false;
    }
  }
  return true;
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c == '(' || c == ')' || c == ',' || c == '=' || c == '"' ||
        std::isspace(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

void skip_ws(std::string_view text, std::size_t& i) {
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
}

// Index one past the JSON string starting at text[i] == '"'.
std::size_t end_of_string(std::string_view text, std::size_t i) {
  for (++i; i < text.size(); ++i) {
    if (text[i] == '\\') {
      ++i;
    } else if (text[i] == '"') {
      return i + 1;
    }
  }
  throw ParseError("identifier: unterminated string");
}

std::size_t end_of_composite(std::string_view text, std::size_t i) {
  int depth = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '"') {
      i = end_of_string(text, i);
      continue;
    }
    if (c == '[' || c == '{') ++depth;
    if (c == ']' || c == '}') {
      if (--depth == 0) return i + 1;
    }
    ++i;
  }
  throw ParseError("identifier: unbalanced brackets");
}

}  // namespace

Identifier::Identifier(std::string name, std::vector<Param> params)
    : name_(std::move(name)), params_(std::move(params)) {
  if (!valid_name(name_)) throw ParseError("identifier: invalid name '" + name_ + "'");
  for (const auto& [key, value] : params_) {
    if (!valid_name(key)) throw ParseError("identifier: invalid parameter key '" + key + "'");
    if (value.is_object()) throw ParseError("identifier: object parameter values are not allowed");
  }
}

std::string render_param_value(const Json& value) {
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    if (is_bare_safe(s)) return s;
  }
  return canonical_json(value);
}

std::string Identifier::canonical() const {
  std::string out = name_;
  out += '(';
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (i) out += ", ";
    out += params_[i].first;
    out += '=';
    out += render_param_value(params_[i].second);
  }
  out += ')';
  return out;
}

const Json* Identifier::find(std::string_view key) const {
  for (const auto& [k, v] : params_) {
    if (k == key) return &v;
  }
  return nullptr;
}

const Json& Identifier::at(std::string_view key) const {
  if (const Json* v = find(key)) return *v;
  throw SchemaError(name_ + ": missing parameter '" + std::string(key) + "'");
}

Identifier Identifier::with(std::string key, Json value) const {
  Identifier copy = *this;
  for (auto& [k, v] : copy.params_) {
    if (k == key) {
      v = std::move(value);
      return copy;
    }
  }
  copy.params_.emplace_back(std::move(key), std::move(value));
  return copy;
}

Identifier Identifier::parse(std::string_view text) {
  std::size_t i = 0;
  skip_ws(text, i);
  std::size_t open = text.find('(', i);
  if (open == std::string_view::npos) {
    std::size_t end = text.size();
    while (end > i && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    return Identifier(std::string(text.substr(i, end - i)));
  }
  std::string name(text.substr(i, open - i));
  while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
  std::vector<Param> params;
  i = open + 1;
  skip_ws(text, i);
  if (i < text.size() && text[i] == ')') {
    ++i;
  } else {
    while (true) {
      skip_ws(text, i);
      std::size_t eq = text.find('=', i);
      if (eq == std::string_view::npos) throw ParseError("identifier: expected key=value");
      std::string key(text.substr(i, eq - i));
      while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
      i = eq + 1;
      skip_ws(text, i);
      if (i >= text.size()) throw ParseError("identifier: missing value for '" + key + "'");
      Json value;
      if (text[i] == '"' || text[i] == '[' || text[i] == '{') {
        std::size_t end = text[i] == '"' ? end_of_string(text, i) : end_of_composite(text, i);
        try {
          value = Json::parse(text.substr(i, end - i));
        } catch (const Json::exception& e) {
          throw ParseError(std::string("identifier: bad value for '") + key + "': " + e.what());
        }
        i = end;
      } else {
        std::size_t end = i;
        while (end < text.size() && text[end] != ',' && text[end] != ')') ++end;
        std::string_view token = text.substr(i, end - i);
        while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) {
          token.remove_suffix(1);
        }
        if (token == "true") {
          value = true;
        } else if (token == "false") {
          value = false;
        } else if (token == "null") {
          value = nullptr;
        } else if (is_json_number(token)) {
          value = Json::parse(token);
        } else {
          value = std::string(token);
        }
        i = end;
      }
      params.emplace_back(std::move(key), std::move(value));
      skip_ws(text, i);
      if (i >= text.size()) throw ParseError("identifier: missing ')'");
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (text[i] == ')') {
        ++i;
        break;
      }
      throw ParseError(std::string("identifier: unexpected '") + text[i] + "'");
    }
  }
  skip_ws(text, i);
  if (i != text.size()) throw ParseError("identifier: trailing characters");
  return Identifier(std::move(name), std::move(params));
}

}  // namespace slicekit
