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
#include <random>
#include <string>
#include <vector>

#include "slicekit/dataset.hpp"

namespace slicekit::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("slicekit-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline Dataset text_dataset(const std::vector<std::string>& texts, const std::string& column = "text") {
  std::vector<Example> rows;
  for (const auto& t : texts) rows.push_back(Json{{column, t}});
  return Dataset(Identifier("fixture"), {{column, ColumnKind::kText}}, std::move(rows));
}

// Premise/hypothesis/label rows in the shape of an NLI corpus.
inline Dataset nli_dataset() {
  std::vector<Example> rows = {
      {{"premise", "A man is playing a guitar on stage."}, {"hypothesis", "She is not playing."}, {"label", "c"}},
      {{"premise", "Two dogs run through a field."}, {"hypothesis", "Animals are outside."}, {"label", "e"}},
      {{"premise", "A woman reads a book in the park."}, {"hypothesis", "Her book is about film."}, {"label", "n"}},
      {{"premise", "Children are swimming in a lake."}, {"hypothesis", "Nobody is in the water."}, {"label", "c"}},
      {{"premise", "A chef cooks pasta in a small kitchen."}, {"hypothesis", "A person is cooking."}, {"label", "e"}},
      {{"premise", "The old car was parked near the house."}, {"hypothesis", "The car is new."}, {"label", "c"}},
      {{"premise", "A girl paints a picture of a happy cat."}, {"hypothesis", "She likes art."}, {"label", "n"}},
      {{"premise", "People wait for the train at night."}, {"hypothesis", "People are waiting."}, {"label", "e"}},
  };
  return Dataset(Identifier("dataset", {{"name", "nli"}}),
                 {{"premise", ColumnKind::kText}, {"hypothesis", ColumnKind::kText}, {"label", ColumnKind::kLabel}},
                 std::move(rows));
}

}  // namespace slicekit::testing
