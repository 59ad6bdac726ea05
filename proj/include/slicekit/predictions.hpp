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

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "slicekit/report.hpp"

namespace slicekit {

/// Reads `{"fingerprint": hex, "output": v}` or `{"input": {...}, "output": v}`
/// lines. Input objects are fingerprinted over `input_columns` (all of the
/// object's keys when empty).
PredictionSet parse_predictions_jsonl(std::string_view text, std::string model_id, TaskKind kind,
                                      std::span<const std::string> input_columns = {});
PredictionSet load_predictions_jsonl(const std::filesystem::path& path, std::string model_id, TaskKind kind,
                                     std::span<const std::string> input_columns = {});
std::string predictions_to_jsonl(const PredictionSet& preds);

/// Black-box model endpoint speaking `{"examples":[...]}` -> `{"outputs":[...]}`.
struct RemoteModelConfig {
  std::string url;  // http://host:port/path
  std::size_t batch_size = 32;
  std::chrono::milliseconds timeout{30000};
  int max_retries = 2;
  std::chrono::milliseconds backoff_base{100};
  std::optional<std::string> auth_header;  // sent verbatim as Authorization

  void validate() const;
};

/// Scores every row of `dataset`. Batches are retried with exponential
/// backoff; any batch still failing aborts the whole fetch.
PredictionSet fetch_predictions_remote(const RemoteModelConfig& config, const Dataset& dataset,
                                       std::span<const std::string> input_columns, std::string model_id,
                                       TaskKind kind);

}  // namespace slicekit
