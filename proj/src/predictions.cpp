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

#include "slicekit/predictions.hpp"

#include <httplib.h>

#include <regex>
#include <thread>

#include "slicekit/error.hpp"
#include "slicekit/text.hpp"

namespace slicekit {

PredictionSet parse_predictions_jsonl(std::string_view text, std::string model_id, TaskKind kind,
                                      std::span<const std::string> input_columns) {
  PredictionSet preds(std::move(model_id), kind);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (trim(std::string(line)).empty()) continue;
    Json obj;
    try {
      obj = Json::parse(line);
    } catch (const Json::exception& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!obj.is_object() || !obj.contains("output")) {
      throw ParseError("expected an object with an \"output\" field", line_no);
    }
    std::string fp;
    if (obj.contains("fingerprint")) {
      const Json& f = obj["fingerprint"];
      if (!f.is_string() || f.get<std::string>().size() != 64) {
        throw ParseError("fingerprint must be a 64-digit hex string", line_no);
      }
      try {
        fp = Fingerprint::from_hex(f.get<std::string>()).hex();
      } catch (const std::exception&) {
        throw ParseError("fingerprint must be a 64-digit hex string", line_no);
      }
    } else if (obj.contains("input") && obj["input"].is_object()) {
      std::vector<std::string> cols(input_columns.begin(), input_columns.end());
      if (cols.empty()) {
        for (const auto& [k, v] : obj["input"].items()) cols.push_back(k);
      }
      for (const auto& c : cols) {
        if (!obj["input"].contains(c)) throw ParseError("input lacks column '" + c + "'", line_no);
      }
      fp = fingerprint_example(obj["input"], cols).hex();
    } else {
      throw ParseError("expected \"fingerprint\" or \"input\"", line_no);
    }
    preds.add(fp, obj["output"]);
  }
  return preds;
}

PredictionSet load_predictions_jsonl(const std::filesystem::path& path, std::string model_id, TaskKind kind,
                                     std::span<const std::string> input_columns) {
  return parse_predictions_jsonl(read_file(path), std::move(model_id), kind, input_columns);
}

std::string predictions_to_jsonl(const PredictionSet& preds) {
  std::string out;
  for (const auto& [fp, output] : preds.outputs()) {
    out += canonical_json(Json{{"fingerprint", fp}, {"output", output}});
    out += '\n';
  }
  return out;
}

void RemoteModelConfig::validate() const {
  if (batch_size < 1) throw Error("remote model: batch size must be at least 1");
  if (max_retries < 0) throw Error("remote model: retries must be non-negative");
  if (timeout.count() <= 0) throw Error("remote model: timeout must be positive");
}

namespace {

struct Endpoint {
  std::string base;  // scheme://host[:port]
  std::string path;
};

Endpoint split_url(const std::string& url) {
  static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, re)) throw Error("remote model: malformed URL '" + url + "'");
  return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

}  // namespace

PredictionSet fetch_predictions_remote(const RemoteModelConfig& config, const Dataset& dataset,
                                       std::span<const std::string> input_columns, std::string model_id,
                                       TaskKind kind) {
  config.validate();
  Endpoint ep = split_url(config.url);
  httplib::Client client(ep.base);
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(config.timeout);
  auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  httplib::Headers headers;
  if (config.auth_header) headers.emplace("Authorization", *config.auth_header);

  std::vector<std::string> cols(input_columns.begin(), input_columns.end());
  PredictionSet preds(std::move(model_id), kind);
  std::vector<std::size_t> failed;
  std::string last_error;
  const auto& rows = dataset.rows();
  std::size_t n_batches = (rows.size() + config.batch_size - 1) / config.batch_size;

  for (std::size_t b = 0; b < n_batches; ++b) {
    std::size_t lo = b * config.batch_size;
    std::size_t hi = std::min(rows.size(), lo + config.batch_size);
    Json examples = Json::array();
    for (std::size_t i = lo; i < hi; ++i) {
      Json ex = Json::object();
      for (const auto& c : cols) ex[c] = rows[i].at(c);
      examples.push_back(std::move(ex));
    }
    std::string body = canonical_json(Json{{"examples", examples}});

    std::optional<Json> outputs;
    for (int attempt = 0; attempt <= config.max_retries && !outputs; ++attempt) {
      if (attempt > 0) std::this_thread::sleep_for(config.backoff_base * (1 << (attempt - 1)));
      auto res = client.Post(ep.path, headers, body, "application/json");
      if (!res) {
        last_error = "batch " + std::to_string(b) + ": " + httplib::to_string(res.error());
        continue;
      }
      if (res->status != 200) {
        last_error = "batch " + std::to_string(b) + ": HTTP " + std::to_string(res->status);
        continue;
      }
      Json reply;
      try {
        reply = Json::parse(res->body);
      } catch (const Json::exception&) {
        throw ProtocolError("batch " + std::to_string(b) + ": response is not JSON");
      }
      if (!reply.is_object() || !reply.contains("outputs") || !reply["outputs"].is_array()) {
        throw ProtocolError("batch " + std::to_string(b) + ": response lacks an \"outputs\" array");
      }
      if (reply["outputs"].size() != hi - lo) {
        throw ProtocolError("batch " + std::to_string(b) + ": expected " + std::to_string(hi - lo) +
                            " outputs, got " + std::to_string(reply["outputs"].size()));
      }
      outputs = std::move(reply["outputs"]);
    }
    if (!outputs) {
      failed.push_back(b);
      continue;
    }
    for (std::size_t i = lo; i < hi; ++i) {
      preds.add(fingerprint_example(rows[i], cols).hex(), (*outputs)[i - lo]);
    }
  }
  if (!failed.empty()) {
    std::string list;
    for (std::size_t i = 0; i < failed.size(); ++i) list += (i ? "," : "") + std::to_string(failed[i]);
    throw TransportError("remote model: batches [" + list + "] failed after retries (last: " + last_error + ")");
  }
  return preds;
}

}  // namespace slicekit
