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

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "slicekit/workspace.hpp"

namespace httplib {
class Server;
}

namespace slicekit {

enum class JobStatus { kQueued, kRunning, kDone, kFailed };
std::string_view to_string(JobStatus status);

struct JobRecord {
  std::string id;
  std::string kind;  // evaluate | slice-build
  JobStatus status = JobStatus::kQueued;
  std::string report_id;
  std::string error;

  bool terminal() const { return status == JobStatus::kDone || status == JobStatus::kFailed; }
  Json to_json() const;
};

/// HTTP front end over a Workspace. Evaluations run as background jobs.
class Service {
 public:
  explicit Service(Workspace& workspace);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds the listening socket; port 0 picks a free port. Throws when the
  /// port is taken.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Call after bind().
  void run();
  void stop();
  /// Blocks until every submitted job has reached a terminal state.
  void wait_for_jobs();

  JobRecord job(const std::string& id) const;

 private:
  void routes();
  std::string submit_evaluate(EvalRequest request);
  void update(const JobRecord& record);

  Workspace& ws_;
  std::unique_ptr<httplib::Server> server_;
  mutable std::mutex mutex_;
  std::map<std::string, JobRecord> jobs_;
  std::vector<std::thread> workers_;
  std::size_t next_job_ = 1;
};

}  // namespace slicekit
