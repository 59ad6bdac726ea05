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

#include "slicekit/service.hpp"

#include <httplib.h>

#include <cstdio>

#include "slicekit/error.hpp"

namespace slicekit {

std::string_view to_string(JobStatus status) {
  switch (status) {
    case JobStatus::kQueued: return "queued";
    case JobStatus::kRunning: return "running";
    case JobStatus::kDone: return "done";
    case JobStatus::kFailed: return "failed";
  }
  return "failed";
}

Json JobRecord::to_json() const {
  Json j{{"job_id", id}, {"kind", kind}, {"status", std::string(to_string(status))}};
  j["result"] = report_id.empty() ? Json(nullptr) : Json{{"report_id", report_id}};
  j["error"] = error.empty() ? Json(nullptr) : Json(error);
  return j;
}

namespace {

void send_json(httplib::Response& res, const Json& body, int status = 200) {
  res.status = status;
  res.set_content(canonical_json(body), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, {{"error", {{"status", status}, {"message", message}}}}, status);
}

Json parse_body(const httplib::Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("request body is not JSON: ") + e.what());
  }
}

// Maps library errors onto HTTP statuses.
template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const NotFoundError& e) {
      send_error(res, 404, e.what());
    } catch (const IntegrityError& e) {
      send_error(res, 500, e.what());
    } catch (const Error& e) {
      send_error(res, 400, e.what());
    } catch (const Json::exception& e) {
      send_error(res, 400, e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, e.what());
    }
  };
}

Json slice_summary(const Slice& s) {
  return {{"name", s.name},
          {"category", std::string(to_string(s.category))},
          {"size", s.data.size()},
          {"provenance", s.lineage.to_json()}};
}

}  // namespace

Service::Service(Workspace& workspace) : ws_(workspace), server_(std::make_unique<httplib::Server>()) {
  // httplib's default also sets SO_REUSEPORT, which lets a second server share
  // a port silently.
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof yes);
  });
  routes();
}

Service::~Service() {
  stop();
  wait_for_jobs();
}

int Service::bind(const std::string& host, int port) {
  if (port == 0) {
    int p = server_->bind_to_any_port(host);
    if (p < 0) throw Error("cannot bind " + host);
    return p;
  }
  if (!server_->bind_to_port(host, port)) {
    throw Error("cannot listen on " + host + ":" + std::to_string(port) + " (port in use?)");
  }
  return port;
}

void Service::run() { server_->listen_after_bind(); }

void Service::stop() {
  if (server_->is_running()) server_->stop();
}

void Service::wait_for_jobs() {
  std::vector<std::thread> workers;
  {
    std::lock_guard lock(mutex_);
    workers.swap(workers_);
  }
  for (auto& t : workers) t.join();
}

JobRecord Service::job(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = jobs_.find(id);
  if (it == jobs_.end()) throw NotFoundError("unknown job '" + id + "'");
  return it->second;
}

void Service::update(const JobRecord& record) {
  {
    std::lock_guard lock(mutex_);
    JobRecord& cur = jobs_[record.id];
    if (cur.terminal()) return;
    cur = record;
  }
  Json entry = record.to_json();
  entry["at"] = utc_now();
  ws_.append_job_log(entry);
}

std::string Service::submit_evaluate(EvalRequest request) {
  JobRecord rec;
  rec.kind = "evaluate";
  {
    std::lock_guard lock(mutex_);
    char buf[32];
    std::snprintf(buf, sizeof buf, "job-%06zu", next_job_++);
    rec.id = buf;
    jobs_[rec.id] = rec;
  }
  ws_.append_job_log([&] {
    Json e = rec.to_json();
    e["at"] = utc_now();
    return e;
  }());
  std::thread worker([this, rec, request = std::move(request)]() mutable {
    rec.status = JobStatus::kRunning;
    update(rec);
    try {
      rec.report_id = ws_.evaluate(request).report_id;
      rec.status = JobStatus::kDone;
    } catch (const std::exception& e) {
      rec.status = JobStatus::kFailed;
      rec.error = e.what();
    }
    update(rec);
  });
  std::lock_guard lock(mutex_);
  workers_.push_back(std::move(worker));
  return rec.id;
}

void Service::routes() {
  auto& s = *server_;
  s.set_default_headers({{"Access-Control-Allow-Origin", "*"}});

  s.Get("/api/testbenches", guarded([this](const httplib::Request&, httplib::Response& res) {
          Json out = Json::array();
          for (const auto& id : ws_.bench_ids()) {
            TestBench b = ws_.bench(id);
            out.push_back({{"id", id},
                           {"identifier", b.identifier.canonical()},
                           {"version", b.version.str()},
                           {"task", b.task.to_json()},
                           {"slices", b.slices.size()},
                           {"created_at", b.created_at}});
          }
          send_json(res, out);
        }));

  s.Get(R"(/api/testbenches/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
          std::string id = req.matches[1];
          Json m = manifest_json(ws_.bench(id), true);
          m["id"] = id;
          send_json(res, m);
        }));

  s.Post("/api/slicebuilders/run", guarded([this](const httplib::Request& req, httplib::Response& res) {
           Json body = parse_body(req);
           std::string dataset = body.at("dataset").get<std::string>();
           Identifier spec = Identifier::parse(body.at("builder").get<std::string>());
           std::vector<std::string> columns;
           if (body.contains("columns")) columns = body["columns"].get<std::vector<std::string>>();
           std::string bench = body.value("testbench", std::string());
           BuildResult r = ws_.run_builder(dataset, spec, columns, bench);
           Json slices = Json::array();
           for (const auto& sl : r.slices) slices.push_back(slice_summary(sl));
           Json out{{"slices", slices}, {"testbench", nullptr}};
           if (!bench.empty()) out["testbench"] = {{"id", bench}, {"version", ws_.bench(bench).version.str()}};
           ws_.append_job_log({{"kind", "slice-build"},
                               {"status", "done"},
                               {"builder", spec.canonical()},
                               {"dataset", dataset},
                               {"at", utc_now()}});
           send_json(res, out);
         }));

  s.Post("/api/evaluate", guarded([this](const httplib::Request& req, httplib::Response& res) {
           Json body = parse_body(req);
           std::string bench = body.at("testbench").get<std::string>();
           TestBench b = ws_.bench(bench);
           EvalRequest request = EvalRequest::from_json(body, b.task.inputs);
           std::string id = submit_evaluate(std::move(request));
           send_json(res, {{"job_id", id}, {"status", "queued"}}, 202);
         }));

  s.Get(R"(/api/jobs/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
          send_json(res, job(req.matches[1]).to_json());
        }));

  s.Get(R"(/api/reports/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
          res.set_content(ws_.report_json(req.matches[1]), "application/json");
        }));

  s.Get(R"(/api/reports/([^/]+)/latex)", guarded([this](const httplib::Request& req, httplib::Response& res) {
          res.set_content(emit_latex(ws_.report(req.matches[1])), "application/x-tex");
        }));

  s.Get(R"(/api/reports/([^/]+)/diff/([^/]+))",
        guarded([this](const httplib::Request& req, httplib::Response& res) {
          std::string a = req.matches[1];
          std::string b = req.matches[2];
          if (!req.has_param("metric")) throw SchemaError("diff needs a metric parameter");
          std::string metric = req.get_param_value("metric");
          double threshold = 0.0;
          if (req.has_param("threshold")) {
            try {
              threshold = std::stod(req.get_param_value("threshold"));
            } catch (const std::exception&) {
              throw SchemaError("threshold must be a number");
            }
          }
          auto regressions = diff(ws_.report(a), ws_.report(b), metric, threshold);
          send_json(res, {{"a", a},
                          {"b", b},
                          {"metric", metric},
                          {"threshold", threshold},
                          {"regressions", regressions_to_json(regressions)}});
        }));

  s.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (res.body.empty()) {
      send_json(res, {{"error", {{"status", res.status}, {"message", "no route for " + req.method + " " + req.path}}}},
                res.status);
    }
  });
}

}  // namespace slicekit
