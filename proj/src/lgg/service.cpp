// Copyright 2026 The LGG Authors.
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

#include "lgg/service.hpp"

#include "httplib.h"
#include "json.hpp"
#include "lgg/error.hpp"

namespace lgg {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::shared_ptr<const ServiceResources> BuildServiceResources(const ResourceSet& rs,
                                                              const CompositionConfig& cfg) {
  auto res = std::make_shared<ServiceResources>();
  res->classifier = BuildClassifier(rs, cfg);
  for (const auto& spec : cfg.intents) {
    if (spec.answer_url) res->answer_urls[spec.label] = *spec.answer_url;
  }
  res->content_hash = rs.content_hash().empty() ? rs.ComputeStructuralHash() : rs.content_hash();
  res->threshold = cfg.threshold;
  return res;
}

std::string ClassifyResponseJson(const ServiceResources& res, const ClassificationResult& r) {
  ordered_json j;
  j["label"] = r.label;
  j["score"] = r.score;
  if (r.label != kUnknownLabel) {
    if (auto it = res.answer_urls.find(r.label); it != res.answer_urls.end()) {
      j["answer_url"] = it->second;
    }
  }
  return j.dump();
}

namespace {

HttpResponse ErrorResponse(int status, const std::string& msg) {
  return {status, json{{"error", msg}}.dump()};
}

}  // namespace

HttpResponse ClassifyService::Handle(std::string_view method, std::string_view path,
                                     std::string_view body) const {
  auto res = std::atomic_load(&resources_);
  if (path == "/health") {
    if (method != "GET") return ErrorResponse(405, "method not allowed");
    if (!res) return ErrorResponse(503, "resources not loaded");
    ordered_json j;
    j["status"] = "ok";
    j["resource_hash"] = res->content_hash;
    j["intent_count"] = res->classifier.size();
    return {200, j.dump()};
  }
  if (path == "/classify") {
    if (method != "POST") return ErrorResponse(405, "method not allowed");
    if (!res) return ErrorResponse(503, "resources not loaded");
    return Classify(*res, body);
  }
  return ErrorResponse(404, "not found");
}

HttpResponse ClassifyService::Classify(const ServiceResources& res, std::string_view body) const {
  json req;
  try {
    req = json::parse(body);
  } catch (const json::parse_error&) {
    return ErrorResponse(400, "body is not valid JSON");
  }
  if (!req.is_object() || !req.contains("text") || !req["text"].is_string()) {
    return ErrorResponse(400, "expected an object with a string field 'text'");
  }
  for (const auto& [key, value] : req.items()) {
    if (key != "text" && key != "threshold") return ErrorResponse(400, "unknown field '" + key + "'");
  }
  const std::string text = req["text"].get<std::string>();
  if (text.size() > kMaxClassifyTextBytes) {
    return ErrorResponse(400, "text exceeds " + std::to_string(kMaxClassifyTextBytes) + " bytes");
  }
  double threshold = res.threshold;
  if (req.contains("threshold") && !req["threshold"].is_null()) {
    if (!req["threshold"].is_number()) return ErrorResponse(400, "threshold must be a number");
    threshold = req["threshold"].get<double>();
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
      return ErrorResponse(400, "threshold must lie in [0, 1]");
    }
  }
  try {
    return {200, ClassifyResponseJson(res, res.classifier.Classify(text, threshold))};
  } catch (const Error& e) {
    return ErrorResponse(400, e.what());
  }
}

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(std::shared_ptr<ClassifyService> service) : impl_(std::make_unique<Impl>()) {
  auto route = [service](const httplib::Request& req, httplib::Response& resp) {
    HttpResponse r = service->Handle(req.method, req.path, req.body);
    resp.status = r.status;
    resp.set_content(r.body, "application/json");
  };
  // Every method and path goes through Handle so that it decides between
  // 404 and 405.
  impl_->server.Get(".*", route);
  impl_->server.Post(".*", route);
  impl_->server.Put(".*", route);
  impl_->server.Patch(".*", route);
  impl_->server.Delete(".*", route);
  impl_->server.set_payload_max_length(1 << 20);
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void HttpServer::Run(const std::string& host, int port) {
  if (!impl_->server.listen(host, port)) {
    throw Error(ErrorCode::kIo, "cannot listen on " + host + ":" + std::to_string(port));
  }
}

void HttpServer::Stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace lgg
