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

#ifndef LGG_SERVICE_HPP_
#define LGG_SERVICE_HPP_

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <thread>

#include "lgg/annotator.hpp"
#include "lgg/assembler.hpp"

namespace lgg {

inline constexpr size_t kMaxClassifyTextBytes = 10'000;

// Everything a classify call needs; immutable once built.
struct ServiceResources {
  Classifier classifier;
  std::map<std::string, std::string> answer_urls;  // intent -> link
  std::string content_hash;
  double threshold = kDefaultThreshold;
};

std::shared_ptr<const ServiceResources> BuildServiceResources(const ResourceSet& rs,
                                                              const CompositionConfig& cfg);

// {"label":...,"score":...[,"answer_url":...]}; shared by the HTTP endpoint
// and the CLI so both print identical values.
std::string ClassifyResponseJson(const ServiceResources& res, const ClassificationResult& r);

struct HttpResponse {
  int status = 200;
  std::string body;
};

// Transport-free request handling for POST /classify and GET /health.
class ClassifyService {
 public:
  void Load(std::shared_ptr<const ServiceResources> res) {
    std::atomic_store(&resources_, std::move(res));
  }
  bool loaded() const { return std::atomic_load(&resources_) != nullptr; }

  HttpResponse Handle(std::string_view method, std::string_view path, std::string_view body) const;

 private:
  HttpResponse Classify(const ServiceResources& res, std::string_view body) const;

  std::shared_ptr<const ServiceResources> resources_;
};

// HTTP/1.1 front end over ClassifyService.
class HttpServer {
 public:
  explicit HttpServer(std::shared_ptr<ClassifyService> service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds (port 0 picks a free port) and serves on a background thread.
  // Returns the bound port.
  int Start(const std::string& host, int port);
  // Binds and serves on the calling thread until Stop().
  void Run(const std::string& host, int port);
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
};

}  // namespace lgg

#endif  // LGG_SERVICE_HPP_
