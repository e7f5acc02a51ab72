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


#include <memory>
#include <string>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "lgg/service.hpp"
#include "support.hpp"

using namespace lgg;
using namespace lgg::testing;
using json = nlohmann::json;

namespace {

std::shared_ptr<const ServiceResources> Legal() {
  static auto res = BuildServiceResources(LoadFixture("legal"), LoadFixtureConfig("legal"));
  return res;
}

std::string Body(const std::string& text) { return json{{"text", text}}.dump(); }

}  // namespace

TEST_SUITE("service") {

TEST_CASE("requests before loading get 503") {
  ClassifyService svc;
  CHECK_FALSE(svc.loaded());
  CHECK(svc.Handle("GET", "/health", "").status == 503);
  CHECK(svc.Handle("POST", "/classify", Body("hi")).status == 503);
}

TEST_CASE("health reports the resource fingerprint and intent count") {
  ClassifyService svc;
  svc.Load(Legal());
  HttpResponse r = svc.Handle("GET", "/health", "");
  CHECK(r.status == 200);
  json j = json::parse(r.body);
  CHECK(j["status"] == "ok");
  CHECK(j["intent_count"] == 20);
  CHECK(j["resource_hash"] == LoadFixture("legal").content_hash());
}

TEST_CASE("classify returns label, score and the answer link") {
  ClassifyService svc;
  svc.Load(Legal());
  HttpResponse r = svc.Handle("POST", "/classify", Body("I was fired without notice yesterday"));
  CHECK(r.status == 200);
  CHECK(r.body ==
        R"({"label":"LABOUR-DISMISSAL","score":1.0,"answer_url":"https://example.org/answers/labour-dismissal"})");
  // Same request again: same bytes.
  CHECK(svc.Handle("POST", "/classify", Body("I was fired without notice yesterday")).body == r.body);

  HttpResponse u = svc.Handle("POST", "/classify", Body("the weather is nice"));
  CHECK(u.body == R"({"label":"unknown","score":0.0})");

  // 6 of 10 tokens covered; the request threshold overrides the default.
  std::string partial = "I was fired without notice yesterday and then it rained";
  json low = json::parse(svc.Handle("POST", "/classify", Body(partial)).body);
  CHECK(low["label"] == "LABOUR-DISMISSAL");
  json high = json::parse(
      svc.Handle("POST", "/classify", json{{"text", partial}, {"threshold", 0.9}}.dump()).body);
  CHECK(high["label"] == "unknown");
}

TEST_CASE("malformed requests get 4xx") {
  ClassifyService svc;
  svc.Load(Legal());
  CHECK(svc.Handle("POST", "/classify", "{oops").status == 400);
  CHECK(svc.Handle("POST", "/classify", R"({"txt":"a"})").status == 400);
  CHECK(svc.Handle("POST", "/classify", R"({"text":"a","extra":1})").status == 400);
  CHECK(svc.Handle("POST", "/classify", R"({"text":"a","threshold":2})").status == 400);
  CHECK(svc.Handle("POST", "/classify", R"({"text":"a","threshold":"high"})").status == 400);
  CHECK(svc.Handle("POST", "/classify", Body(std::string(10'001, 'a'))).status == 400);
  CHECK(svc.Handle("POST", "/classify", Body(std::string(10'000, 'a'))).status == 200);
  CHECK(svc.Handle("GET", "/classify", "").status == 405);
  CHECK(svc.Handle("POST", "/health", "").status == 405);
  CHECK(svc.Handle("GET", "/nowhere", "").status == 404);
}

TEST_CASE("the HTTP server answers like the handler") {
  auto svc = std::make_shared<ClassifyService>();
  HttpServer server(svc);
  int port = server.Start("127.0.0.1", 0);
  REQUIRE(port > 0);
  httplib::Client client("127.0.0.1", port);
  auto before = client.Get("/health");
  REQUIRE(before);
  CHECK(before->status == 503);

  svc->Load(Legal());
  auto health = client.Get("/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(health->get_header_value("Content-Type") == "application/json");

  std::string body = Body("someone leaked my phone number on a website how should I do");
  auto post = client.Post("/classify", body, "application/json");
  REQUIRE(post);
  CHECK(post->status == 200);
  CHECK(post->body == svc->Handle("POST", "/classify", body).body);

  auto wrong = client.Get("/classify");
  REQUIRE(wrong);
  CHECK(wrong->status == 405);
  server.Stop();
}

}  // TEST_SUITE
