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

// Exercises the shared library through its public C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>

#include "doctest.h"
#include "lgg/lgg.h"

namespace {

const std::string kGreet = std::string(LGG_FIXTURE_ROOT) + "/greet";
const std::string kLegal = std::string(LGG_FIXTURE_ROOT) + "/legal";

std::string Take(char* s) {
  std::string out = s ? s : "";
  lgg_string_free(s);
  return out;
}

lgg_resources* Load(const std::string& dir) {
  lgg_resources* rs = nullptr;
  REQUIRE(lgg_resources_load((dir + "/grammars").c_str(), (dir + "/lexicons").c_str(), &rs) == LGG_OK);
  return rs;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::strcmp(lgg_status_name(LGG_OK), "ok") == 0);
  CHECK(std::strlen(lgg_version()) > 0);
}

TEST_CASE("errors come back as codes with a message") {
  lgg_resources* rs = nullptr;
  CHECK(lgg_resources_load("/nonexistent/g", "/nonexistent/l", &rs) != LGG_OK);
  CHECK(rs == nullptr);
  CHECK(std::strlen(lgg_last_error()) > 0);
  CHECK(lgg_resources_load(nullptr, nullptr, &rs) == LGG_E_INVALID_ARGUMENT);

  lgg_resources* greet = Load(kGreet);
  lgg_fst* fst = nullptr;
  CHECK(lgg_compile(greet, "Nope", 0, &fst) == LGG_E_INVALID_ARGUMENT);
  CHECK(fst == nullptr);
  lgg_resources_free(greet);

  lgg_config* cfg = nullptr;
  CHECK(lgg_config_parse("{\"intents\":[]}", &cfg) == LGG_E_CONFIG);
}

TEST_CASE("compile, count, enumerate, unrank and sample") {
  lgg_resources* rs = Load(kGreet);
  lgg_fst* fst = nullptr;
  REQUIRE(lgg_compile(rs, "Greet", 0, &fst) == LGG_OK);
  char* s = nullptr;
  REQUIRE(lgg_fst_count(fst, &s) == LGG_OK);
  CHECK(Take(s) == "6");

  lgg_enumerator* e = nullptr;
  REQUIRE(lgg_enumerate_open(fst, "4", nullptr, &e) == LGG_OK);
  REQUIRE(lgg_enumerate_next(e, &s) == LGG_OK);
  CHECK(Take(s) == R"({"index":"4","text":"hi there","outputs":[]})");
  REQUIRE(lgg_enumerate_next(e, &s) == LGG_OK);
  Take(s);
  CHECK(lgg_enumerate_next(e, &s) == LGG_DONE);
  CHECK(s == nullptr);
  lgg_enumerate_free(e);

  REQUIRE(lgg_unrank(fst, "0", &s) == LGG_OK);
  CHECK(Take(s) == R"({"index":"0","text":"hello world","outputs":[]})");
  CHECK(lgg_unrank(fst, "6", &s) == LGG_E_OUT_OF_RANGE);

  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(lgg_sample(fst, 20, 5, 0, &a) == LGG_OK);
  REQUIRE(lgg_sample(fst, 20, 5, 0, &b) == LGG_OK);
  CHECK(Take(a) == Take(b));
  CHECK(lgg_sample(fst, 7, 5, 1, &a) == LGG_E_OUT_OF_RANGE);

  lgg_fst_free(fst);
  lgg_resources_free(rs);
}

TEST_CASE("classification through the C API") {
  lgg_resources* rs = Load(kLegal);
  lgg_config* cfg = nullptr;
  REQUIRE(lgg_config_load((kLegal + "/intents.json").c_str(), &cfg) == LGG_OK);
  lgg_classifier* c = nullptr;
  REQUIRE(lgg_classifier_create(rs, cfg, &c) == LGG_OK);
  CHECK(lgg_classifier_size(c) == 20);
  char* out = nullptr;
  REQUIRE(lgg_classify(c, "I was fired without notice yesterday", -1.0, 0, &out) == LGG_OK);
  CHECK(Take(out) ==
        R"({"label":"LABOUR-DISMISSAL","score":1.0,"answer_url":"https://example.org/answers/labour-dismissal"})");
  CHECK(lgg_classify(c, "x", 3.0, 0, &out) == LGG_E_INVALID_ARGUMENT);
  lgg_classifier_free(c);
  lgg_config_free(cfg);
  lgg_resources_free(rs);
}

TEST_CASE("generate a dataset and read its manifest") {
  lgg_resources* rs = Load(kLegal);
  lgg_config* cfg = nullptr;
  REQUIRE(lgg_config_parse(
              R"({"intents":[{"label":"A","core":"Core_LABOUR_HOURS"},{"label":"B","core":"Core_LABOUR_INJURY"}],"quota_per_intent":10,"seed":3})",
              &cfg) == LGG_OK);
  lgg_dataset* ds = nullptr;
  REQUIRE(lgg_generate(rs, cfg, 2, nullptr, &ds) == LGG_OK);
  CHECK(lgg_dataset_size(ds) == 20);
  char* m = nullptr;
  REQUIRE(lgg_dataset_manifest(ds, &m) == LGG_OK);
  std::string manifest = Take(m);
  CHECK(manifest.find("\"seed\": 3") != std::string::npos);
  CHECK(manifest.find("stamp") == std::string::npos);
  lgg_dataset_free(ds);
  lgg_config_free(cfg);
  lgg_resources_free(rs);
}
