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


#include <set>

#include "doctest.h"
#include "lgg/error.hpp"
#include "lgg/fst.hpp"
#include "lgg/pathgen.hpp"
#include "support.hpp"

using namespace lgg;
using namespace lgg::testing;

TEST_SUITE("pathgen") {

TEST_CASE("unranking agrees with enumeration at every index") {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    RandomResources rr = MakeRandomResources(seed);
    if (NaivePaths(rr.rs, rr.root).empty()) continue;
    Fst fst = Compile(rr.rs, rr.root);
    PathCountTable counts = CountPaths(fst);
    if (counts.total() > 20000) continue;
    Enumerator e(fst, counts);
    std::set<std::vector<uint32_t>> paths;
    BigInt i = 0;
    while (auto u = e.Next()) {
      CHECK(u->index.value == i);
      RenderedUtterance r = Unrank(fst, counts, PathIndex{i});
      CHECK(r.text == u->text);
      CHECK(r.outputs == u->outputs);
      CHECK(r.choices == u->choices);
      paths.insert(u->choices);
      ++i;
    }
    CHECK(i == counts.total());
    CHECK(BigInt(paths.size()) == counts.total());
  }
}

TEST_CASE("enumeration respects a half-open index range") {
  Fst fst = Compile(LoadFixture("greet"), "Greet");
  PathCountTable counts = CountPaths(fst);
  std::vector<RenderedUtterance> mid = Enumerate(fst, counts, 2, 5);
  REQUIRE(mid.size() == 3);
  CHECK(mid[0].text == "hello friend");
  CHECK(mid[2].text == "hi there");
  CHECK(mid[2].index.str() == "4");
  CHECK(Enumerate(fst, counts, 6, 6).empty());
  CHECK_THROWS_AS(Enumerate(fst, counts, 4, 7), Error);
  CHECK_THROWS_AS(Unrank(fst, counts, PathIndex{6}), Error);
}

TEST_CASE("path indices parse as decimal big integers") {
  CHECK(ParsePathIndex("0").value == 0);
  CHECK(ParsePathIndex("1208925819614629174706176").value == (BigInt(1) << 80));
  CHECK_THROWS_AS(ParsePathIndex("-1"), Error);
  CHECK_THROWS_AS(ParsePathIndex("12a"), Error);
  CHECK_THROWS_AS(ParsePathIndex(""), Error);
}

TEST_CASE("rendering attaches glue tokens") {
  TokenString ts = ParseTokenString("이혼 ^하려면 어떻게 ^?");
  CHECK(Render(ts) == "이혼하려면 어떻게?");
  CHECK(Render(ts) == NaiveRender(ts));
}

TEST_CASE("the seeded generator is reproducible and in range") {
  SeededRng a(7), b(7), c(8);
  std::vector<uint64_t> xa, xb, xc;
  for (int i = 0; i < 100; ++i) {
    xa.push_back(a.UniformBelow(uint64_t{1000}));
    xb.push_back(b.UniformBelow(uint64_t{1000}));
    xc.push_back(c.UniformBelow(uint64_t{1000}));
  }
  CHECK(xa == xb);
  CHECK(xa != xc);
  for (uint64_t x : xa) CHECK(x < 1000);

  BigInt bound = (BigInt(1) << 70) + 3;
  SeededRng big(1);
  bool above_64 = false;
  for (int i = 0; i < 200; ++i) {
    BigInt v = big.UniformBelow(bound);
    CHECK(v >= 0);
    CHECK(v < bound);
    if (v > BigInt(UINT64_MAX)) above_64 = true;
  }
  CHECK(above_64);
}

TEST_CASE("derived seeds depend on the key") {
  CHECK(DeriveSeed(1, "a") == DeriveSeed(1, "a"));
  CHECK(DeriveSeed(1, "a") != DeriveSeed(1, "b"));
  CHECK(DeriveSeed(1, "a") != DeriveSeed(2, "a"));
}

TEST_CASE("a distinct index stream covers the range exactly once") {
  for (uint64_t total : {1, 2, 7, 100, 1000}) {
    SeededRng rng(total);
    DistinctIndexStream s(BigInt(total), rng);
    std::set<BigInt> seen;
    while (auto v = s.Next()) {
      CHECK(*v < BigInt(total));
      CHECK(seen.insert(*v).second);
    }
    CHECK(seen.size() == total);
  }
}

TEST_CASE("sampling is seeded, and distinct sampling never repeats") {
  Fst fst = Compile(LoadFixture("greet"), "Greet");
  PathCountTable counts = CountPaths(fst);
  auto a = Sample(fst, counts, 50, 11, false);
  auto b = Sample(fst, counts, 50, 11, false);
  auto c = Sample(fst, counts, 50, 12, false);
  REQUIRE(a.size() == 50);
  std::vector<std::string> ia, ib, ic;
  for (size_t i = 0; i < 50; ++i) {
    ia.push_back(a[i].index.str());
    ib.push_back(b[i].index.str());
    ic.push_back(c[i].index.str());
  }
  CHECK(ia == ib);
  CHECK(ia != ic);

  auto d = Sample(fst, counts, 6, 3, true);
  std::set<std::string> texts;
  for (const auto& u : d) texts.insert(u.text);
  CHECK(texts.size() == 6);
  CHECK_THROWS_AS(Sample(fst, counts, 7, 3, true), Error);
  CHECK_THROWS_AS(Sample(fst, counts, 0, 3, false), Error);
}

}  // TEST_SUITE
