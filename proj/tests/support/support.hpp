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

// Test-only helpers shared by the unit tests and the acceptance binary.

#ifndef LGG_TESTS_SUPPORT_SUPPORT_HPP_
#define LGG_TESTS_SUPPORT_SUPPORT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "lgg/assembler.hpp"
#include "lgg/grammar.hpp"

namespace lgg::testing {

// Every Start-to-End path of grammar `root`, found by walking the source
// graphs directly (no compilation). One entry per path, in no particular
// order; all-epsilon root paths are left out, matching the default policy.
std::vector<TokenString> NaivePaths(const ResourceSet& rs, const std::string& root);

// Joins tokens with single spaces; glue tokens attach to the previous one.
std::string NaiveRender(const TokenString& tokens);

// A small random resource set: layered DAG grammars G0..Gn-1 where Gi may
// call Gj for j < i, a few lexicons, epsilon boxes, empty alternatives,
// glue tokens and outputs. The root is the last grammar.
struct RandomResources {
  ResourceSet rs;
  std::string root;
  std::vector<std::string> sources;  // .lgg text of every grammar
};
RandomResources MakeRandomResources(uint64_t seed);

// Resource set shaped like the production legal resource: 4 background
// graphs of 97,290 paths, 20 core graphs of 1,728 paths and two request
// graphs of 1,109 and 766 paths, plus the matching 20-intent config.
struct ScaleFixture {
  ResourceSet rs;
  CompositionConfig config;
};
ScaleFixture MakeScaleFixture();

// Loads one of the fixtures under tests/fixtures.
ResourceSet LoadFixture(const std::string& name);
CompositionConfig LoadFixtureConfig(const std::string& name);
std::string FixtureDir(const std::string& name);

}  // namespace lgg::testing

#endif  // LGG_TESTS_SUPPORT_SUPPORT_HPP_
