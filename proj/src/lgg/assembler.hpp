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

#ifndef LGG_ASSEMBLER_HPP_
#define LGG_ASSEMBLER_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lgg/annotator.hpp"
#include "lgg/fst.hpp"
#include "lgg/pathgen.hpp"

namespace lgg {

// One intent of the taxonomy: [background] core [request].
struct IntentSpec {
  std::string label;
  std::string category;  // informational grouping, may be empty
  std::optional<std::string> background;
  std::string core;
  std::vector<std::string> requests;
  bool allow_empty_background = false;
  bool allow_empty_request = false;
  std::optional<std::string> answer_url;
};

enum class DedupPolicy { kWithinIntent, kGlobal };

struct SplitRatios {
  double train = 0.8;
  double validation = 0.1;
  double test = 0.1;
};

inline constexpr uint64_t kDefaultAllCap = 1'000'000;

struct CompositionConfig {
  std::vector<IntentSpec> intents;
  std::optional<uint64_t> quota_per_intent;  // nullopt = "all"
  uint64_t all_cap = kDefaultAllCap;
  uint64_t seed = 0;
  DedupPolicy dedup = DedupPolicy::kGlobal;
  SplitRatios split;
  double threshold = kDefaultThreshold;

  const IntentSpec* Find(std::string_view label) const;
};

// JSON rendering of the config file; see README for the schema. Throws
// Error(kConfig).
CompositionConfig ParseCompositionConfig(std::string_view json);

// Labels unique, named graphs present in `rs`. Throws Error(kConfig).
void CheckConfig(const CompositionConfig& cfg, const ResourceSet& rs);

// Synthetic root graph wiring background, core and requests. Optional parts
// get an epsilon bypass; call boxes carry reserved part markers as outputs.
Grammar CompositionGrammar(const IntentSpec& spec);

Fst ComposeIntent(const ResourceSet& rs, const IntentSpec& spec);

// Compiles every intent of `cfg` into a classifier.
Classifier BuildClassifier(const ResourceSet& rs, const CompositionConfig& cfg);

struct Provenance {
  std::optional<std::string> background;
  std::string core;
  std::optional<std::string> request;
  PathIndex path_index;
};

// Reads part markers from the outputs of a composed path.
Provenance ProvenanceFromOutputs(const std::vector<std::string>& outputs, PathIndex index);

struct DatasetRecord {
  std::string text;
  std::string intent;
  Provenance provenance;
};

struct IntentManifest {
  std::string label;
  BigInt composed_paths = 0;
  uint64_t generated = 0;
  uint64_t within_intent_duplicates = 0;
  uint64_t cross_intent_collisions = 0;
  uint64_t emitted = 0;
  uint64_t train = 0;
  uint64_t validation = 0;
  uint64_t test = 0;
};

struct Collision {
  std::string text;
  std::vector<std::string> intents;
};

inline constexpr size_t kCollisionSampleSize = 20;

struct Manifest {
  uint64_t seed = 0;
  std::string resource_hash;
  DedupPolicy dedup = DedupPolicy::kGlobal;
  std::optional<uint64_t> quota_per_intent;
  uint64_t all_cap = kDefaultAllCap;
  SplitRatios split;
  std::vector<IntentManifest> intents;  // label order
  uint64_t collision_count = 0;         // distinct colliding texts
  std::vector<Collision> collision_samples;
  uint64_t train = 0;
  uint64_t validation = 0;
  uint64_t test = 0;
  std::optional<std::string> stamp;  // only with an explicit request
};

std::string ManifestToJson(const Manifest& m);

struct Dataset {
  // Each split ordered by (intent label, path index).
  std::vector<DatasetRecord> train;
  std::vector<DatasetRecord> validation;
  std::vector<DatasetRecord> test;
  Manifest manifest;

  size_t size() const { return train.size() + validation.size() + test.size(); }
  std::vector<DatasetRecord> All() const;
};

// Output depends only on (rs, cfg); `jobs` only changes wall time.
Dataset GenerateDataset(const ResourceSet& rs, const CompositionConfig& cfg, unsigned jobs = 1);

}  // namespace lgg

#endif  // LGG_ASSEMBLER_HPP_
