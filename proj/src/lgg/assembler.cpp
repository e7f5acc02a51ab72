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

#include "lgg/assembler.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <set>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "lgg/error.hpp"

namespace lgg {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

const IntentSpec* CompositionConfig::Find(std::string_view label) const {
  for (const auto& i : intents)
    if (i.label == label) return &i;
  return nullptr;
}

namespace {

[[noreturn]] void ConfigFail(const std::string& msg) { throw Error(ErrorCode::kConfig, msg); }

template <typename T>
T Get(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    ConfigFail(where + ": missing or mistyped '" + key + "'");
  }
}

void RejectUnknownKeys(const json& obj, std::initializer_list<const char*> known,
                       const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(known.begin(), known.end(), [&](const char* k) { return key == k; }) ==
        known.end()) {
      ConfigFail(where + ": unknown key '" + key + "'");
    }
  }
}

}  // namespace

CompositionConfig ParseCompositionConfig(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    ConfigFail(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) ConfigFail("config must be a JSON object");
  RejectUnknownKeys(root,
                    {"intents", "quota_per_intent", "all_cap", "seed", "dedup", "split",
                     "threshold"},
                    "config");
  CompositionConfig cfg;
  if (root.contains("quota_per_intent")) {
    const json& q = root["quota_per_intent"];
    if (q.is_string() && q.get<std::string>() == "all") {
      cfg.quota_per_intent.reset();
    } else if (q.is_number_unsigned() && q.get<uint64_t>() > 0) {
      cfg.quota_per_intent = q.get<uint64_t>();
    } else {
      ConfigFail("config: quota_per_intent must be a positive integer or \"all\"");
    }
  }
  if (root.contains("all_cap")) {
    if (!root["all_cap"].is_number_unsigned() || root["all_cap"].get<uint64_t>() == 0) {
      ConfigFail("config: all_cap must be a positive integer");
    }
    cfg.all_cap = root["all_cap"].get<uint64_t>();
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) ConfigFail("config: seed must be a non-negative integer");
    cfg.seed = root["seed"].get<uint64_t>();
  }
  if (root.contains("dedup")) {
    std::string d = Get<std::string>(root, "dedup", "config");
    if (d == "global") {
      cfg.dedup = DedupPolicy::kGlobal;
    } else if (d == "within_intent") {
      cfg.dedup = DedupPolicy::kWithinIntent;
    } else {
      ConfigFail("config: dedup must be \"global\" or \"within_intent\"");
    }
  }
  if (root.contains("split")) {
    const json& s = root["split"];
    if (!s.is_object()) ConfigFail("config: split must be an object");
    RejectUnknownKeys(s, {"train", "validation", "test"}, "config.split");
    cfg.split.train = Get<double>(s, "train", "config.split");
    cfg.split.validation = Get<double>(s, "validation", "config.split");
    cfg.split.test = Get<double>(s, "test", "config.split");
  }
  const SplitRatios& r = cfg.split;
  if (r.train < 0 || r.validation < 0 || r.test < 0 ||
      std::abs(r.train + r.validation + r.test - 1.0) > 1e-9) {
    ConfigFail("config: split ratios must be non-negative and sum to 1");
  }
  if (root.contains("threshold")) {
    cfg.threshold = Get<double>(root, "threshold", "config");
    if (!(cfg.threshold >= 0.0 && cfg.threshold <= 1.0)) {
      ConfigFail("config: threshold must lie in [0, 1]");
    }
  }
  if (!root.contains("intents") || !root["intents"].is_array() || root["intents"].empty()) {
    ConfigFail("config: 'intents' must be a non-empty array");
  }
  std::set<std::string> labels;
  for (const json& item : root["intents"]) {
    std::string where = "config.intents[" + std::to_string(cfg.intents.size()) + "]";
    if (!item.is_object()) ConfigFail(where + ": must be an object");
    RejectUnknownKeys(item,
                      {"label", "category", "background", "core", "requests",
                       "allow_empty_background", "allow_empty_request", "answer_url"},
                      where);
    IntentSpec spec;
    spec.label = Get<std::string>(item, "label", where);
    bool label_ok = !spec.label.empty() && spec.label != kUnknownLabel;
    for (unsigned char c : spec.label) {
      if (!(std::isalnum(c) || c == '_' || c == '.' || c == '-')) label_ok = false;
    }
    if (!label_ok) {
      ConfigFail(where + ": invalid label '" + spec.label + "'");
    }
    if (!labels.insert(spec.label).second) ConfigFail(where + ": duplicate label " + spec.label);
    if (item.contains("category")) spec.category = Get<std::string>(item, "category", where);
    if (item.contains("background") && !item["background"].is_null()) {
      spec.background = Get<std::string>(item, "background", where);
    }
    spec.core = Get<std::string>(item, "core", where);
    if (spec.core.empty()) ConfigFail(where + ": core graph is required");
    if (item.contains("requests")) {
      spec.requests = Get<std::vector<std::string>>(item, "requests", where);
    }
    if (item.contains("allow_empty_background")) {
      spec.allow_empty_background = Get<bool>(item, "allow_empty_background", where);
    }
    if (item.contains("allow_empty_request")) {
      spec.allow_empty_request = Get<bool>(item, "allow_empty_request", where);
    }
    if (item.contains("answer_url") && !item["answer_url"].is_null()) {
      spec.answer_url = Get<std::string>(item, "answer_url", where);
    }
    cfg.intents.push_back(std::move(spec));
  }
  return cfg;
}

void CheckConfig(const CompositionConfig& cfg, const ResourceSet& rs) {
  std::vector<std::string> missing;
  std::set<std::string> labels;
  for (const auto& spec : cfg.intents) {
    if (!labels.insert(spec.label).second) ConfigFail("duplicate intent label " + spec.label);
    auto need = [&](const std::string& g) {
      if (!rs.FindGrammar(g)) missing.push_back(spec.label + ": unknown graph " + g);
    };
    if (spec.background) need(*spec.background);
    need(spec.core);
    for (const auto& r : spec.requests) need(r);
  }
  if (!missing.empty()) {
    std::string msg = "composition config references missing graphs:";
    for (const auto& m : missing) msg += "\n  " + m;
    ConfigFail(msg);
  }
}

namespace {

std::string Marker(std::string_view part, std::string_view graph) {
  std::string m(1, kMarkerPrefix);
  m += part;
  m += '=';
  m += graph;
  return m;
}

GraphNode Node(uint32_t id, NodeKind kind, std::string ref = {},
               std::optional<std::string> output = std::nullopt) {
  GraphNode n;
  n.id = id;
  n.content.kind = kind;
  n.content.reference = std::move(ref);
  n.content.output = std::move(output);
  return n;
}

}  // namespace

Grammar CompositionGrammar(const IntentSpec& spec) {
  Grammar g(spec.label);
  g.AddNode(Node(kStartNode, NodeKind::kStart));
  g.AddNode(Node(kEndNode, NodeKind::kEnd));
  uint32_t next = 2;
  const uint32_t core = next++;
  g.AddNode(Node(core, NodeKind::kSubgraphCall, spec.core, Marker("core", spec.core)));

  if (spec.background) {
    uint32_t bg = next++;
    g.AddNode(Node(bg, NodeKind::kSubgraphCall, *spec.background,
                   Marker("background", *spec.background)));
    g.AddEdge({kStartNode, bg});
    g.AddEdge({bg, core});
    if (spec.allow_empty_background) {
      uint32_t skip = next++;
      g.AddNode(Node(skip, NodeKind::kEpsilon));
      g.AddEdge({kStartNode, skip});
      g.AddEdge({skip, core});
    }
  } else {
    g.AddEdge({kStartNode, core});
  }

  if (spec.requests.empty()) {
    g.AddEdge({core, kEndNode});
  } else {
    for (const auto& r : spec.requests) {
      uint32_t req = next++;
      g.AddNode(Node(req, NodeKind::kSubgraphCall, r, Marker("request", r)));
      g.AddEdge({core, req});
      g.AddEdge({req, kEndNode});
    }
    if (spec.allow_empty_request) {
      uint32_t skip = next++;
      g.AddNode(Node(skip, NodeKind::kEpsilon));
      g.AddEdge({core, skip});
      g.AddEdge({skip, kEndNode});
    }
  }
  return g;
}

Fst ComposeIntent(const ResourceSet& rs, const IntentSpec& spec) {
  auto need = [&](const std::string& g) {
    if (!rs.FindGrammar(g)) {
      throw Error(ErrorCode::kConfig, spec.label + ": unknown graph " + g);
    }
  };
  if (spec.background) need(*spec.background);
  need(spec.core);
  for (const auto& r : spec.requests) need(r);
  Fst fst = CompileGrammar(rs, CompositionGrammar(spec));
  fst.set_name(spec.label);
  return fst;
}

Classifier BuildClassifier(const ResourceSet& rs, const CompositionConfig& cfg) {
  CheckConfig(cfg, rs);
  Classifier c;
  for (const auto& spec : cfg.intents) {
    c.Add(spec.label, std::make_shared<const Fst>(ComposeIntent(rs, spec)));
  }
  return c;
}

Provenance ProvenanceFromOutputs(const std::vector<std::string>& outputs, PathIndex index) {
  Provenance p;
  p.path_index = std::move(index);
  for (const auto& o : outputs) {
    if (!IsPartMarker(o)) continue;
    std::string_view body(o);
    body.remove_prefix(1);
    size_t eq = body.find('=');
    if (eq == std::string_view::npos) continue;
    std::string_view part = body.substr(0, eq);
    std::string graph(body.substr(eq + 1));
    if (part == "background") {
      p.background = graph;
    } else if (part == "core") {
      p.core = graph;
    } else if (part == "request") {
      p.request = graph;
    }
  }
  return p;
}

std::vector<DatasetRecord> Dataset::All() const {
  std::vector<DatasetRecord> all;
  all.reserve(size());
  all.insert(all.end(), train.begin(), train.end());
  all.insert(all.end(), validation.begin(), validation.end());
  all.insert(all.end(), test.begin(), test.end());
  return all;
}

namespace {

struct IntentRun {
  IntentManifest manifest;
  std::vector<DatasetRecord> records;  // sorted by path index
};

IntentRun GenerateIntent(const ResourceSet& rs, const CompositionConfig& cfg,
                         const IntentSpec& spec) {
  IntentRun run;
  run.manifest.label = spec.label;
  Fst fst = ComposeIntent(rs, spec);
  PathCountTable counts = CountPaths(fst);
  const BigInt& total = counts.total();
  run.manifest.composed_paths = total;

  std::unordered_set<std::string> seen;
  auto take = [&](RenderedUtterance u) {
    ++run.manifest.generated;
    if (!seen.insert(u.text).second) {
      ++run.manifest.within_intent_duplicates;
      return;
    }
    DatasetRecord rec;
    rec.text = std::move(u.text);
    rec.intent = spec.label;
    rec.provenance = ProvenanceFromOutputs(u.outputs, std::move(u.index));
    run.records.push_back(std::move(rec));
  };

  if (!cfg.quota_per_intent && total <= cfg.all_cap) {
    Enumerator e(fst, counts);
    while (auto u = e.Next()) take(std::move(*u));
  } else {
    uint64_t target = cfg.quota_per_intent ? *cfg.quota_per_intent : cfg.all_cap;
    if (BigInt(target) > total) {
      throw Error(ErrorCode::kQuota, spec.label + ": quota " + std::to_string(target) +
                                         " exceeds the " + total.str() + " available paths");
    }
    SeededRng rng(DeriveSeed(cfg.seed, "sample:" + spec.label));
    DistinctIndexStream stream(total, rng, BigInt(target));
    while (run.records.size() < target) {
      auto idx = stream.Next();
      if (!idx) break;
      take(Unrank(fst, counts, PathIndex{*idx}));
    }
    if (run.records.size() < target) {
      throw Error(ErrorCode::kQuota, spec.label + ": only " + std::to_string(run.records.size()) +
                                         " distinct texts available for quota " +
                                         std::to_string(target));
    }
  }
  std::sort(run.records.begin(), run.records.end(), [](const auto& a, const auto& b) {
    return a.provenance.path_index < b.provenance.path_index;
  });
  return run;
}

}  // namespace

Dataset GenerateDataset(const ResourceSet& rs, const CompositionConfig& cfg, unsigned jobs) {
  CheckConfig(cfg, rs);
  std::vector<const IntentSpec*> specs;
  for (const auto& s : cfg.intents) specs.push_back(&s);
  std::sort(specs.begin(), specs.end(),
            [](const IntentSpec* a, const IntentSpec* b) { return a->label < b->label; });

  std::vector<IntentRun> runs(specs.size());
  std::vector<std::exception_ptr> failures(specs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < specs.size(); i = next++) {
      try {
        runs[i] = GenerateIntent(rs, cfg, *specs[i]);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(specs.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);

  Dataset ds;
  Manifest& m = ds.manifest;
  m.seed = cfg.seed;
  m.resource_hash = rs.content_hash().empty() ? rs.ComputeStructuralHash() : rs.content_hash();
  m.dedup = cfg.dedup;
  m.quota_per_intent = cfg.quota_per_intent;
  m.all_cap = cfg.all_cap;
  m.split = cfg.split;

  if (cfg.dedup == DedupPolicy::kGlobal) {
    std::unordered_map<std::string, std::vector<size_t>> owners;
    for (size_t i = 0; i < runs.size(); ++i) {
      for (const auto& r : runs[i].records) owners[r.text].push_back(i);
    }
    std::vector<Collision> collisions;
    for (const auto& [t, who] : owners) {
      if (who.size() < 2) continue;
      Collision c{t, {}};
      for (size_t i : who) c.intents.push_back(runs[i].manifest.label);
      collisions.push_back(std::move(c));
    }
    std::sort(collisions.begin(), collisions.end(),
              [](const Collision& a, const Collision& b) { return a.text < b.text; });
    m.collision_count = collisions.size();
    for (auto& run : runs) {
      auto& recs = run.records;
      size_t before = recs.size();
      recs.erase(std::remove_if(recs.begin(), recs.end(),
                                [&](const DatasetRecord& r) { return owners[r.text].size() > 1; }),
                 recs.end());
      run.manifest.cross_intent_collisions = before - recs.size();
    }
    if (collisions.size() > kCollisionSampleSize) collisions.resize(kCollisionSampleSize);
    m.collision_samples = std::move(collisions);
  }

  for (auto& run : runs) {
    IntentManifest& im = run.manifest;
    const size_t n = run.records.size();
    if (n == 0) {
      throw Error(ErrorCode::kQuota, im.label + ": no records left after deduplication");
    }
    im.emitted = n;
    auto part = [n](double ratio) {
      return std::min<size_t>(n, static_cast<size_t>(std::floor(static_cast<double>(n) * ratio + 1e-9)));
    };
    size_t n_train = part(cfg.split.train);
    size_t n_val = std::min(n - n_train, part(cfg.split.validation));
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    SeededRng rng(DeriveSeed(cfg.seed, "split:" + im.label));
    rng.Shuffle(order);
    // 0 = train, 1 = validation, 2 = test
    std::vector<uint8_t> bucket(n, 2);
    for (size_t k = 0; k < n_train; ++k) bucket[order[k]] = 0;
    for (size_t k = n_train; k < n_train + n_val; ++k) bucket[order[k]] = 1;
    for (size_t i = 0; i < n; ++i) {
      auto& dst = bucket[i] == 0 ? ds.train : bucket[i] == 1 ? ds.validation : ds.test;
      dst.push_back(std::move(run.records[i]));
    }
    im.train = n_train;
    im.validation = n_val;
    im.test = n - n_train - n_val;
    m.train += im.train;
    m.validation += im.validation;
    m.test += im.test;
    m.intents.push_back(std::move(im));
  }
  return ds;
}

std::string ManifestToJson(const Manifest& m) {
  ordered_json j;
  j["seed"] = m.seed;
  j["resource_hash"] = m.resource_hash;
  j["dedup"] = m.dedup == DedupPolicy::kGlobal ? "global" : "within_intent";
  if (m.quota_per_intent) {
    j["quota_per_intent"] = *m.quota_per_intent;
  } else {
    j["quota_per_intent"] = "all";
  }
  j["all_cap"] = m.all_cap;
  j["split_ratios"] = {{"train", m.split.train},
                       {"validation", m.split.validation},
                       {"test", m.split.test}};
  ordered_json intents = ordered_json::array();
  for (const auto& im : m.intents) {
    intents.push_back({{"label", im.label},
                       {"composed_paths", im.composed_paths.str()},
                       {"generated", im.generated},
                       {"within_intent_duplicates", im.within_intent_duplicates},
                       {"cross_intent_collisions", im.cross_intent_collisions},
                       {"emitted", im.emitted},
                       {"train", im.train},
                       {"validation", im.validation},
                       {"test", im.test}});
  }
  j["intents"] = std::move(intents);
  ordered_json samples = ordered_json::array();
  for (const auto& c : m.collision_samples) {
    samples.push_back({{"text", c.text}, {"intents", c.intents}});
  }
  j["collisions"] = {{"count", m.collision_count}, {"samples", std::move(samples)}};
  j["splits"] = {{"train", m.train}, {"validation", m.validation}, {"test", m.test}};
  if (m.stamp) j["stamp"] = *m.stamp;
  return j.dump(2) + "\n";
}

}  // namespace lgg
