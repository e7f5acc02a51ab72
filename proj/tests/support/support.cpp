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


#include "support.hpp"

#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "lgg/fst.hpp"

#ifndef LGG_FIXTURE_ROOT
#error "LGG_FIXTURE_ROOT must point at tests/fixtures"
#endif

namespace lgg::testing {

namespace {

using Language = std::vector<TokenString>;

class NaiveWalker {
 public:
  explicit NaiveWalker(const ResourceSet& rs) : rs_(rs) {}

  // All paths of a grammar, empty ones included: as a callee an empty path
  // is a legitimate way through.
  const Language& Paths(const std::string& name) {
    if (auto it = memo_.find(name); it != memo_.end()) return it->second;
    const Grammar* g = rs_.FindGrammar(name);
    if (!g) throw std::runtime_error("oracle: no grammar " + name);
    std::map<uint32_t, std::vector<uint32_t>> succ;
    for (const Edge& e : g->edges()) succ[e.src].push_back(e.dst);
    Language out;
    TokenString prefix;
    std::function<void(uint32_t)> walk = [&](uint32_t node) {
      if (node == kEndNode) {
        out.push_back(prefix);
        return;
      }
      for (const TokenString& piece : Local(g->FindNode(node)->content)) {
        size_t mark = prefix.size();
        prefix.insert(prefix.end(), piece.begin(), piece.end());
        for (uint32_t next : succ[node]) walk(next);
        prefix.resize(mark);
      }
    };
    walk(kStartNode);
    return memo_.emplace(name, std::move(out)).first->second;
  }

 private:
  Language Local(const NodeContent& c) {
    switch (c.kind) {
      case NodeKind::kStart:
      case NodeKind::kEnd:
      case NodeKind::kEpsilon:
        return {TokenString{}};
      case NodeKind::kTerminals:
        return c.alternatives;
      case NodeKind::kLexiconRef:
        return rs_.FindLexicon(c.reference)->entries;
      case NodeKind::kSubgraphCall:
        return Paths(c.reference);
    }
    return {};
  }

  const ResourceSet& rs_;
  std::map<std::string, Language> memo_;
};

std::string Quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

std::vector<TokenString> NaivePaths(const ResourceSet& rs, const std::string& root) {
  NaiveWalker w(rs);
  std::vector<TokenString> out;
  for (const TokenString& p : w.Paths(root)) {
    if (!p.empty()) out.push_back(p);
  }
  return out;
}

std::string NaiveRender(const TokenString& tokens) {
  std::ostringstream os;
  bool first = true;
  for (const Token& t : tokens) {
    if (!first && !t.glue) os << ' ';
    os << t.text;
    first = false;
  }
  return os.str();
}

RandomResources MakeRandomResources(uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](size_t n) { return static_cast<size_t>(rng() % n); };
  auto chance = [&](int percent) { return static_cast<int>(rng() % 100) < percent; };
  // Small vocabulary so that distinct paths often render the same text.
  static const std::vector<std::string> kWords = {"a",   "b",   "c",    "go",  "stop", "red",
                                                  "sky", "dog", "ok,",  "why?", "x",   "y"};
  auto token_string = [&] {
    std::string s;
    size_t n = 1 + pick(2);
    for (size_t i = 0; i < n; ++i) {
      if (i) s += ' ';
      if (chance(10)) s += '^';
      s += kWords[pick(kWords.size())];
    }
    return s;
  };

  RandomResources out;
  size_t num_lex = 1 + pick(2);
  for (size_t l = 0; l < num_lex; ++l) {
    std::string src = "# random lexicon\n";
    size_t n = 1 + pick(4);
    for (size_t i = 0; i < n; ++i) src += token_string() + "\n";
    out.rs.AddLexicon(ParseLexicon(src, "lex" + std::to_string(l)));
  }

  size_t num_graphs = 1 + pick(4);
  for (size_t gi = 0; gi < num_graphs; ++gi) {
    std::string name = "G" + std::to_string(gi);
    std::ostringstream src;
    src << "graph " << name << "\nnode 0 <START>\nnode 1 <END>\n";
    size_t layers = 1 + pick(3);
    std::vector<std::vector<uint32_t>> layer_ids;
    uint32_t next_id = 2;
    for (size_t l = 0; l < layers; ++l) {
      std::vector<uint32_t> ids;
      size_t width = 1 + pick(3);
      for (size_t w = 0; w < width; ++w) {
        uint32_t id = next_id++;
        ids.push_back(id);
        src << "node " << id << " ";
        int roll = static_cast<int>(pick(100));
        if (roll < 15) {
          src << "<E>";
        } else if (roll < 30) {
          src << "@lex" << pick(num_lex);
        } else if (roll < 50 && gi > 0) {
          src << ":G" << pick(gi);
        } else {
          size_t alts = 1 + pick(3);
          for (size_t a = 0; a < alts; ++a) {
            if (a) src << " | ";
            src << (chance(5) ? Quote("") : Quote(token_string()));
          }
        }
        if (chance(15)) src << " / " << Quote("o" + std::to_string(id));
        src << "\n";
      }
      layer_ids.push_back(std::move(ids));
    }
    // Every box gets at least one predecessor in the previous layer and at
    // least one successor in the next, so nothing is unreachable.
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (uint32_t id : layer_ids.front()) edges.push_back({0, id});
    for (size_t l = 0; l + 1 < layers; ++l) {
      const auto& cur = layer_ids[l];
      const auto& nxt = layer_ids[l + 1];
      std::vector<bool> has_out(cur.size(), false);
      for (uint32_t d : nxt) {
        size_t s = pick(cur.size());
        edges.push_back({cur[s], d});
        has_out[s] = true;
        for (size_t k = 0; k < cur.size(); ++k) {
          if (k != s && chance(30)) {
            edges.push_back({cur[k], d});
            has_out[k] = true;
          }
        }
      }
      for (size_t k = 0; k < cur.size(); ++k) {
        if (!has_out[k]) edges.push_back({cur[k], nxt[pick(nxt.size())]});
      }
      if (chance(20)) edges.push_back({cur[pick(cur.size())], 1});  // skip to End
    }
    for (uint32_t id : layer_ids.back()) edges.push_back({id, 1});
    for (auto [s, d] : edges) src << "edge " << s << " " << d << "\n";
    src << "end\n";
    out.sources.push_back(src.str());
    out.rs.AddGrammar(ParseGrammar(out.sources.back(), name));
  }
  out.root = "G" + std::to_string(num_graphs - 1);
  out.rs.set_content_hash(out.rs.ComputeStructuralHash());
  return out;
}

namespace {

// One lexicon of `n` distinct single-token entries.
Lexicon NumberedLexicon(const std::string& name, const std::string& stem, size_t n) {
  Lexicon lex;
  lex.name = name;
  for (size_t i = 0; i < n; ++i) lex.entries.push_back({Token{stem + std::to_string(i), false}});
  return lex;
}

// Start -> @a -> @b -> ... -> End.
Grammar ChainOfLexicons(const std::string& name, const std::vector<std::string>& lexicons) {
  std::ostringstream src;
  src << "graph " << name << "\nnode 0 <START>\nnode 1 <END>\n";
  for (size_t i = 0; i < lexicons.size(); ++i) src << "node " << i + 2 << " @" << lexicons[i] << "\n";
  src << "edge 0 2\n";
  for (size_t i = 0; i + 1 < lexicons.size(); ++i) src << "edge " << i + 2 << " " << i + 3 << "\n";
  src << "edge " << lexicons.size() + 1 << " 1\nend\n";
  return ParseGrammar(src.str(), name);
}

// Two parallel branches: a*b paths plus c paths.
Grammar TwoBranches(ResourceSet& rs, const std::string& name, size_t a, size_t b, size_t c) {
  rs.AddLexicon(NumberedLexicon(name + "_a", name + "a", a));
  rs.AddLexicon(NumberedLexicon(name + "_b", name + "b", b));
  rs.AddLexicon(NumberedLexicon(name + "_c", name + "c", c));
  std::ostringstream src;
  src << "graph " << name << "\nnode 0 <START>\nnode 1 <END>\n"
      << "node 2 @" << name << "_a\nnode 3 @" << name << "_b\nnode 4 @" << name << "_c\n"
      << "edge 0 2\nedge 2 3\nedge 3 1\nedge 0 4\nedge 4 1\nend\n";
  return ParseGrammar(src.str(), name);
}

}  // namespace

ScaleFixture MakeScaleFixture() {
  ScaleFixture f;
  static const char* kCategories[] = {"Divorce", "Inheritance", "Labour", "Privacy"};
  for (const char* cat : kCategories) {
    std::string base = std::string("Bg_") + cat;
    std::vector<std::string> lex;
    size_t sizes[] = {46, 45, 47};  // 97,290 paths
    for (size_t i = 0; i < 3; ++i) {
      std::string ln = base + "_" + std::to_string(i);
      f.rs.AddLexicon(NumberedLexicon(ln, base.substr(3, 3) + std::to_string(i) + "w", sizes[i]));
      lex.push_back(ln);
    }
    f.rs.AddGrammar(ChainOfLexicons(base, lex));
  }
  f.rs.AddGrammar(TwoBranches(f.rs, "Req_Wh", 33, 33, 20));     // 1,109 paths
  f.rs.AddGrammar(TwoBranches(f.rs, "Req_YesNo", 27, 28, 10));  // 766 paths
  for (size_t c = 0; c < 20; ++c) {
    std::string core = "Core_" + std::to_string(c);
    std::vector<std::string> lex;
    for (size_t i = 0; i < 3; ++i) {
      std::string ln = core + "_" + std::to_string(i);
      f.rs.AddLexicon(NumberedLexicon(ln, "k" + std::to_string(c) + "s" + std::to_string(i) + "w", 12));
      lex.push_back(ln);
    }
    f.rs.AddGrammar(ChainOfLexicons(core, lex));  // 1,728 paths
    IntentSpec spec;
    spec.label = "INTENT-" + std::to_string(100 + c);
    spec.category = kCategories[c / 5];
    spec.background = std::string("Bg_") + kCategories[c / 5];
    spec.core = core;
    spec.requests = {"Req_Wh", "Req_YesNo"};
    spec.allow_empty_background = true;
    spec.allow_empty_request = true;
    f.config.intents.push_back(std::move(spec));
  }
  f.config.seed = 2024;
  f.rs.set_content_hash(f.rs.ComputeStructuralHash());
  return f;
}

std::string FixtureDir(const std::string& name) { return std::string(LGG_FIXTURE_ROOT) + "/" + name; }

ResourceSet LoadFixture(const std::string& name) {
  return LoadResourceSet(FixtureDir(name) + "/grammars", FixtureDir(name) + "/lexicons");
}

CompositionConfig LoadFixtureConfig(const std::string& name) {
  return ParseCompositionConfig(ReadFile(FixtureDir(name) + "/intents.json"));
}

}  // namespace lgg::testing
