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

#include "lgg/fst.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <unordered_map>

#include "lgg/error.hpp"

namespace lgg {

size_t Fst::NumTransitions() const {
  size_t n = 0;
  for (const auto& s : states_) n += s.size();
  return n;
}

namespace {

// Epsilon automaton obtained by inlining every call. Arcs either consume a
// token string or are epsilon; both may carry an output.
struct EArc {
  uint32_t dst;
  const TokenString* tokens;  // nullptr for epsilon
  const std::string* output;  // nullptr for none
};

struct ClosureItem {
  std::vector<const std::string*> outputs;
  // Token arc reached after the epsilon path, or none for the final state.
  std::optional<std::pair<uint32_t, uint32_t>> arc;
};

class Inliner {
 public:
  Inliner(const ResourceSet& rs) : rs_(rs) {
    arcs_.resize(2);  // 0 = root entry, 1 = root exit
  }

  void Inline(const Grammar& g, uint32_t entry, uint32_t exit) {
    if (std::find(stack_.begin(), stack_.end(), g.name()) != stack_.end()) {
      std::string path;
      for (const auto& n : stack_) path += n + " -> ";
      throw Error(ErrorCode::kRecursion, "recursive subgraph calls: " + path + g.name());
    }
    if (checked_.insert({g.name(), true}).second) {
      for (const auto& d : GrammarDiagnostics(g)) {
        if (d.severity == Severity::kError) {
          throw Error(ErrorCode::kValidation, "graph " + g.name() + ": " + d.message);
        }
      }
    }
    stack_.push_back(g.name());
    std::map<uint32_t, std::pair<uint32_t, uint32_t>> io;
    for (const auto& [id, node] : g.nodes()) {
      switch (node.content.kind) {
        case NodeKind::kStart: io[id] = {entry, entry}; break;
        case NodeKind::kEnd: io[id] = {exit, exit}; break;
        default: io[id] = {NewState(), NewState()}; break;
      }
    }
    for (const auto& [id, node] : g.nodes()) {
      const NodeContent& c = node.content;
      auto [in, out] = io[id];
      const std::string* output = c.output ? &*c.output : nullptr;
      switch (c.kind) {
        case NodeKind::kStart:
        case NodeKind::kEnd:
          break;
        case NodeKind::kEpsilon:
          arcs_[in].push_back({out, nullptr, output});
          break;
        case NodeKind::kTerminals:
          for (const TokenString& alt : c.alternatives) {
            arcs_[in].push_back({out, alt.empty() ? nullptr : &alt, output});
          }
          break;
        case NodeKind::kLexiconRef: {
          const Lexicon* lex = rs_.FindLexicon(c.reference);
          if (!lex) {
            throw Error(ErrorCode::kUnresolved,
                        g.name() + " node " + std::to_string(id) + ": unknown lexicon @" +
                            c.reference);
          }
          for (const TokenString& entry_tokens : lex->entries) {
            arcs_[in].push_back({out, &entry_tokens, output});
          }
          break;
        }
        case NodeKind::kSubgraphCall: {
          const Grammar* callee = rs_.FindGrammar(c.reference);
          if (!callee) {
            throw Error(ErrorCode::kUnresolved,
                        g.name() + " node " + std::to_string(id) + ": unknown graph :" +
                            c.reference);
          }
          uint32_t callee_entry = in;
          if (output) {
            callee_entry = NewState();
            arcs_[in].push_back({callee_entry, nullptr, output});
          }
          Inline(*callee, callee_entry, out);
          break;
        }
      }
    }
    for (const Edge& e : g.edges()) {
      arcs_[io[e.src].second].push_back({io[e.dst].first, nullptr, nullptr});
    }
    stack_.pop_back();
  }

  const std::vector<std::vector<EArc>>& arcs() const { return arcs_; }

 private:
  uint32_t NewState() {
    arcs_.emplace_back();
    return static_cast<uint32_t>(arcs_.size() - 1);
  }

  const ResourceSet& rs_;
  std::vector<std::vector<EArc>> arcs_;
  std::vector<std::string> stack_;
  std::map<std::string, bool> checked_;
};

class EpsilonRemover {
 public:
  explicit EpsilonRemover(const std::vector<std::vector<EArc>>& arcs) : arcs_(arcs) {}

  // All epsilon paths leaving `state`, in depth-first arc order, each ending
  // at a token arc or at the root exit.
  const std::vector<ClosureItem>& Closure(uint32_t state) {
    auto it = memo_.find(state);
    if (it != memo_.end()) return it->second;
    std::vector<ClosureItem> items;
    if (state == 1) items.push_back({{}, std::nullopt});
    const auto& out = arcs_[state];
    for (uint32_t a = 0; a < out.size(); ++a) {
      const EArc& arc = out[a];
      if (arc.tokens) {
        items.push_back({{}, std::make_pair(state, a)});
        continue;
      }
      const std::vector<ClosureItem>& sub = Closure(arc.dst);
      for (const ClosureItem& s : sub) {
        ClosureItem item;
        if (arc.output) item.outputs.push_back(arc.output);
        item.outputs.insert(item.outputs.end(), s.outputs.begin(), s.outputs.end());
        item.arc = s.arc;
        items.push_back(std::move(item));
      }
    }
    return memo_.emplace(state, std::move(items)).first->second;
  }

 private:
  const std::vector<std::vector<EArc>>& arcs_;
  std::unordered_map<uint32_t, std::vector<ClosureItem>> memo_;
};

void AppendOutputs(std::vector<std::string>& dst, const std::vector<const std::string*>& src) {
  for (const std::string* s : src) dst.push_back(*s);
}

// Removes transitions into states with no path to the final state and
// renumbers reachable states breadth-first (start 0, final 1).
Fst Trim(const Fst& raw) {
  PathCountTable counts = CountPaths(raw);
  Fst out;
  std::vector<int64_t> map(raw.NumStates(), -1);
  map[Fst::kStart] = Fst::kStart;
  map[Fst::kFinal] = Fst::kFinal;
  std::vector<uint32_t> queue{Fst::kStart};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    uint32_t s = queue[qi];
    for (const Transition& t : raw.Transitions(s)) {
      if (counts.at(t.dst) == 0) continue;
      if (map[t.dst] < 0) {
        map[t.dst] = out.AddState();
        queue.push_back(t.dst);
      }
      Transition copy = t;
      copy.dst = static_cast<uint32_t>(map[t.dst]);
      out.AddTransition(static_cast<uint32_t>(map[s]), std::move(copy));
    }
  }
  return out;
}

}  // namespace

Fst CompileGrammar(const ResourceSet& rs, const Grammar& root, const CompileOptions& opts) {
  Inliner inliner(rs);
  inliner.Inline(root, 0, 1);
  const auto& arcs = inliner.arcs();
  EpsilonRemover eps(arcs);

  Fst raw;
  std::unordered_map<uint32_t, uint32_t> ids{{0, Fst::kStart}};
  std::vector<uint32_t> queue{0};
  BigInt empty_paths = 0;
  auto state_for = [&](uint32_t e) {
    auto [it, fresh] = ids.emplace(e, 0);
    if (fresh) {
      it->second = raw.AddState();
      queue.push_back(e);
    }
    return it->second;
  };
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    uint32_t e = queue[qi];
    uint32_t from = ids.at(e);
    // Copy: Closure() may rehash the memo table.
    std::vector<ClosureItem> items = eps.Closure(e);
    for (const ClosureItem& item : items) {
      if (!item.arc) {
        // Epsilon path to the exit. Only meaningful from the root entry; for
        // inner states these paths are folded into the finishing
        // transitions of the predecessor.
        if (e == 0) ++empty_paths;
        continue;
      }
      const EArc& arc = arcs[item.arc->first][item.arc->second];
      std::vector<std::string> outputs;
      AppendOutputs(outputs, item.outputs);
      if (arc.output) outputs.push_back(*arc.output);
      const std::vector<ClosureItem>& next = eps.Closure(arc.dst);
      bool continues = std::any_of(next.begin(), next.end(),
                                   [](const ClosureItem& c) { return c.arc.has_value(); });
      std::vector<std::vector<std::string>> finishing;
      for (const ClosureItem& c : next) {
        if (c.arc) continue;
        std::vector<std::string> fo = outputs;
        AppendOutputs(fo, c.outputs);
        finishing.push_back(std::move(fo));
      }
      if (continues) {
        uint32_t dst = state_for(arc.dst);
        raw.AddTransition(from, {*arc.tokens, outputs, dst});
      }
      for (auto& fo : finishing) {
        raw.AddTransition(from, {*arc.tokens, std::move(fo), Fst::kFinal});
      }
    }
  }
  if (empty_paths > 0 && opts.empty_paths == EmptyPathPolicy::kError) {
    throw Error(ErrorCode::kEmptyLanguage,
                "graph " + root.name() + " has " + empty_paths.str() +
                    " all-epsilon path(s) that would render an empty utterance");
  }
  Fst fst = Trim(raw);
  fst.set_name(root.name());
  fst.set_dropped_empty_paths(empty_paths);
  if (CountPaths(fst).total() == 0) {
    throw Error(ErrorCode::kEmptyLanguage,
                "graph " + root.name() + " accepts no non-empty token sequence");
  }
  return fst;
}

Fst Compile(const ResourceSet& rs, std::string_view root, const CompileOptions& opts) {
  const Grammar* g = rs.FindGrammar(root);
  if (!g) throw Error(ErrorCode::kInvalidArgument, "unknown root graph '" + std::string(root) + "'");
  return CompileGrammar(rs, *g, opts);
}

PathCountTable CountPaths(const Fst& fst) {
  const size_t n = fst.NumStates();
  if (!fst.Transitions(Fst::kFinal).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "final state has outgoing transitions");
  }
  std::vector<BigInt> counts(n);
  enum : uint8_t { kWhite, kGrey, kBlack };
  std::vector<uint8_t> color(n, kWhite);
  counts[Fst::kFinal] = 1;
  color[Fst::kFinal] = kBlack;
  struct Frame {
    uint32_t state;
    size_t next;
  };
  std::vector<Frame> stack;
  for (uint32_t root = 0; root < n; ++root) {
    if (color[root] != kWhite) continue;
    stack.push_back({root, 0});
    color[root] = kGrey;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& ts = fst.Transitions(f.state);
      if (f.next < ts.size()) {
        uint32_t d = ts[f.next++].dst;
        if (d >= n) {
          throw Error(ErrorCode::kInvalidArgument, "transition to unknown state " + std::to_string(d));
        }
        if (color[d] == kGrey) {
          throw Error(ErrorCode::kCycle, "cycle detected: back edge " + std::to_string(f.state) +
                                             " -> " + std::to_string(d));
        }
        if (color[d] == kWhite) {
          color[d] = kGrey;
          stack.push_back({d, 0});
        }
        continue;
      }
      BigInt sum = 0;
      for (const Transition& t : ts) sum += counts[t.dst];
      counts[f.state] = std::move(sum);
      color[f.state] = kBlack;
      stack.pop_back();
    }
  }
  return PathCountTable(std::move(counts));
}

}  // namespace lgg
