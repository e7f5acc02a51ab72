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

#ifndef LGG_FST_HPP_
#define LGG_FST_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lgg/grammar.hpp"

namespace lgg {

using BigInt = boost::multiprecision::cpp_int;

// Outputs starting with this byte are composition markers, never user data.
inline constexpr char kMarkerPrefix = '\x1f';
inline bool IsPartMarker(std::string_view output) {
  return !output.empty() && output.front() == kMarkerPrefix;
}

struct Transition {
  TokenString input;  // never empty
  // Emissions collected along the source path that this transition stands
  // for: outputs of skipped epsilon boxes come first.
  std::vector<std::string> outputs;
  uint32_t dst = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

// Epsilon-free acyclic transducer with a single start and a single final
// state. Per-state transition order is the canonical enumeration order.
class Fst {
 public:
  static constexpr uint32_t kStart = 0;
  static constexpr uint32_t kFinal = 1;

  Fst() : states_(2) {}

  size_t NumStates() const { return states_.size(); }
  size_t NumTransitions() const;
  const std::vector<Transition>& Transitions(uint32_t state) const { return states_.at(state); }

  uint32_t AddState() {
    states_.emplace_back();
    return static_cast<uint32_t>(states_.size() - 1);
  }
  void AddTransition(uint32_t state, Transition t) { states_.at(state).push_back(std::move(t)); }

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  // Number of all-epsilon Start-to-End paths removed during compilation.
  const BigInt& dropped_empty_paths() const { return dropped_empty_paths_; }
  void set_dropped_empty_paths(BigInt n) { dropped_empty_paths_ = std::move(n); }

  friend bool operator==(const Fst& a, const Fst& b) { return a.states_ == b.states_; }

 private:
  std::vector<std::vector<Transition>> states_;
  std::string name_;
  BigInt dropped_empty_paths_ = 0;
};

enum class EmptyPathPolicy {
  kDropWithWarning,  // remove empty utterances, report the number dropped
  kError,            // any all-epsilon path is a compile error
};

struct CompileOptions {
  EmptyPathPolicy empty_paths = EmptyPathPolicy::kDropWithWarning;
};

// Inlines subgraph calls and lexicon references below `root`, removes
// epsilons and trims states that cannot reach the final state. Path
// multiplicity of the source grammar is preserved exactly.
Fst Compile(const ResourceSet& rs, std::string_view root, const CompileOptions& opts = {});

// Same, for a root grammar that is not (necessarily) part of `rs`; used for
// synthetic composition graphs.
Fst CompileGrammar(const ResourceSet& rs, const Grammar& root, const CompileOptions& opts = {});

class PathCountTable {
 public:
  explicit PathCountTable(std::vector<BigInt> counts) : counts_(std::move(counts)) {}

  const BigInt& total() const { return counts_.at(Fst::kStart); }
  const BigInt& at(uint32_t state) const { return counts_.at(state); }
  size_t size() const { return counts_.size(); }

 private:
  std::vector<BigInt> counts_;
};

// Reverse-topological dynamic programming. Throws Error(kCycle) naming one
// back edge if the automaton is cyclic.
PathCountTable CountPaths(const Fst& fst);

}  // namespace lgg

#endif  // LGG_FST_HPP_
