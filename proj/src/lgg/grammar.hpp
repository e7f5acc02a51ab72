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

#ifndef LGG_GRAMMAR_HPP_
#define LGG_GRAMMAR_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lgg {

// One surface token. `glue` attaches the token to the preceding text without
// a space when rendering (Korean particles, punctuation).
struct Token {
  std::string text;
  bool glue = false;

  friend bool operator==(const Token&, const Token&) = default;
};

// A sequence of tokens; the empty sequence stands for epsilon.
using TokenString = std::vector<Token>;

// Parses the quoted-alternative token syntax: tokens separated by single
// spaces, a leading '^' sets the glue flag. Throws Error(kParse).
TokenString ParseTokenString(std::string_view body);
std::string FormatTokenString(const TokenString& tokens);

enum class NodeKind { kStart, kEnd, kEpsilon, kTerminals, kSubgraphCall, kLexiconRef };

struct NodeContent {
  NodeKind kind = NodeKind::kEpsilon;
  std::vector<TokenString> alternatives;  // kTerminals only
  std::string reference;                  // graph or lexicon name
  std::optional<std::string> output;

  friend bool operator==(const NodeContent&, const NodeContent&) = default;
};

struct GraphNode {
  uint32_t id = 0;
  NodeContent content;
  int line = 0;  // source line, 0 when built in memory

  friend bool operator==(const GraphNode& a, const GraphNode& b) {
    return a.id == b.id && a.content == b.content;
  }
};

struct Edge {
  uint32_t src = 0;
  uint32_t dst = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

inline constexpr uint32_t kStartNode = 0;
inline constexpr uint32_t kEndNode = 1;

class Grammar {
 public:
  Grammar() = default;
  explicit Grammar(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  const std::map<uint32_t, GraphNode>& nodes() const { return nodes_; }
  // Source order; it fixes enumeration order.
  const std::vector<Edge>& edges() const { return edges_; }

  const GraphNode* FindNode(uint32_t id) const;

  // Mutators used by the parser and by in-memory builders. They do not
  // check global invariants; call CheckStructure() once done.
  void AddNode(GraphNode node);
  void AddEdge(Edge e) { edges_.push_back(e); }

  // Start/End presence, edge endpoints, no edge leaving End or entering
  // Start, acyclicity. Throws Error(kParse).
  void CheckStructure() const;

  // Outgoing edge targets per node in source order.
  std::map<uint32_t, std::vector<uint32_t>> Successors() const;

  friend bool operator==(const Grammar&, const Grammar&) = default;

 private:
  std::string name_;
  std::map<uint32_t, GraphNode> nodes_;
  std::vector<Edge> edges_;
};

struct Lexicon {
  std::string name;
  std::vector<TokenString> entries;
};

// Parses one .lgg document. `origin` prefixes diagnostics (usually the path).
Grammar ParseGrammar(std::string_view source, std::string_view origin = "<input>");
std::string PrintGrammar(const Grammar& g);

Lexicon ParseLexicon(std::string_view source, std::string name,
                     std::string_view origin = "<input>");

class ResourceSet {
 public:
  void AddGrammar(Grammar g);
  void AddLexicon(Lexicon lex);

  const Grammar* FindGrammar(std::string_view name) const;
  const Lexicon* FindLexicon(std::string_view name) const;

  const std::map<std::string, std::shared_ptr<const Grammar>, std::less<>>& grammars() const {
    return grammars_;
  }
  const std::map<std::string, std::shared_ptr<const Lexicon>, std::less<>>& lexicons() const {
    return lexicons_;
  }

  // Fingerprint of the source files (or of the printed form for in-memory
  // sets). Stable across runs and platforms.
  const std::string& content_hash() const { return content_hash_; }
  void set_content_hash(std::string h) { content_hash_ = std::move(h); }
  std::string ComputeStructuralHash() const;

  // Every call and lexicon reference resolves and the call relation is
  // acyclic. Throws Error(kUnresolved) listing all missing names, or
  // Error(kRecursion) naming a cycle as "A -> B -> A".
  void CheckReferences() const;

 private:
  std::map<std::string, std::shared_ptr<const Grammar>, std::less<>> grammars_;
  std::map<std::string, std::shared_ptr<const Lexicon>, std::less<>> lexicons_;
  std::string content_hash_;
};

// Reads every *.lgg in grammar_dir and every *.lex in lexicon_dir (sorted by
// file name). Parse errors from all files are aggregated into one Error.
ResourceSet LoadResourceSet(const std::filesystem::path& grammar_dir,
                            const std::filesystem::path& lexicon_dir);

std::string ReadFile(const std::filesystem::path& path);

enum class Severity { kError, kWarning };

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string grammar;
  std::optional<uint32_t> node;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Diagnostic> diagnostics;
};

// Structural and connectivity diagnostics for a single grammar.
std::vector<Diagnostic> GrammarDiagnostics(const Grammar& g);

// Unreachable and dead-end nodes are errors; empty alternatives and
// unresolved references are reported too. Never throws on bad input.
ValidationReport Validate(const ResourceSet& rs);

}  // namespace lgg

#endif  // LGG_GRAMMAR_HPP_
