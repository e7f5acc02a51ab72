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

#include "lgg/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "lgg/error.hpp"
#include "lgg/text.hpp"

namespace lgg {

namespace {

std::string Location(std::string_view origin, int line, int col) {
  std::ostringstream os;
  os << origin << ":" << line;
  if (col > 0) os << ":" << col;
  return os.str();
}

[[noreturn]] void ParseFail(std::string_view origin, int line, int col,
                            const std::string& msg) {
  throw Error(ErrorCode::kParse, Location(origin, line, col) + ": " + msg);
}

enum class LexKind { kWord, kQuoted, kBar, kSlash };

struct Lexeme {
  LexKind kind;
  std::string text;
  int col;
};

// Splits one line into lexemes; '#' outside quotes starts a comment.
std::vector<Lexeme> LexLine(std::string_view line, std::string_view origin, int lineno) {
  std::vector<Lexeme> out;
  size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#') break;
    int col = static_cast<int>(i) + 1;
    if (c == '|') {
      out.push_back({LexKind::kBar, "|", col});
      ++i;
    } else if (c == '/') {
      out.push_back({LexKind::kSlash, "/", col});
      ++i;
    } else if (c == '"') {
      std::string body;
      ++i;
      bool closed = false;
      while (i < line.size()) {
        char d = line[i];
        if (d == '\\') {
          if (i + 1 >= line.size()) break;
          char e = line[i + 1];
          if (e != '"' && e != '\\') {
            ParseFail(origin, lineno, static_cast<int>(i) + 1,
                      std::string("malformed escape '\\") + e + "'");
          }
          body.push_back(e);
          i += 2;
        } else if (d == '"') {
          closed = true;
          ++i;
          break;
        } else {
          body.push_back(d);
          ++i;
        }
      }
      if (!closed) ParseFail(origin, lineno, col, "unterminated quoted string");
      out.push_back({LexKind::kQuoted, std::move(body), col});
    } else {
      size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' &&
             line[j] != '#' && line[j] != '"' && line[j] != '|' && line[j] != '/') {
        ++j;
      }
      out.push_back({LexKind::kWord, std::string(line.substr(i, j - i)), col});
      i = j;
    }
  }
  return out;
}

bool IsIdentifier(std::string_view s) {
  if (s.empty()) return false;
  for (unsigned char c : s) {
    if (c >= 0x80) continue;
    if (!(std::isalnum(c) || c == '_' || c == '-' || c == '.')) return false;
  }
  return true;
}

std::optional<uint32_t> ParseId(std::string_view s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  uint32_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + static_cast<uint32_t>(c - '0');
  }
  return v;
}

std::string Escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::vector<std::string_view> SplitLines(std::string_view src) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= src.size()) {
    size_t nl = src.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < src.size()) lines.push_back(src.substr(start));
      break;
    }
    lines.push_back(src.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

}  // namespace

TokenString ParseTokenString(std::string_view body) {
  TokenString out;
  if (body.empty()) return out;
  size_t start = 0;
  while (true) {
    size_t sp = body.find(' ', start);
    std::string_view piece = body.substr(start, sp == std::string_view::npos ? sp : sp - start);
    if (piece.empty()) {
      throw Error(ErrorCode::kParse, "tokens must be separated by single spaces in \"" +
                                         std::string(body) + "\"");
    }
    Token tok;
    if (piece.front() == '^') {
      tok.glue = true;
      piece.remove_prefix(1);
      if (piece.empty()) {
        throw Error(ErrorCode::kParse, "glue marker '^' without a token");
      }
    }
    for (char c : piece) {
      if (c == '\t' || c == '\n' || c == '\r') {
        throw Error(ErrorCode::kParse, "whitespace inside a token");
      }
    }
    tok.text = std::string(piece);
    out.push_back(std::move(tok));
    if (sp == std::string_view::npos) break;
    start = sp + 1;
  }
  return out;
}

std::string FormatTokenString(const TokenString& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    if (tokens[i].glue) out.push_back('^');
    out += tokens[i].text;
  }
  return out;
}

const GraphNode* Grammar::FindNode(uint32_t id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

void Grammar::AddNode(GraphNode node) {
  uint32_t id = node.id;
  nodes_.insert_or_assign(id, std::move(node));
}

std::map<uint32_t, std::vector<uint32_t>> Grammar::Successors() const {
  std::map<uint32_t, std::vector<uint32_t>> succ;
  for (const auto& [id, n] : nodes_) succ[id];
  for (const Edge& e : edges_) succ[e.src].push_back(e.dst);
  return succ;
}

void Grammar::CheckStructure() const {
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::kParse, "graph " + name_ + ": " + msg);
  };
  const GraphNode* start = FindNode(kStartNode);
  const GraphNode* end = FindNode(kEndNode);
  if (start == nullptr || start->content.kind != NodeKind::kStart) {
    fail("node 0 must be <START>");
  }
  if (end == nullptr || end->content.kind != NodeKind::kEnd) fail("node 1 must be <END>");
  for (const auto& [id, n] : nodes_) {
    if (id != kStartNode && n.content.kind == NodeKind::kStart) {
      fail("node " + std::to_string(id) + ": only node 0 may be <START>");
    }
    if (id != kEndNode && n.content.kind == NodeKind::kEnd) {
      fail("node " + std::to_string(id) + ": only node 1 may be <END>");
    }
    if (n.content.kind == NodeKind::kTerminals && n.content.alternatives.empty()) {
      fail("node " + std::to_string(id) + ": terminal box without alternatives");
    }
  }
  for (const Edge& e : edges_) {
    std::string label = "edge " + std::to_string(e.src) + " " + std::to_string(e.dst);
    if (!FindNode(e.src) || !FindNode(e.dst)) fail(label + ": unknown endpoint");
    if (e.src == kEndNode) fail(label + ": leaves <END>");
    if (e.dst == kStartNode) fail(label + ": enters <START>");
  }
  // Kahn's algorithm; leftover nodes sit on a cycle.
  std::map<uint32_t, int> indeg;
  for (const auto& [id, n] : nodes_) indeg[id] = 0;
  for (const Edge& e : edges_) ++indeg[e.dst];
  auto succ = Successors();
  std::vector<uint32_t> ready;
  for (const auto& [id, d] : indeg)
    if (d == 0) ready.push_back(id);
  size_t seen = 0;
  while (!ready.empty()) {
    uint32_t v = ready.back();
    ready.pop_back();
    ++seen;
    for (uint32_t w : succ[v])
      if (--indeg[w] == 0) ready.push_back(w);
  }
  if (seen != nodes_.size()) {
    for (const auto& [id, d] : indeg) {
      if (d > 0) fail("cycle through node " + std::to_string(id));
    }
  }
}

Grammar ParseGrammar(std::string_view source, std::string_view origin) {
  std::string normalized = text::Nfc(source);
  std::optional<Grammar> g;
  bool ended = false;
  std::map<uint32_t, int> seen_ids;
  int lineno = 0;
  for (std::string_view line : SplitLines(normalized)) {
    ++lineno;
    std::vector<Lexeme> lx = LexLine(line, origin, lineno);
    if (lx.empty()) continue;
    if (lx[0].kind != LexKind::kWord) {
      ParseFail(origin, lineno, lx[0].col, "expected a directive");
    }
    const std::string& directive = lx[0].text;
    if (ended) ParseFail(origin, lineno, lx[0].col, "content after 'end'");
    if (directive == "graph") {
      if (g) ParseFail(origin, lineno, lx[0].col, "duplicate 'graph' header");
      if (lx.size() != 2 || lx[1].kind != LexKind::kWord || !IsIdentifier(lx[1].text)) {
        ParseFail(origin, lineno, lx[0].col, "expected 'graph <Name>'");
      }
      g.emplace(lx[1].text);
      continue;
    }
    if (!g) ParseFail(origin, lineno, lx[0].col, "missing 'graph <Name>' header");
    if (directive == "end") {
      if (lx.size() != 1) ParseFail(origin, lineno, lx[1].col, "unexpected text after 'end'");
      ended = true;
    } else if (directive == "edge") {
      if (lx.size() != 3 || lx[1].kind != LexKind::kWord || lx[2].kind != LexKind::kWord) {
        ParseFail(origin, lineno, lx[0].col, "expected 'edge <src> <dst>'");
      }
      auto src = ParseId(lx[1].text);
      auto dst = ParseId(lx[2].text);
      if (!src) ParseFail(origin, lineno, lx[1].col, "bad node id '" + lx[1].text + "'");
      if (!dst) ParseFail(origin, lineno, lx[2].col, "bad node id '" + lx[2].text + "'");
      if (!g->FindNode(*src)) {
        ParseFail(origin, lineno, lx[1].col, "edge from undeclared node " + lx[1].text);
      }
      if (!g->FindNode(*dst)) {
        ParseFail(origin, lineno, lx[2].col, "edge to undeclared node " + lx[2].text);
      }
      g->AddEdge({*src, *dst});
    } else if (directive == "node") {
      if (lx.size() < 3 || lx[1].kind != LexKind::kWord) {
        ParseFail(origin, lineno, lx[0].col, "expected 'node <id> <content>'");
      }
      auto id = ParseId(lx[1].text);
      if (!id) ParseFail(origin, lineno, lx[1].col, "bad node id '" + lx[1].text + "'");
      if (auto it = seen_ids.find(*id); it != seen_ids.end()) {
        ParseFail(origin, lineno, lx[1].col,
                  "duplicate node id " + lx[1].text + " (first declared on line " +
                      std::to_string(it->second) + ")");
      }
      seen_ids[*id] = lineno;
      GraphNode node;
      node.id = *id;
      node.line = lineno;
      size_t k = 2;
      const Lexeme& head = lx[k];
      if (head.kind == LexKind::kQuoted) {
        node.content.kind = NodeKind::kTerminals;
        while (true) {
          if (lx[k].kind != LexKind::kQuoted) {
            ParseFail(origin, lineno, lx[k].col, "expected a quoted alternative");
          }
          try {
            node.content.alternatives.push_back(ParseTokenString(lx[k].text));
          } catch (const Error& e) {
            ParseFail(origin, lineno, lx[k].col, e.what());
          }
          ++k;
          if (k < lx.size() && lx[k].kind == LexKind::kBar) {
            ++k;
            if (k >= lx.size()) ParseFail(origin, lineno, lx[k - 1].col, "dangling '|'");
            continue;
          }
          break;
        }
      } else if (head.kind == LexKind::kWord) {
        const std::string& w = head.text;
        if (w == "<START>") {
          node.content.kind = NodeKind::kStart;
        } else if (w == "<END>") {
          node.content.kind = NodeKind::kEnd;
        } else if (w == "<E>") {
          node.content.kind = NodeKind::kEpsilon;
        } else if (w.size() > 1 && (w[0] == ':' || w[0] == '@')) {
          node.content.kind = w[0] == ':' ? NodeKind::kSubgraphCall : NodeKind::kLexiconRef;
          node.content.reference = w.substr(1);
          if (!IsIdentifier(node.content.reference)) {
            ParseFail(origin, lineno, head.col, "bad reference name '" + w + "'");
          }
        } else {
          ParseFail(origin, lineno, head.col, "unknown node content '" + w + "'");
        }
        ++k;
      } else {
        ParseFail(origin, lineno, head.col, "expected node content");
      }
      if (k < lx.size() && lx[k].kind == LexKind::kSlash) {
        if (node.content.kind == NodeKind::kStart || node.content.kind == NodeKind::kEnd) {
          ParseFail(origin, lineno, lx[k].col, "<START>/<END> cannot carry an output");
        }
        if (k + 1 >= lx.size() || lx[k + 1].kind != LexKind::kQuoted) {
          ParseFail(origin, lineno, lx[k].col, "expected a quoted output after '/'");
        }
        node.content.output = lx[k + 1].text;
        k += 2;
      }
      if (k < lx.size()) ParseFail(origin, lineno, lx[k].col, "unexpected '" + lx[k].text + "'");
      g->AddNode(std::move(node));
    } else {
      ParseFail(origin, lineno, lx[0].col, "unknown directive '" + directive + "'");
    }
  }
  if (!g) ParseFail(origin, lineno, 0, "missing 'graph <Name>' header");
  if (!ended) ParseFail(origin, lineno, 0, "missing 'end'");
  try {
    g->CheckStructure();
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, std::string(origin) + ": " + e.what());
  }
  return std::move(*g);
}

std::string PrintGrammar(const Grammar& g) {
  std::ostringstream os;
  os << "graph " << g.name() << "\n";
  for (const auto& [id, n] : g.nodes()) {
    os << "node " << id << " ";
    const NodeContent& c = n.content;
    switch (c.kind) {
      case NodeKind::kStart: os << "<START>"; break;
      case NodeKind::kEnd: os << "<END>"; break;
      case NodeKind::kEpsilon: os << "<E>"; break;
      case NodeKind::kSubgraphCall: os << ":" << c.reference; break;
      case NodeKind::kLexiconRef: os << "@" << c.reference; break;
      case NodeKind::kTerminals:
        for (size_t i = 0; i < c.alternatives.size(); ++i) {
          if (i) os << " | ";
          os << '"' << Escape(FormatTokenString(c.alternatives[i])) << '"';
        }
        break;
    }
    if (c.output) os << " / \"" << Escape(*c.output) << '"';
    os << "\n";
  }
  for (const Edge& e : g.edges()) os << "edge " << e.src << " " << e.dst << "\n";
  os << "end\n";
  return os.str();
}

Lexicon ParseLexicon(std::string_view source, std::string name, std::string_view origin) {
  std::string normalized = text::Nfc(source);
  Lexicon lex;
  lex.name = std::move(name);
  std::set<std::string> seen;
  int lineno = 0;
  for (std::string_view line : SplitLines(normalized)) {
    ++lineno;
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string_view::npos || line[b] == '#') continue;
    size_t e = line.find_last_not_of(" \t\r");
    std::string_view body = line.substr(b, e - b + 1);
    TokenString ts;
    try {
      ts = ParseTokenString(body);
    } catch (const Error& err) {
      ParseFail(origin, lineno, static_cast<int>(b) + 1, err.what());
    }
    if (seen.insert(FormatTokenString(ts)).second) lex.entries.push_back(std::move(ts));
  }
  if (lex.entries.empty()) ParseFail(origin, lineno, 0, "lexicon has no entries");
  return lex;
}

void ResourceSet::AddGrammar(Grammar g) {
  std::string name = g.name();
  grammars_.insert_or_assign(std::move(name), std::make_shared<const Grammar>(std::move(g)));
}

void ResourceSet::AddLexicon(Lexicon lex) {
  std::string name = lex.name;
  lexicons_.insert_or_assign(std::move(name), std::make_shared<const Lexicon>(std::move(lex)));
}

const Grammar* ResourceSet::FindGrammar(std::string_view name) const {
  auto it = grammars_.find(name);
  return it == grammars_.end() ? nullptr : it->second.get();
}

const Lexicon* ResourceSet::FindLexicon(std::string_view name) const {
  auto it = lexicons_.find(name);
  return it == lexicons_.end() ? nullptr : it->second.get();
}

std::string ResourceSet::ComputeStructuralHash() const {
  text::Fnv1a64 h;
  for (const auto& [name, g] : grammars_) {
    h.Update(PrintGrammar(*g));
  }
  for (const auto& [name, lex] : lexicons_) {
    h.Update("lexicon " + name + "\n");
    for (const auto& e : lex->entries) h.Update(FormatTokenString(e) + "\n");
  }
  return h.HexDigest();
}

namespace {

// Depth-first search over the call relation. Returns the first cycle found as
// a name sequence whose first and last element coincide.
std::vector<std::string> FindCallCycle(const ResourceSet& rs) {
  enum class Mark { kNone, kActive, kDone };
  std::map<std::string, Mark, std::less<>> mark;
  std::vector<std::string> stack;
  std::vector<std::string> cycle;
  std::function<bool(const std::string&)> visit = [&](const std::string& name) -> bool {
    mark[name] = Mark::kActive;
    stack.push_back(name);
    const Grammar* g = rs.FindGrammar(name);
    if (g) {
      for (const auto& [id, n] : g->nodes()) {
        if (n.content.kind != NodeKind::kSubgraphCall) continue;
        const std::string& callee = n.content.reference;
        if (!rs.FindGrammar(callee)) continue;
        Mark m = mark[callee];
        if (m == Mark::kActive) {
          auto it = std::find(stack.begin(), stack.end(), callee);
          cycle.assign(it, stack.end());
          cycle.push_back(callee);
          return true;
        }
        if (m == Mark::kNone && visit(callee)) return true;
      }
    }
    stack.pop_back();
    mark[name] = Mark::kDone;
    return false;
  };
  for (const auto& [name, g] : rs.grammars()) {
    if (mark[name] == Mark::kNone && visit(name)) return cycle;
  }
  return {};
}

std::string JoinCycle(const std::vector<std::string>& cycle) {
  std::string s;
  for (size_t i = 0; i < cycle.size(); ++i) {
    if (i) s += " -> ";
    s += cycle[i];
  }
  return s;
}

std::vector<std::string> UnresolvedReferences(const ResourceSet& rs) {
  std::vector<std::string> missing;
  for (const auto& [name, g] : rs.grammars()) {
    for (const auto& [id, n] : g->nodes()) {
      const NodeContent& c = n.content;
      if (c.kind == NodeKind::kSubgraphCall && !rs.FindGrammar(c.reference)) {
        missing.push_back(name + " node " + std::to_string(id) + ": unknown graph :" +
                          c.reference);
      } else if (c.kind == NodeKind::kLexiconRef && !rs.FindLexicon(c.reference)) {
        missing.push_back(name + " node " + std::to_string(id) + ": unknown lexicon @" +
                          c.reference);
      }
    }
  }
  return missing;
}

}  // namespace

void ResourceSet::CheckReferences() const {
  auto missing = UnresolvedReferences(*this);
  if (!missing.empty()) {
    std::string msg = "unresolved references:";
    for (const auto& m : missing) msg += "\n  " + m;
    throw Error(ErrorCode::kUnresolved, msg);
  }
  auto cycle = FindCallCycle(*this);
  if (!cycle.empty()) {
    throw Error(ErrorCode::kRecursion, "recursive subgraph calls: " + JoinCycle(cycle));
  }
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::vector<std::filesystem::path> ListFiles(const std::filesystem::path& dir,
                                             std::string_view ext) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::kIo, "not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ext) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
    return a.filename().string() < b.filename().string();
  });
  return files;
}

}  // namespace

ResourceSet LoadResourceSet(const std::filesystem::path& grammar_dir,
                            const std::filesystem::path& lexicon_dir) {
  ResourceSet rs;
  std::vector<std::string> errors;
  text::Fnv1a64 hash;
  for (const auto& path : ListFiles(grammar_dir, ".lgg")) {
    std::string src = ReadFile(path);
    hash.Update("grammar " + path.filename().string() + "\n");
    hash.Update(src);
    try {
      Grammar g = ParseGrammar(src, path.string());
      if (g.name() != path.stem().string()) {
        errors.push_back(path.string() + ": graph name '" + g.name() +
                         "' does not match file name");
        continue;
      }
      rs.AddGrammar(std::move(g));
    } catch (const Error& e) {
      errors.push_back(e.what());
    }
  }
  for (const auto& path : ListFiles(lexicon_dir, ".lex")) {
    std::string src = ReadFile(path);
    hash.Update("lexicon " + path.filename().string() + "\n");
    hash.Update(src);
    try {
      rs.AddLexicon(ParseLexicon(src, path.stem().string(), path.string()));
    } catch (const Error& e) {
      errors.push_back(e.what());
    }
  }
  if (!errors.empty()) {
    std::string msg = std::to_string(errors.size()) + " file(s) failed to parse:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw Error(ErrorCode::kParse, msg);
  }
  rs.CheckReferences();
  rs.set_content_hash(hash.HexDigest());
  return rs;
}

std::vector<Diagnostic> GrammarDiagnostics(const Grammar& g) {
  std::vector<Diagnostic> out;
  const std::string& name = g.name();
  auto add = [&](Severity sev, std::optional<uint32_t> node, std::string msg) {
    out.push_back({sev, name, node, std::move(msg)});
  };
  try {
    g.CheckStructure();
  } catch (const Error& e) {
    add(Severity::kError, std::nullopt, e.what());
    return out;
  }
  auto succ = g.Successors();
  std::map<uint32_t, std::vector<uint32_t>> pred;
  for (const Edge& e : g.edges()) pred[e.dst].push_back(e.src);
  auto reach = [](uint32_t from, std::map<uint32_t, std::vector<uint32_t>>& adj) {
    std::set<uint32_t> seen{from};
    std::vector<uint32_t> todo{from};
    while (!todo.empty()) {
      uint32_t v = todo.back();
      todo.pop_back();
      for (uint32_t w : adj[v])
        if (seen.insert(w).second) todo.push_back(w);
    }
    return seen;
  };
  std::set<uint32_t> from_start = reach(kStartNode, succ);
  std::set<uint32_t> to_end = reach(kEndNode, pred);
  for (const auto& [id, n] : g.nodes()) {
    std::string label = "node " + std::to_string(id);
    if (!from_start.count(id)) {
      add(Severity::kError, id, label + " is unreachable from <START>");
    } else if (!to_end.count(id)) {
      add(Severity::kError, id, label + " is a dead end (no path to <END>)");
    }
    if (n.content.kind == NodeKind::kTerminals) {
      for (size_t a = 0; a < n.content.alternatives.size(); ++a) {
        if (n.content.alternatives[a].empty()) {
          add(Severity::kWarning, id,
              label + " alternative " + std::to_string(a + 1) + " is empty (behaves like <E>)");
        }
      }
    }
  }
  return out;
}

ValidationReport Validate(const ResourceSet& rs) {
  ValidationReport report;
  auto add = [&](Diagnostic d) {
    if (d.severity == Severity::kError) report.ok = false;
    report.diagnostics.push_back(std::move(d));
  };
  for (const auto& [name, g] : rs.grammars()) {
    for (auto& d : GrammarDiagnostics(*g)) add(std::move(d));
  }
  for (const auto& m : UnresolvedReferences(rs)) {
    add({Severity::kError, "", std::nullopt, m});
  }
  if (auto cycle = FindCallCycle(rs); !cycle.empty()) {
    add({Severity::kError, cycle.front(), std::nullopt,
         "recursive subgraph calls: " + JoinCycle(cycle)});
  }
  return report;
}

}  // namespace lgg
