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


#include <filesystem>
#include <functional>
#include <fstream>

#include "doctest.h"
#include "lgg/error.hpp"
#include "lgg/grammar.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace lgg;
using namespace lgg::testing;

namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kInternal;
}

std::string MessageOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

const char* kGreet = R"(# greeting
graph Greet
node 0 <START>
node 1 <END>
node 2 "hello" | "hi"   # two greetings
node 3 "world" | "there" / "addressee"
edge 0 2
edge 2 3
edge 3 1
end
)";

// Fresh scratch directory under the system temp dir.
fs::path Scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("lgg_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void Write(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << content;
}

}  // namespace

TEST_SUITE("grammar") {

TEST_CASE("parses nodes, alternatives, outputs and comments") {
  Grammar g = ParseGrammar(kGreet);
  CHECK(g.name() == "Greet");
  REQUIRE(g.nodes().size() == 4);
  const NodeContent& n2 = g.FindNode(2)->content;
  CHECK(n2.kind == NodeKind::kTerminals);
  REQUIRE(n2.alternatives.size() == 2);
  CHECK(FormatTokenString(n2.alternatives[1]) == "hi");
  CHECK_FALSE(n2.output.has_value());
  CHECK(g.FindNode(3)->content.output == std::optional<std::string>("addressee"));
  CHECK(g.edges().size() == 3);
}

TEST_CASE("printing and reparsing is the identity") {
  Grammar g = ParseGrammar(kGreet);
  CHECK(ParseGrammar(PrintGrammar(g)) == g);
  RandomResources rr = MakeRandomResources(99);
  for (const auto& [name, gp] : rr.rs.grammars()) CHECK(ParseGrammar(PrintGrammar(*gp)) == *gp);
}

TEST_CASE("calls, lexicon references, epsilon and glue tokens") {
  Grammar g = ParseGrammar(R"(graph Q
node 0 <START>
node 1 <END>
node 2 :Sub / "sub"
node 3 @words
node 4 <E>
node 5 "이혼 ^하려면" | "a \"quoted\" \\ word"
edge 0 2
edge 2 3
edge 3 4
edge 4 5
edge 5 1
end
)");
  CHECK(g.FindNode(2)->content.kind == NodeKind::kSubgraphCall);
  CHECK(g.FindNode(2)->content.reference == "Sub");
  CHECK(g.FindNode(3)->content.kind == NodeKind::kLexiconRef);
  CHECK(g.FindNode(4)->content.kind == NodeKind::kEpsilon);
  const auto& alts = g.FindNode(5)->content.alternatives;
  REQUIRE(alts[0].size() == 2);
  CHECK(alts[0][1].glue);
  CHECK(alts[0][1].text == "하려면");
  CHECK(alts[1][1].text == "\"quoted\"");
  CHECK(alts[1][2].text == "\\");
}

TEST_CASE("a hash inside quotes is a token, not a comment") {
  Grammar g = ParseGrammar("graph H\nnode 0 <START>\nnode 1 <END>\nnode 2 \"#1 fan\"\n"
                           "edge 0 2\nedge 2 1\nend\n");
  CHECK(g.FindNode(2)->content.alternatives[0][0].text == "#1");
}

TEST_CASE("syntax errors carry line and column") {
  std::string msg = MessageOf([] { ParseGrammar("graph X\nnode 0 <START>\nnode 1 <END>\nnode 2 \"a\\n\"\nend\n", "x.lgg"); });
  CHECK(msg.find("x.lgg:4") != std::string::npos);
  CHECK(CodeOf([] { ParseGrammar("node 0 <START>\n"); }) == ErrorCode::kParse);
  CHECK(CodeOf([] {
          ParseGrammar("graph X\nnode 0 <START>\nnode 1 <END>\nnode 0 \"a\"\nend\n");
        }) == ErrorCode::kParse);
  CHECK(CodeOf([] {
          ParseGrammar("graph X\nnode 0 <START>\nnode 1 <END>\nedge 0 7\nend\n");
        }) == ErrorCode::kParse);
  CHECK(CodeOf([] {
          ParseGrammar("graph X\nnode 0 <START>\nnode 1 <END>\nnode 2 \"a  b\"\nedge 0 2\nedge 2 1\nend\n");
        }) == ErrorCode::kParse);
  CHECK(CodeOf([] {
          ParseGrammar("graph X\nnode 0 <START>\nnode 1 <END>\nnode 2 \"unterminated\nend\n");
        }) == ErrorCode::kParse);
}

TEST_CASE("cycles are rejected at parse time") {
  std::string msg = MessageOf([] {
    ParseGrammar("graph C\nnode 0 <START>\nnode 1 <END>\nnode 2 \"a\"\nnode 3 \"b\"\n"
                 "edge 0 2\nedge 2 3\nedge 3 2\nedge 3 1\nend\n");
  });
  CHECK(msg.find("cycle") != std::string::npos);
}

TEST_CASE("sources are NFC-normalized on load") {
  // "e" + COMBINING ACUTE ACCENT becomes U+00E9.
  Grammar g = ParseGrammar("graph N\nnode 0 <START>\nnode 1 <END>\nnode 2 \"cafe\xCC\x81\"\n"
                           "edge 0 2\nedge 2 1\nend\n");
  CHECK(g.FindNode(2)->content.alternatives[0][0].text == "caf\xC3\xA9");
}

TEST_CASE("lexicons drop comments and duplicates, keep order") {
  Lexicon lex = ParseLexicon("# header\nb\na\n\nb\nx ^y\n", "words");
  REQUIRE(lex.entries.size() == 3);
  CHECK(FormatTokenString(lex.entries[0]) == "b");
  CHECK(FormatTokenString(lex.entries[1]) == "a");
  CHECK(FormatTokenString(lex.entries[2]) == "x ^y");
  CHECK(CodeOf([] { ParseLexicon("# only a comment\n", "empty"); }) == ErrorCode::kParse);
}

TEST_CASE("validation reports unreachable and dead-end boxes as errors") {
  ResourceSet rs;
  rs.AddGrammar(ParseGrammar("graph V\nnode 0 <START>\nnode 1 <END>\nnode 2 \"a\"\n"
                             "node 3 \"orphan\"\nnode 4 \"dead\" | \"\"\n"
                             "edge 0 2\nedge 2 1\nedge 3 1\nedge 2 4\nend\n"));
  ValidationReport rep = Validate(rs);
  CHECK_FALSE(rep.ok);
  int errors = 0, warnings = 0;
  for (const auto& d : rep.diagnostics) {
    if (d.severity == Severity::kError) {
      ++errors;
      REQUIRE(d.node.has_value());
      CHECK((*d.node == 3 || *d.node == 4));
    } else {
      ++warnings;
      CHECK(d.message.find("empty") != std::string::npos);
    }
  }
  CHECK(errors == 2);
  CHECK(warnings == 1);
}

TEST_CASE("references must resolve and calls must not recurse") {
  ResourceSet rs;
  rs.AddGrammar(ParseGrammar("graph A\nnode 0 <START>\nnode 1 <END>\nnode 2 :B\nnode 3 @nolex\n"
                             "node 4 :Missing\nedge 0 2\nedge 2 3\nedge 3 4\nedge 4 1\nend\n"));
  rs.AddGrammar(ParseGrammar("graph B\nnode 0 <START>\nnode 1 <END>\nnode 2 \"b\"\n"
                             "edge 0 2\nedge 2 1\nend\n"));
  std::string msg = MessageOf([&] { rs.CheckReferences(); });
  CHECK(msg.find("nolex") != std::string::npos);
  CHECK(msg.find("Missing") != std::string::npos);
  CHECK(CodeOf([&] { rs.CheckReferences(); }) == ErrorCode::kUnresolved);

  ResourceSet rec;
  rec.AddGrammar(ParseGrammar("graph A\nnode 0 <START>\nnode 1 <END>\nnode 2 :B\nedge 0 2\nedge 2 1\nend\n"));
  rec.AddGrammar(ParseGrammar("graph B\nnode 0 <START>\nnode 1 <END>\nnode 2 :A\nedge 0 2\nedge 2 1\nend\n"));
  CHECK(CodeOf([&] { rec.CheckReferences(); }) == ErrorCode::kRecursion);
  CHECK(MessageOf([&] { rec.CheckReferences(); }).find("A -> B -> A") != std::string::npos);
}

TEST_CASE("loading a directory checks names and fingerprints the sources") {
  fs::path dir = Scratch("load");
  Write(dir / "g" / "Greet.lgg", kGreet);
  Write(dir / "l" / "unused.lex", "x\n");
  ResourceSet a = LoadResourceSet(dir / "g", dir / "l");
  ResourceSet b = LoadResourceSet(dir / "g", dir / "l");
  CHECK(a.content_hash() == b.content_hash());
  CHECK(a.content_hash().size() == 16);
  CHECK(a.FindLexicon("unused") != nullptr);

  Write(dir / "l" / "unused.lex", "y\n");
  CHECK(LoadResourceSet(dir / "g", dir / "l").content_hash() != a.content_hash());

  Write(dir / "g" / "Wrong.lgg", kGreet);
  CHECK(MessageOf([&] { LoadResourceSet(dir / "g", dir / "l"); }).find("Wrong") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("the fixtures validate cleanly") {
  for (const char* name : {"greet", "legal", "korean"}) {
    ValidationReport rep = Validate(LoadFixture(name));
    CHECK_MESSAGE(rep.ok, name);
    CHECK(rep.diagnostics.empty());
  }
}

}  // TEST_SUITE
