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

#ifndef LGG_ANNOTATOR_HPP_
#define LGG_ANNOTATOR_HPP_

#include <istream>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "lgg/fst.hpp"

namespace lgg {

struct TextToken {
  std::string surface;  // as written
  std::string norm;     // NFC, Latin case-folded
  size_t begin = 0;     // byte span in the original text
  size_t end = 0;
};

struct TokenizedText {
  std::string original;
  std::vector<TextToken> tokens;
};

// Splits on Unicode whitespace and detaches . , ? ! as separate tokens.
TokenizedText Tokenize(std::string_view text);

struct Match {
  std::string name;  // intent label or graph name
  size_t begin = 0;  // token span [begin, end)
  size_t end = 0;
  std::string text;
  std::vector<std::string> outputs;

  size_t length() const { return end - begin; }
};

// Matches token sequences of a compiled Fst against tokenized text. Fst
// tokens are normalized and split the same way the tokenizer splits text,
// and glue-flagged tokens must continue the current text token, so that
// "아내" + "^와" matches the single text token "아내와".
class Matcher {
 public:
  explicit Matcher(std::shared_ptr<const Fst> fst);

  const Fst& fst() const { return *fst_; }

  // Leftmost-longest, non-overlapping.
  std::vector<Match> MatchLongest(const TokenizedText& tt) const;

  // True iff the whole text is one accepted sequence.
  bool Accepts(const TokenizedText& tt) const;

 private:
  struct Piece {
    std::string text;
    bool attach = false;
    bool punct = false;
  };
  struct Best {
    size_t end = 0;
    std::vector<std::pair<uint32_t, uint32_t>> path;
  };

  // Longest accepting prefix starting at token `start`; 0 if none.
  Best LongestAt(const TokenizedText& tt, size_t start) const;

  std::shared_ptr<const Fst> fst_;
  std::vector<std::vector<std::vector<Piece>>> pieces_;  // [state][transition]
};

std::vector<Match> MatchLongest(const Fst& fst, const TokenizedText& tt);

struct IntentEvidence {
  std::string label;
  std::vector<Match> matches;
  size_t longest = 0;
};

struct ClassificationResult {
  std::string label;  // "unknown" when below threshold
  double score = 0.0;
  std::vector<IntentEvidence> evidence;  // one per intent, label order
  std::vector<std::string> tied;         // labels sharing the best score (if > 1)
};

inline constexpr std::string_view kUnknownLabel = "unknown";
inline constexpr double kDefaultThreshold = 0.5;

class Classifier {
 public:
  void Add(std::string label, std::shared_ptr<const Fst> fst);

  size_t size() const { return matchers_.size(); }
  std::vector<std::string> labels() const;
  const Matcher* Find(std::string_view label) const;

  // score(intent) = longest match / token count; argmax with the
  // lexicographically smallest label winning ties.
  ClassificationResult Classify(std::string_view text, double threshold = kDefaultThreshold) const;

 private:
  std::map<std::string, Matcher, std::less<>> matchers_;
};

struct CoverageLine {
  size_t line = 0;  // 1-based
  std::string text;
  std::vector<Match> matches;  // across intents, Match::name = label
};

struct CoverageReport {
  std::vector<CoverageLine> lines;
  std::map<std::string, size_t> matched_lines;  // every intent present
  size_t unmatched_lines = 0;
  std::vector<std::pair<std::string, size_t>> top_unmatched_bigrams;

  double PercentMatched(const std::string& label) const;
};

inline constexpr size_t kDefaultBigramCount = 50;

CoverageReport Coverage(const Classifier& classifier, std::istream& corpus,
                        size_t top_k = kDefaultBigramCount);

}  // namespace lgg

#endif  // LGG_ANNOTATOR_HPP_
