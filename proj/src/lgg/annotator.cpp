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

#include "lgg/annotator.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

#include "lgg/error.hpp"
#include "lgg/text.hpp"

namespace lgg {

TokenizedText Tokenize(std::string_view input) {
  TokenizedText tt;
  tt.original = std::string(input);
  std::string_view s = tt.original;
  size_t pos = 0;
  size_t tok_begin = std::string_view::npos;
  auto flush = [&](size_t end) {
    if (tok_begin == std::string_view::npos) return;
    TextToken t;
    t.surface = std::string(s.substr(tok_begin, end - tok_begin));
    t.norm = text::NormalizeForMatch(t.surface);
    t.begin = tok_begin;
    t.end = end;
    tt.tokens.push_back(std::move(t));
    tok_begin = std::string_view::npos;
  };
  while (pos < s.size()) {
    size_t here = pos;
    char32_t c = text::DecodeUtf8(s, pos);
    if (text::IsWhitespace(c)) {
      flush(here);
    } else if (text::IsDetachedPunct(c)) {
      flush(here);
      tok_begin = here;
      flush(pos);
    } else if (tok_begin == std::string_view::npos) {
      tok_begin = here;
    }
  }
  flush(s.size());
  return tt;
}

Matcher::Matcher(std::shared_ptr<const Fst> fst) : fst_(std::move(fst)) {
  pieces_.resize(fst_->NumStates());
  for (uint32_t s = 0; s < fst_->NumStates(); ++s) {
    for (const Transition& t : fst_->Transitions(s)) {
      std::vector<Piece> ps;
      for (const Token& tok : t.input) {
        // Split the normalized token exactly like the text tokenizer would.
        TokenizedText sub = Tokenize(tok.text);
        for (size_t k = 0; k < sub.tokens.size(); ++k) {
          Piece p;
          p.text = std::move(sub.tokens[k].norm);
          size_t dummy = 0;
          p.punct = p.text.size() >= 1 && text::IsDetachedPunct(text::DecodeUtf8(p.text, dummy)) &&
                    dummy == p.text.size();
          bool adjacent = k == 0 ? true : sub.tokens[k - 1].end == sub.tokens[k].begin;
          p.attach = !p.punct && (k == 0 ? tok.glue : adjacent);
          ps.push_back(std::move(p));
        }
      }
      pieces_[s].push_back(std::move(ps));
    }
  }
}

Matcher::Best Matcher::LongestAt(const TokenizedText& tt, size_t start) const {
  const auto& words = tt.tokens;
  // Cursor: next text token j, byte offset o inside it (0 = at a boundary),
  // whether the previous piece was punctuation, and whether any piece has
  // been consumed yet.
  struct Cursor {
    size_t j;
    size_t o;
    bool prev_punct;
    bool started;
  };
  auto consume = [&](Cursor c, const std::vector<Piece>& ps) -> std::optional<Cursor> {
    for (const Piece& p : ps) {
      bool attach = p.attach && c.started && !c.prev_punct;
      if (c.j >= words.size()) return std::nullopt;
      const std::string& w = words[c.j].norm;
      if (attach) {
        if (c.o == 0) return std::nullopt;
      } else if (c.o != 0) {
        return std::nullopt;
      }
      if (w.compare(c.o, p.text.size(), p.text) != 0 || c.o + p.text.size() > w.size()) {
        return std::nullopt;
      }
      c.o += p.text.size();
      if (c.o == w.size()) {
        ++c.j;
        c.o = 0;
      }
      c.prev_punct = p.punct;
      c.started = true;
    }
    return c;
  };

  Best best;
  std::vector<std::pair<uint32_t, uint32_t>> path;
  std::set<std::tuple<uint32_t, size_t, size_t, bool>> visited;
  std::function<void(uint32_t, Cursor)> dfs = [&](uint32_t s, Cursor c) {
    if (s == Fst::kFinal) {
      if (c.o == 0 && c.j > best.end) {
        best.end = c.j;
        best.path = path;
      }
      return;
    }
    if (!visited.insert({s, c.j, c.o, c.prev_punct}).second) return;
    const auto& ts = fst_->Transitions(s);
    for (uint32_t k = 0; k < ts.size(); ++k) {
      auto next = consume(c, pieces_[s][k]);
      if (!next) continue;
      path.push_back({s, k});
      dfs(ts[k].dst, *next);
      path.pop_back();
    }
  };
  dfs(Fst::kStart, Cursor{start, 0, false, false});
  return best;
}

std::vector<Match> Matcher::MatchLongest(const TokenizedText& tt) const {
  std::vector<Match> out;
  size_t i = 0;
  while (i < tt.tokens.size()) {
    Best b = LongestAt(tt, i);
    if (b.end <= i) {
      ++i;
      continue;
    }
    Match m;
    m.name = fst_->name();
    m.begin = i;
    m.end = b.end;
    m.text = tt.original.substr(tt.tokens[i].begin, tt.tokens[b.end - 1].end - tt.tokens[i].begin);
    for (auto [s, k] : b.path) {
      for (const auto& o : fst_->Transitions(s)[k].outputs) {
        if (!IsPartMarker(o)) m.outputs.push_back(o);
      }
    }
    out.push_back(std::move(m));
    i = b.end;
  }
  return out;
}

bool Matcher::Accepts(const TokenizedText& tt) const {
  if (tt.tokens.empty()) return false;
  return LongestAt(tt, 0).end == tt.tokens.size();
}

std::vector<Match> MatchLongest(const Fst& fst, const TokenizedText& tt) {
  Matcher m(std::make_shared<const Fst>(fst));
  return m.MatchLongest(tt);
}

void Classifier::Add(std::string label, std::shared_ptr<const Fst> fst) {
  matchers_.insert_or_assign(std::move(label), Matcher(std::move(fst)));
}

std::vector<std::string> Classifier::labels() const {
  std::vector<std::string> out;
  for (const auto& [label, m] : matchers_) out.push_back(label);
  return out;
}

const Matcher* Classifier::Find(std::string_view label) const {
  auto it = matchers_.find(label);
  return it == matchers_.end() ? nullptr : &it->second;
}

ClassificationResult Classifier::Classify(std::string_view text, double threshold) const {
  if (matchers_.empty()) throw Error(ErrorCode::kInvalidArgument, "classifier has no intents");
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must lie in [0, 1]");
  }
  ClassificationResult r;
  r.label = std::string(kUnknownLabel);
  TokenizedText tt = Tokenize(text);
  if (tt.tokens.empty()) return r;
  size_t best = 0;
  const std::string* best_label = nullptr;
  for (const auto& [label, matcher] : matchers_) {
    IntentEvidence ev;
    ev.label = label;
    ev.matches = matcher.MatchLongest(tt);
    for (auto& m : ev.matches) {
      m.name = label;
      ev.longest = std::max(ev.longest, m.length());
    }
    // Labels iterate in lexicographic order, so strict '>' keeps the
    // smallest label on ties.
    if (ev.longest > best) {
      best = ev.longest;
      best_label = &label;
    }
    r.evidence.push_back(std::move(ev));
  }
  if (best > 0) {
    for (const auto& ev : r.evidence)
      if (ev.longest == best) r.tied.push_back(ev.label);
    if (r.tied.size() < 2) r.tied.clear();
  }
  r.score = static_cast<double>(best) / static_cast<double>(tt.tokens.size());
  if (best_label && r.score >= threshold) r.label = *best_label;
  return r;
}

double CoverageReport::PercentMatched(const std::string& label) const {
  if (lines.empty()) return 0.0;
  auto it = matched_lines.find(label);
  size_t n = it == matched_lines.end() ? 0 : it->second;
  return 100.0 * static_cast<double>(n) / static_cast<double>(lines.size());
}

CoverageReport Coverage(const Classifier& classifier, std::istream& corpus, size_t top_k) {
  CoverageReport report;
  for (const auto& label : classifier.labels()) report.matched_lines[label] = 0;
  std::map<std::string, size_t> bigrams;
  std::string line;
  size_t lineno = 0;
  while (std::getline(corpus, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    CoverageLine cl;
    cl.line = lineno;
    cl.text = line;
    TokenizedText tt = Tokenize(line);
    for (const auto& label : classifier.labels()) {
      auto ms = classifier.Find(label)->MatchLongest(tt);
      if (!ms.empty()) ++report.matched_lines[label];
      for (auto& m : ms) {
        m.name = label;
        cl.matches.push_back(std::move(m));
      }
    }
    if (cl.matches.empty()) {
      ++report.unmatched_lines;
      for (size_t i = 0; i + 1 < tt.tokens.size(); ++i) {
        ++bigrams[tt.tokens[i].norm + " " + tt.tokens[i + 1].norm];
      }
    }
    report.lines.push_back(std::move(cl));
  }
  if (corpus.bad()) throw Error(ErrorCode::kIo, "error reading corpus");
  std::vector<std::pair<std::string, size_t>> sorted(bigrams.begin(), bigrams.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (sorted.size() > top_k) sorted.resize(top_k);
  report.top_unmatched_bigrams = std::move(sorted);
  return report;
}

}  // namespace lgg
