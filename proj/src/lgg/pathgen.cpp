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

#include "lgg/pathgen.hpp"

#include "lgg/error.hpp"
#include "lgg/text.hpp"

namespace lgg {

PathIndex ParsePathIndex(std::string_view decimal) {
  if (decimal.empty() || decimal.size() > 4096) {
    throw Error(ErrorCode::kInvalidArgument, "bad path index '" + std::string(decimal) + "'");
  }
  BigInt v = 0;
  for (char c : decimal) {
    if (c < '0' || c > '9') {
      throw Error(ErrorCode::kInvalidArgument, "bad path index '" + std::string(decimal) + "'");
    }
    v = v * 10 + (c - '0');
  }
  return {v};
}

std::string Render(const TokenString& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && !tokens[i].glue) out.push_back(' ');
    out += tokens[i].text;
  }
  return out;
}

RenderedUtterance RenderChoices(const Fst& fst, const std::vector<uint32_t>& choices,
                                PathIndex index) {
  TokenString tokens;
  RenderedUtterance u;
  uint32_t s = Fst::kStart;
  for (uint32_t c : choices) {
    const Transition& t = fst.Transitions(s).at(c);
    tokens.insert(tokens.end(), t.input.begin(), t.input.end());
    u.outputs.insert(u.outputs.end(), t.outputs.begin(), t.outputs.end());
    s = t.dst;
  }
  u.text = Render(tokens);
  u.index = std::move(index);
  u.choices = choices;
  return u;
}

RenderedUtterance Unrank(const Fst& fst, const PathCountTable& counts, const PathIndex& idx) {
  if (idx.value < 0 || idx.value >= counts.total()) {
    throw Error(ErrorCode::kOutOfRange, "path index " + idx.str() + " out of range [0, " +
                                            counts.total().str() + ")");
  }
  BigInt rest = idx.value;
  std::vector<uint32_t> choices;
  uint32_t s = Fst::kStart;
  while (s != Fst::kFinal) {
    const auto& ts = fst.Transitions(s);
    uint32_t pick = 0;
    for (; pick < ts.size(); ++pick) {
      const BigInt& c = counts.at(ts[pick].dst);
      if (rest < c) break;
      rest -= c;
    }
    if (pick == ts.size()) throw Error(ErrorCode::kInternal, "count table inconsistent with fst");
    choices.push_back(pick);
    s = ts[pick].dst;
  }
  return RenderChoices(fst, choices, idx);
}

Enumerator::Enumerator(const Fst& fst, const PathCountTable& counts, BigInt begin, BigInt end)
    : fst_(fst), counts_(counts), current_(std::move(begin)), end_(std::move(end)) {
  if (current_ < 0 || end_ > counts_.total() || current_ > end_) {
    throw Error(ErrorCode::kOutOfRange, "range [" + current_.str() + ", " + end_.str() +
                                            ") outside [0, " + counts_.total().str() + ")");
  }
  if (current_ == end_) return;
  // Position on path `current_` by unranking.
  BigInt rest = current_;
  uint32_t s = Fst::kStart;
  while (s != Fst::kFinal) {
    const auto& ts = fst_.Transitions(s);
    uint32_t pick = 0;
    for (; pick < ts.size(); ++pick) {
      const BigInt& c = counts_.at(ts[pick].dst);
      if (rest < c) break;
      rest -= c;
    }
    states_.push_back(s);
    choices_.push_back(pick);
    s = ts.at(pick).dst;
  }
}

void Enumerator::Descend(uint32_t state) {
  while (state != Fst::kFinal) {
    const auto& ts = fst_.Transitions(state);
    uint32_t pick = 0;
    while (pick < ts.size() && counts_.at(ts[pick].dst) == 0) ++pick;
    states_.push_back(state);
    choices_.push_back(pick);
    state = ts.at(pick).dst;
  }
}

bool Enumerator::Advance() {
  while (!states_.empty()) {
    uint32_t s = states_.back();
    const auto& ts = fst_.Transitions(s);
    uint32_t next = choices_.back() + 1;
    while (next < ts.size() && counts_.at(ts[next].dst) == 0) ++next;
    if (next < ts.size()) {
      choices_.back() = next;
      Descend(ts[next].dst);
      return true;
    }
    states_.pop_back();
    choices_.pop_back();
  }
  return false;
}

std::optional<RenderedUtterance> Enumerator::Next() {
  if (current_ >= end_) return std::nullopt;
  RenderedUtterance u = RenderChoices(fst_, choices_, PathIndex{current_});
  ++current_;
  if (current_ < end_ && !Advance()) {
    throw Error(ErrorCode::kInternal, "enumeration ended before the count table total");
  }
  return u;
}

std::vector<RenderedUtterance> Enumerate(const Fst& fst, const PathCountTable& counts,
                                         BigInt begin, BigInt end) {
  std::vector<RenderedUtterance> out;
  Enumerator e(fst, counts, std::move(begin), std::move(end));
  while (auto u = e.Next()) out.push_back(std::move(*u));
  return out;
}

uint64_t SeededRng::UniformBelow(uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "empty range");
  const uint64_t threshold = (0 - bound) % bound;
  while (true) {
    uint64_t x = engine_();
    if (x >= threshold) return x % bound;
  }
}

BigInt SeededRng::UniformBelow(const BigInt& bound) {
  if (bound <= 0) throw Error(ErrorCode::kInvalidArgument, "empty range");
  if (bound == 1) return 0;
  const BigInt top = bound - 1;
  const unsigned bits = boost::multiprecision::msb(top) + 1;
  const unsigned words = (bits + 63) / 64;
  const unsigned top_bits = bits - 64 * (words - 1);
  while (true) {
    BigInt x = 0;
    for (unsigned w = 0; w < words; ++w) {
      BigInt word = engine_();
      if (w == words - 1 && top_bits < 64) word &= (BigInt(1) << top_bits) - 1;
      x |= word << (64 * w);
    }
    if (x < bound) return x;
  }
}

uint64_t DeriveSeed(uint64_t seed, std::string_view key) {
  text::Fnv1a64 h;
  h.Update(key);
  uint64_t z = seed ^ h.digest();
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

DistinctIndexStream::DistinctIndexStream(BigInt total, SeededRng& rng, const BigInt& expected)
    : total_(std::move(total)), rng_(rng) {
  if (expected * 2 > total_) SwitchToShuffle();
}

void DistinctIndexStream::SwitchToShuffle() {
  shuffled_ = true;
  remainder_.clear();
  for (BigInt i = 0; i < total_; ++i) {
    if (!drawn_.count(i)) remainder_.push_back(i);
  }
  rng_.Shuffle(remainder_);
  remainder_pos_ = 0;
}

std::optional<BigInt> DistinctIndexStream::Next() {
  if (!shuffled_ && (BigInt(drawn_.size()) + 1) * 2 > total_) SwitchToShuffle();
  if (shuffled_) {
    if (remainder_pos_ >= remainder_.size()) return std::nullopt;
    return remainder_[remainder_pos_++];
  }
  while (true) {
    BigInt i = rng_.UniformBelow(total_);
    if (drawn_.insert(i).second) return i;
  }
}

std::vector<RenderedUtterance> Sample(const Fst& fst, const PathCountTable& counts, uint64_t n,
                                      uint64_t seed, bool distinct) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "sample size must be at least 1");
  const BigInt& total = counts.total();
  SeededRng rng(seed);
  std::vector<RenderedUtterance> out;
  out.reserve(n);
  if (!distinct) {
    for (uint64_t k = 0; k < n; ++k) out.push_back(Unrank(fst, counts, {rng.UniformBelow(total)}));
    return out;
  }
  if (BigInt(n) > total) {
    throw Error(ErrorCode::kOutOfRange, "cannot draw " + std::to_string(n) +
                                            " distinct paths from " + total.str());
  }
  DistinctIndexStream stream(total, rng, BigInt(n));
  for (uint64_t k = 0; k < n; ++k) out.push_back(Unrank(fst, counts, {*stream.Next()}));
  return out;
}

}  // namespace lgg
