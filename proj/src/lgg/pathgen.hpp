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

#ifndef LGG_PATHGEN_HPP_
#define LGG_PATHGEN_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lgg/fst.hpp"

namespace lgg {

// Position of a path in canonical (depth-first, transition-order)
// enumeration.
struct PathIndex {
  BigInt value = 0;

  std::string str() const { return value.str(); }
  friend bool operator==(const PathIndex&, const PathIndex&) = default;
  friend auto operator<=>(const PathIndex& a, const PathIndex& b) {
    return a.value < b.value ? std::strong_ordering::less
           : b.value < a.value ? std::strong_ordering::greater
                               : std::strong_ordering::equal;
  }
};

// Parses a non-negative decimal string. Throws Error(kInvalidArgument).
PathIndex ParsePathIndex(std::string_view decimal);

struct RenderedUtterance {
  std::string text;
  std::vector<std::string> outputs;
  PathIndex index;
  // Transition taken at each state along the path; identifies the path
  // even when two paths render the same text.
  std::vector<uint32_t> choices;
};

// Joins tokens with single spaces; glue-flagged tokens attach to the
// preceding text. The glue flag of the first token is ignored.
std::string Render(const TokenString& tokens);

// Renders the path given by one transition choice per visited state.
RenderedUtterance RenderChoices(const Fst& fst, const std::vector<uint32_t>& choices,
                                PathIndex index);

RenderedUtterance Unrank(const Fst& fst, const PathCountTable& counts, const PathIndex& idx);

// Lazy canonical-order enumeration over [begin, end). Memory is bounded by
// the depth of the automaton.
class Enumerator {
 public:
  Enumerator(const Fst& fst, const PathCountTable& counts, BigInt begin, BigInt end);
  Enumerator(const Fst& fst, const PathCountTable& counts)
      : Enumerator(fst, counts, 0, counts.total()) {}

  std::optional<RenderedUtterance> Next();

 private:
  void Descend(uint32_t state);
  bool Advance();

  const Fst& fst_;
  const PathCountTable& counts_;
  BigInt current_;
  BigInt end_;
  std::vector<uint32_t> states_;   // state visited at each depth
  std::vector<uint32_t> choices_;  // transition taken at each depth
};

std::vector<RenderedUtterance> Enumerate(const Fst& fst, const PathCountTable& counts,
                                         BigInt begin, BigInt end);

// Deterministic generator: std::mt19937_64 (bit-exact by the C++ standard)
// plus rejection sampling for bounded integers, so that every platform
// draws the same sequence for a given seed.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : engine_(seed) {}

  uint64_t NextWord() { return engine_(); }
  // Uniform in [0, bound); bound > 0.
  uint64_t UniformBelow(uint64_t bound);
  // Uniform in [0, bound) over arbitrary precision: draws ceil(bits/64)
  // words least significant first, masks to the bit length of bound-1 and
  // rejects values >= bound.
  BigInt UniformBelow(const BigInt& bound);

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(UniformBelow(static_cast<uint64_t>(i)));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Mixes a base seed with a string key (splitmix64 over FNV-1a).
uint64_t DeriveSeed(uint64_t seed, std::string_view key);

// Draws distinct indices uniformly without replacement from [0, total).
// Starts with rejection sampling and switches to shuffling the undrawn
// remainder once more than half of the range would have been drawn.
class DistinctIndexStream {
 public:
  DistinctIndexStream(BigInt total, SeededRng& rng, const BigInt& expected = 0);

  std::optional<BigInt> Next();

 private:
  void SwitchToShuffle();

  BigInt total_;
  SeededRng& rng_;
  std::set<BigInt> drawn_;
  bool shuffled_ = false;
  std::vector<BigInt> remainder_;
  size_t remainder_pos_ = 0;
};

// Uniform sampling over paths. With `distinct`, n must not exceed the total
// and results are pairwise distinct paths in draw order.
std::vector<RenderedUtterance> Sample(const Fst& fst, const PathCountTable& counts, uint64_t n,
                                      uint64_t seed, bool distinct);

}  // namespace lgg

#endif  // LGG_PATHGEN_HPP_
