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

#ifndef LGG_TEXT_HPP_
#define LGG_TEXT_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace lgg::text {

// Canonical composition (NFC). Invalid UTF-8 sequences are replaced by U+FFFD.
std::string Nfc(std::string_view s);

// NFC followed by simple case folding of Latin-script letters. Other scripts
// are left alone.
std::string NormalizeForMatch(std::string_view s);

// Decodes one code point starting at byte offset `pos` and advances `pos`.
// Malformed input yields U+FFFD and advances by one byte.
char32_t DecodeUtf8(std::string_view s, size_t& pos);

bool IsWhitespace(char32_t c);

// The four marks the tokenizer always splits off as separate tokens.
inline bool IsDetachedPunct(char32_t c) {
  return c == U'.' || c == U',' || c == U'?' || c == U'!';
}

// 64-bit FNV-1a, used for resource content fingerprints.
class Fnv1a64 {
 public:
  void Update(std::string_view bytes);
  uint64_t digest() const { return state_; }
  std::string HexDigest() const;

 private:
  uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace lgg::text

#endif  // LGG_TEXT_HPP_
