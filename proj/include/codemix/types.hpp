// Copyright 2026 The codemix Authors.
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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace codemix {

// Token-level language label.
enum class LanguageTag : std::uint8_t { kEnglish, kBengali, kUnknown };

// Universal POS tagset. Declaration order doubles as the interval-metric code
// used by Krippendorff's alpha, so do not reorder.
enum class UniversalTag : std::uint8_t {
  kAdj,
  kAdp,
  kDet,
  kNoun,
  kPron,
  kVerb,
  kAdv,
  kConj,
  kNum,
  kPrt,
  kSym,
  kX,
  kDem,
  kIntf,
  kRdp,
  kUn,
};

inline constexpr std::size_t kNumUniversalTags = 16;

inline constexpr std::array<UniversalTag, kNumUniversalTags> kAllUniversalTags = {
    UniversalTag::kAdj,  UniversalTag::kAdp,  UniversalTag::kDet,
    UniversalTag::kNoun, UniversalTag::kPron, UniversalTag::kVerb,
    UniversalTag::kAdv,  UniversalTag::kConj, UniversalTag::kNum,
    UniversalTag::kPrt,  UniversalTag::kSym,  UniversalTag::kX,
    UniversalTag::kDem,  UniversalTag::kIntf, UniversalTag::kRdp,
    UniversalTag::kUn,
};

// Lowercase short names as used in tagged output ("en", "bn", "un").
std::string_view to_string(LanguageTag tag);
std::optional<LanguageTag> parse_language(std::string_view text);

std::string_view to_string(UniversalTag tag);
std::optional<UniversalTag> parse_universal(std::string_view text);

inline std::size_t code_of(UniversalTag tag) { return static_cast<std::size_t>(tag); }

struct Token {
  std::string surface;
  std::optional<LanguageTag> language;
  std::optional<UniversalTag> pos;

  bool operator==(const Token&) const = default;
};

// Thrown when input files are unreadable or malformed.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a serialized model cannot be loaded or is inconsistent.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an output file cannot be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace codemix
