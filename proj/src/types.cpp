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

#include "codemix/types.hpp"

#include <algorithm>
#include <cctype>

namespace codemix {
namespace {

constexpr std::array<std::string_view, kNumUniversalTags> kUniversalNames = {
    "ADJ", "ADP", "DET", "NOUN", "PRON", "VERB", "ADV",  "CONJ",
    "NUM", "PRT", "SYM", "X",    "DEM",  "INTF", "RDP", "UN",
};

std::string upper(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

}  // namespace

std::string_view to_string(LanguageTag tag) {
  switch (tag) {
    case LanguageTag::kEnglish:
      return "en";
    case LanguageTag::kBengali:
      return "bn";
    case LanguageTag::kUnknown:
      return "un";
  }
  return "un";
}

std::optional<LanguageTag> parse_language(std::string_view text) {
  const std::string u = upper(text);
  if (u == "EN") return LanguageTag::kEnglish;
  if (u == "BN") return LanguageTag::kBengali;
  if (u == "UN") return LanguageTag::kUnknown;
  return std::nullopt;
}

std::string_view to_string(UniversalTag tag) {
  return kUniversalNames[static_cast<std::size_t>(tag)];
}

std::optional<UniversalTag> parse_universal(std::string_view text) {
  for (std::size_t i = 0; i < kUniversalNames.size(); ++i) {
    if (kUniversalNames[i] == text) return static_cast<UniversalTag>(i);
  }
  return std::nullopt;
}

}  // namespace codemix
