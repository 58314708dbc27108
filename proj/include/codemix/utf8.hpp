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

#include <string>
#include <string_view>

namespace codemix::utf8 {

// Decodes UTF-8. Invalid bytes decode to U+FFFD one byte at a time, so every
// input is accepted.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);

bool is_space(char32_t cp);
bool is_punctuation(char32_t cp);
bool is_emoji(char32_t cp);
inline bool is_ascii_alnum(char32_t cp) {
  return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z') ||
         (cp >= U'0' && cp <= U'9');
}

// ASCII-only lowercase; other code points are returned unchanged.
std::u32string fold_case(std::u32string_view text);

}  // namespace codemix::utf8
