// Copyright 2026 The W1KP Kit Authors
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

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace w1kp {

/// A prompt split into its main description and the trailing keyword tail,
/// e.g. "cat beside road, 4k" -> {"cat beside road", {"4k"}}.
struct PromptSplit {
  std::string main;
  std::vector<std::string> keywords;

  friend bool operator==(const PromptSplit&, const PromptSplit&) = default;
};

/// Words in a comma token that starts the keyword tail: fewer than this many.
inline constexpr std::size_t kKeywordMaxWords = 4;

inline std::size_t word_count(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::size_t count = 0;
  for (std::string word; in >> word;) ++count;
  return count;
}

/// Splits on commas. The first token is always main. The first later token
/// with fewer than four words starts the keyword tail, which runs to the end;
/// longer tokens before it are appended to main. Tokens are trimmed, blank
/// tokens after the first are dropped, and main joins its tokens with ", ".
inline PromptSplit split_prompt(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    auto token = text.substr(start, comma - start);
    const auto first = token.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos) {
      const auto last = token.find_last_not_of(" \t\r\n");
      tokens.emplace_back(token.substr(first, last - first + 1));
    } else if (start == 0) {
      tokens.emplace_back();  // main stays first even when blank
    }
    start = comma + 1;
  }

  PromptSplit split;
  bool in_tail = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && !in_tail && word_count(tokens[i]) < kKeywordMaxWords) in_tail = true;
    if (in_tail) {
      split.keywords.push_back(tokens[i]);
    } else {
      if (!split.main.empty()) split.main += ", ";
      split.main += tokens[i];
    }
  }
  return split;
}

inline nlohmann::json to_json(const PromptSplit& s) {
  return {{"main", s.main}, {"keywords", s.keywords}};
}

}  // namespace w1kp
