// Copyright 2026 The taskaug Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "taskaug/eval/answer_parser.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace taskaug::eval {
namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
char lower(char c) { return is_upper(c) ? static_cast<char>(c - 'A' + 'a') : c; }

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = lower(c);
  return out;
}

struct Token {
  bool number;
  std::size_t begin, end;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (is_alpha(s[i]) || is_digit(s[i])) {
      const bool number = is_digit(s[i]);
      std::size_t j = i;
      while (j < s.size() && (number ? is_digit(s[j]) : is_alpha(s[j]))) ++j;
      out.push_back({number, i, j});
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

std::optional<std::string> first_word(std::string_view s, const std::vector<Token>& tokens,
                                      std::initializer_list<std::string_view> words) {
  for (const auto& t : tokens) {
    if (t.number) continue;
    const auto w = lower(s.substr(t.begin, t.end - t.begin));
    for (auto cand : words)
      if (w == cand) return w;
  }
  return std::nullopt;
}

constexpr std::array<std::string_view, 21> kNumberWords{
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
    "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen", "nineteen", "twenty"};

std::optional<std::string> parse_count(std::string_view s, const std::vector<Token>& tokens) {
  for (const auto& t : tokens) {
    const auto text = s.substr(t.begin, t.end - t.begin);
    if (!t.number) {
      const auto w = lower(text);
      for (std::size_t k = 0; k < kNumberWords.size(); ++k)
        if (w == kNumberWords[k]) return std::to_string(k);
      continue;
    }
    // Negative numbers, decimals and digits glued to letters are not counts.
    if (t.begin > 0 && (s[t.begin - 1] == '-' || is_alpha(s[t.begin - 1]))) continue;
    if (t.begin > 1 && (s[t.begin - 1] == '.' || s[t.begin - 1] == ',') && is_digit(s[t.begin - 2])) continue;
    if (t.end + 1 < s.size() && (s[t.end] == '.' || s[t.end] == ',') && is_digit(s[t.end + 1])) continue;
    if (t.end < s.size() && is_alpha(s[t.end])) continue;
    std::size_t z = 0;
    while (z + 1 < text.size() && text[z] == '0') ++z;
    return std::string(text.substr(z));
  }
  return std::nullopt;
}

bool is_filler(char c) { return c == ' ' || c == ':' || c == '*' || c == '"' || c == '\'' || c == '\t' || c == '='; }

std::optional<std::string> parse_quiz(std::string_view s, const std::vector<Token>& tokens) {
  static constexpr std::array<std::string_view, 9> kKeywords{"answer", "option", "choice", "is", "letter",
                                                             "image", "tile", "select", "pick"};
  static constexpr std::array<std::string_view, 8> kVerbs{"is", "was", "seems", "looks", "appears",
                                                          "fits", "matches", "shows"};
  // Whole response is one letter, possibly decorated.
  {
    std::size_t letters = 0;
    const Token* only = nullptr;
    for (const auto& t : tokens) {
      ++letters;
      only = &t;
    }
    if (letters == 1 && !only->number && only->end - only->begin == 1) {
      const char c = lower(s[only->begin]);
      if (c >= 'a' && c <= 'd') return std::string(1, c);
    }
  }
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    const auto& t = tokens[k];
    if (t.number || t.end - t.begin != 1) continue;
    const char raw = s[t.begin];
    const char c = lower(raw);
    if (c < 'a' || c > 'd') continue;
    const char before = t.begin > 0 ? s[t.begin - 1] : '\0';
    const char after = t.end < s.size() ? s[t.end] : '\0';

    if ((before == '(' || before == '[') && (after == ')' || after == ']')) return std::string(1, c);
    if (after == ')' || after == ']') return std::string(1, c);

    // "a"/"A" followed by a lowercase word is usually the article.
    bool article = false;
    if (c == 'a' && after == ' ' && t.end + 1 < s.size() && is_lower(s[t.end + 1]) && k + 1 < tokens.size()) {
      const auto next = lower(s.substr(tokens[k + 1].begin, tokens[k + 1].end - tokens[k + 1].begin));
      article = std::ranges::find(kVerbs, next) == kVerbs.end();
    }
    if (article) continue;

    if (k > 0 && !tokens[k - 1].number) {
      bool only_filler = true;
      for (std::size_t p = tokens[k - 1].end; p < t.begin; ++p) only_filler = only_filler && (is_filler(s[p]) || s[p] == '(');
      const auto prev = lower(s.substr(tokens[k - 1].begin, tokens[k - 1].end - tokens[k - 1].begin));
      if (only_filler && std::ranges::find(kKeywords, prev) != kKeywords.end()) return std::string(1, c);
    }

    if (!is_upper(raw)) continue;
    return std::string(1, c);
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> parse_answer(std::string_view raw, AnswerType type) {
  const auto tokens = tokenize(raw);
  switch (type) {
    case AnswerType::binary:
      return first_word(raw, tokens, {"yes", "no"});
    case AnswerType::color:
      return first_word(raw, tokens, {"red", "green"});
    case AnswerType::count:
      return parse_count(raw, tokens);
    case AnswerType::quiz4:
      return parse_quiz(raw, tokens);
  }
  return std::nullopt;
}

}  // namespace taskaug::eval
