#include "cliniqa/text.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <unordered_set>

#include "cliniqa/embedded_resources.hpp"
#include "resource_lines.hpp"

namespace cliniqa {

namespace detail {
std::string porter_stem(std::string_view word);
}

namespace {

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

const std::unordered_set<std::string>& stopword_set() {
  static const std::unordered_set<std::string> words = [] {
    std::unordered_set<std::string> out;
    for (auto line : detail::resource_lines(resources::kStopwords)) out.emplace(line);
    return out;
  }();
  return words;
}

bool stemmable(std::string_view token) {
  return std::all_of(token.begin(), token.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  const auto n = text.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (is_word_byte(c)) {
      current.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
    } else if (c == '-' && !current.empty() && i + 1 < n && is_word_byte(static_cast<unsigned char>(text[i + 1]))) {
      current.push_back('-');
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string stem(std::string_view token) {
  if (!stemmable(token)) return std::string(token);
  std::string current(token);
  // Porter is not idempotent on its own output ("agreed" -> "agre" -> "agr");
  // iterating to the fixed point makes the normalization idempotent.
  for (int round = 0; round < 8; ++round) {
    auto next = detail::porter_stem(current);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

bool is_stopword(std::string_view lowercase_token) {
  return stopword_set().contains(std::string(lowercase_token));
}

std::vector<std::string> tokenize_and_stem(std::string_view text) {
  std::vector<std::string> out;
  for (auto& token : tokenize(text)) {
    if (is_stopword(token)) continue;
    auto stemmed = stem(token);
    if (stemmed.empty() || is_stopword(stemmed)) continue;
    out.push_back(std::move(stemmed));
  }
  return out;
}

std::string join_tokens(const std::vector<std::string>& tokens, std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.append(separator);
    out.append(tokens[i]);
  }
  return out;
}

}  // namespace cliniqa
