#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cliniqa {

/// Lowercased raw tokens. A token is a maximal run of letters, digits and
/// hyphens that sit between two alphanumeric characters ("K-ras" stays whole).
/// Bytes >= 0x80 are treated as letters so UTF-8 words are kept intact.
std::vector<std::string> tokenize(std::string_view text);

/// Porter (1980) suffix stripping applied until a fixed point is reached.
/// Tokens containing digits or hyphens are returned unchanged.
std::string stem(std::string_view token);

bool is_stopword(std::string_view lowercase_token);

/// The normalization shared by documents, lexicon entries and questions:
/// tokenize, drop stopwords, stem, drop stems that collide with a stopword.
/// Idempotent: tokenize_and_stem(join(tokenize_and_stem(t))) == tokenize_and_stem(t).
std::vector<std::string> tokenize_and_stem(std::string_view text);

std::string join_tokens(const std::vector<std::string>& tokens, std::string_view separator = " ");

}  // namespace cliniqa
