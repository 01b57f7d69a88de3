#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cliniqa/corpus.hpp"

namespace cliniqa {

/// Closed set of semantic tag names a lexicon may use.
class TagVocabulary {
 public:
  TagVocabulary() = default;
  explicit TagVocabulary(std::vector<std::string> names);

  /// The vocabulary compiled into the library from data/semantic_tags.txt.
  static const TagVocabulary& builtin();
  static TagVocabulary load(const std::filesystem::path& path);

  bool contains(std::string_view tag) const;
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;  // sorted, unique
};

struct LexiconEntry {
  std::vector<std::string> surface_form;  // stemmed tokens
  std::string canonical_phrase;
  std::string semantic_tag;
};

/// Surface forms -> (canonical phrase, semantic tag). Stand-in for a
/// Metathesaurus lookup: every surface form is normalized with
/// tokenize_and_stem so lookups line up with document tokens.
class Lexicon {
 public:
  Lexicon() = default;

  /// Tab-separated `surface_form \t canonical_phrase \t semantic_tag`; `#` comments.
  static Lexicon load(const std::filesystem::path& path, const TagVocabulary& tags = TagVocabulary::builtin());
  static Lexicon parse(std::istream& in, const TagVocabulary& tags = TagVocabulary::builtin(),
                       std::string_view source_name = "<stream>");

  /// Throws ParseError on an empty or duplicate surface form, or when the
  /// canonical phrase was already registered under a different tag.
  void add(LexiconEntry entry);

  struct Match {
    std::size_t length = 0;
    const LexiconEntry* entry = nullptr;
  };
  /// Longest entry whose surface form starts at tokens[pos].
  std::optional<Match> longest_match(std::span<const std::string> tokens, std::size_t pos) const;

  std::optional<std::string_view> tag_of(std::string_view canonical_phrase) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<LexiconEntry>& entries() const { return entries_; }

 private:
  std::vector<LexiconEntry> entries_;
  std::map<std::vector<std::string>, std::size_t> by_surface_;
  std::map<std::string, std::string, std::less<>> tag_by_phrase_;
  std::size_t max_length_ = 0;
};

struct PhraseSpan {
  std::size_t sentence = 0;
  std::size_t begin = 0;  // token range [begin, end) within the sentence
  std::size_t end = 0;
  std::string phrase;
  std::string tag;
};

/// Medical phrases and semantic tags found in a text, with occurrence counts.
struct ConceptMapping {
  std::map<std::string, std::size_t> phrases;
  std::map<std::string, std::size_t> tags;
  std::vector<PhraseSpan> spans;

  bool empty() const { return spans.empty(); }
};

/// Greedy longest-match-from-the-left over each sentence's tokens; matches never overlap.
ConceptMapping map_sentences(std::span<const Sentence> sentences, const Lexicon& lexicon);
ConceptMapping map_text(std::string_view text, const Lexicon& lexicon);
ConceptMapping map_document(const AbstractDoc& doc, const Lexicon& lexicon);

}  // namespace cliniqa
