#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cliniqa/errors.hpp"

namespace cliniqa {

/// Evidence taxonomy used to restrict the knowledge base.
enum class DocClass { non_evidence = 0, intervention = 1, non_intervention = 2 };

inline constexpr std::size_t kDocClassCount = 3;

std::string_view to_string(DocClass c);
std::optional<DocClass> parse_doc_class(std::string_view name);
inline bool is_evidence(DocClass c) { return c != DocClass::non_evidence; }

struct Sentence {
  std::size_t index = 0;
  std::string text;
  std::vector<std::string> tokens;  // stemmed, stopword-filtered
  std::size_t word_count = 0;       // raw words, stopwords included
  std::size_t word_offset = 0;      // raw body words before this sentence
};

struct AbstractDoc {
  std::string doc_id;
  std::string title;
  std::string body;
  std::vector<Sentence> sentences;
  std::optional<DocClass> label;
  std::size_t title_word_count = 0;
  std::size_t word_count = 0;  // raw words of title and body

  /// Words a reader has consumed after finishing sentence `j`, title included.
  std::size_t words_through(std::size_t j) const;
};

/// Splits on . ! ? followed by whitespace and an uppercase letter or digit,
/// unless the period closes a bundled abbreviation.
std::vector<Sentence> segment_sentences(std::string_view body);

AbstractDoc make_document(std::string doc_id, std::string title, std::string body,
                          std::optional<DocClass> label = std::nullopt);

/// JSON-lines corpus: {"id", "title", "abstract", "label"?} per line.
std::vector<AbstractDoc> parse_corpus(const std::filesystem::path& path);
std::vector<AbstractDoc> parse_corpus(std::istream& in, std::string_view source_name = "<stream>");
void serialize_corpus(std::ostream& out, std::span<const AbstractDoc> docs);

}  // namespace cliniqa
