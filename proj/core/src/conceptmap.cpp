#include "cliniqa/conceptmap.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cliniqa/embedded_resources.hpp"
#include "cliniqa/errors.hpp"
#include "cliniqa/text.hpp"
#include "resource_lines.hpp"

namespace cliniqa {

namespace {

std::string trim_copy(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(trim_copy(std::string_view(line).substr(start, tab == std::string::npos ? std::string::npos : tab - start)));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

}  // namespace

TagVocabulary::TagVocabulary(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
}

const TagVocabulary& TagVocabulary::builtin() {
  static const TagVocabulary vocab = [] {
    std::vector<std::string> names;
    for (auto line : detail::resource_lines(resources::kSemanticTags)) names.emplace_back(line);
    return TagVocabulary(std::move(names));
  }();
  return vocab;
}

TagVocabulary TagVocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open tag vocabulary '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const auto text = buffer.str();
  std::vector<std::string> names;
  for (auto line : detail::resource_lines(text)) names.emplace_back(line);
  return TagVocabulary(std::move(names));
}

bool TagVocabulary::contains(std::string_view tag) const {
  return std::binary_search(names_.begin(), names_.end(), tag);
}

Lexicon Lexicon::load(const std::filesystem::path& path, const TagVocabulary& tags) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open lexicon file '" + path.string() + "'");
  return parse(in, tags, path.string());
}

Lexicon Lexicon::parse(std::istream& in, const TagVocabulary& tags, std::string_view source_name) {
  Lexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto where = std::string(source_name) + ":" + std::to_string(line_no);
    const auto trimmed = trim_copy(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 3) {
      throw ParseError(where + ": expected 3 tab-separated fields, found " + std::to_string(fields.size()));
    }
    if (!tags.contains(fields[2])) throw ParseError(where + ": unknown semantic tag '" + fields[2] + "'");
    if (fields[1].empty()) throw ParseError(where + ": empty canonical phrase");
    LexiconEntry entry{tokenize_and_stem(fields[0]), fields[1], fields[2]};
    if (entry.surface_form.empty()) {
      throw ParseError(where + ": surface form '" + fields[0] + "' is empty after normalization");
    }
    try {
      lexicon.add(std::move(entry));
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  return lexicon;
}

void Lexicon::add(LexiconEntry entry) {
  if (entry.surface_form.empty()) throw ParseError("lexicon entry has an empty surface form");
  if (by_surface_.contains(entry.surface_form)) {
    throw ParseError("duplicate surface form '" + join_tokens(entry.surface_form) + "'");
  }
  if (auto it = tag_by_phrase_.find(entry.canonical_phrase); it != tag_by_phrase_.end()) {
    if (it->second != entry.semantic_tag) {
      throw ParseError("canonical phrase '" + entry.canonical_phrase + "' already tagged '" + it->second +
                       "', cannot retag as '" + entry.semantic_tag + "'");
    }
  } else {
    tag_by_phrase_.emplace(entry.canonical_phrase, entry.semantic_tag);
  }
  max_length_ = std::max(max_length_, entry.surface_form.size());
  by_surface_.emplace(entry.surface_form, entries_.size());
  entries_.push_back(std::move(entry));
}

std::optional<Lexicon::Match> Lexicon::longest_match(std::span<const std::string> tokens, std::size_t pos) const {
  if (pos >= tokens.size()) return std::nullopt;
  const auto available = std::min(max_length_, tokens.size() - pos);
  std::vector<std::string> key;
  for (std::size_t len = available; len >= 1; --len) {
    key.assign(tokens.begin() + static_cast<std::ptrdiff_t>(pos),
               tokens.begin() + static_cast<std::ptrdiff_t>(pos + len));
    if (auto it = by_surface_.find(key); it != by_surface_.end()) return Match{len, &entries_[it->second]};
  }
  return std::nullopt;
}

std::optional<std::string_view> Lexicon::tag_of(std::string_view canonical_phrase) const {
  auto it = tag_by_phrase_.find(canonical_phrase);
  if (it == tag_by_phrase_.end()) return std::nullopt;
  return std::string_view(it->second);
}

ConceptMapping map_sentences(std::span<const Sentence> sentences, const Lexicon& lexicon) {
  ConceptMapping mapping;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    const auto& tokens = sentences[s].tokens;
    std::size_t pos = 0;
    while (pos < tokens.size()) {
      if (auto match = lexicon.longest_match(tokens, pos)) {
        const auto& e = *match->entry;
        ++mapping.phrases[e.canonical_phrase];
        ++mapping.tags[e.semantic_tag];
        mapping.spans.push_back({s, pos, pos + match->length, e.canonical_phrase, e.semantic_tag});
        pos += match->length;
      } else {
        ++pos;
      }
    }
  }
  return mapping;
}

ConceptMapping map_text(std::string_view text, const Lexicon& lexicon) {
  const auto sentences = segment_sentences(text);
  return map_sentences(sentences, lexicon);
}

ConceptMapping map_document(const AbstractDoc& doc, const Lexicon& lexicon) {
  return map_sentences(doc.sentences, lexicon);
}

}  // namespace cliniqa
