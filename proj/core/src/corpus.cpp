#include "cliniqa/corpus.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_set>

#include <json.hpp>

#include "cliniqa/embedded_resources.hpp"
#include "cliniqa/text.hpp"
#include "resource_lines.hpp"

namespace cliniqa {

namespace {

const std::unordered_set<std::string>& abbreviations() {
  static const std::unordered_set<std::string> set = [] {
    std::unordered_set<std::string> out;
    for (auto line : detail::resource_lines(resources::kAbbreviations)) out.emplace(line);
    return out;
  }();
  return set;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_upper_or_digit(char c) { return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Lowercased whitespace-delimited word ending at `end` (inclusive).
std::string word_ending_at(std::string_view text, std::size_t end) {
  std::size_t begin = end;
  while (begin > 0 && !is_space(text[begin - 1])) --begin;
  std::string word(text.substr(begin, end - begin + 1));
  for (auto& ch : word) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  while (!word.empty() && (word.front() == '(' || word.front() == '"' || word.front() == '\'')) word.erase(0, 1);
  return word;
}

bool is_boundary(std::string_view text, std::size_t i) {
  const char c = text[i];
  if (c != '.' && c != '!' && c != '?') return false;
  std::size_t next = i + 1;
  while (next < text.size() && (text[next] == ')' || text[next] == '"' || text[next] == '\'')) ++next;
  if (next >= text.size() || !is_space(text[next])) return false;
  while (next < text.size() && is_space(text[next])) ++next;
  if (next >= text.size() || !is_upper_or_digit(text[next])) return false;
  if (c == '.' && abbreviations().contains(word_ending_at(text, i))) return false;
  return true;
}

}  // namespace

std::string_view to_string(DocClass c) {
  switch (c) {
    case DocClass::non_evidence: return "non_evidence";
    case DocClass::intervention: return "intervention";
    case DocClass::non_intervention: return "non_intervention";
  }
  return "non_evidence";
}

std::optional<DocClass> parse_doc_class(std::string_view name) {
  if (name == "non_evidence") return DocClass::non_evidence;
  if (name == "intervention") return DocClass::intervention;
  if (name == "non_intervention") return DocClass::non_intervention;
  return std::nullopt;
}

std::size_t AbstractDoc::words_through(std::size_t j) const {
  if (j >= sentences.size()) {
    throw DataError("sentence index " + std::to_string(j) + " out of range for document '" + doc_id + "' with " +
                    std::to_string(sentences.size()) + " sentences");
  }
  const auto& s = sentences[j];
  return title_word_count + s.word_offset + s.word_count;
}

std::vector<Sentence> segment_sentences(std::string_view body) {
  std::vector<Sentence> out;
  std::size_t start = 0;
  std::size_t offset = 0;
  auto emit = [&](std::size_t end) {
    auto piece = trim(body.substr(start, end - start));
    if (piece.empty()) return;
    Sentence s;
    s.index = out.size();
    s.text = std::string(piece);
    s.tokens = tokenize_and_stem(s.text);
    s.word_count = tokenize(s.text).size();
    s.word_offset = offset;
    offset += s.word_count;
    out.push_back(std::move(s));
  };
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (is_boundary(body, i)) {
      std::size_t end = i + 1;
      while (end < body.size() && (body[end] == ')' || body[end] == '"' || body[end] == '\'')) ++end;
      emit(end);
      start = end;
      i = end - 1;
    }
  }
  emit(body.size());
  return out;
}

AbstractDoc make_document(std::string doc_id, std::string title, std::string body, std::optional<DocClass> label) {
  AbstractDoc doc;
  doc.doc_id = std::move(doc_id);
  doc.title = std::move(title);
  doc.body = std::move(body);
  doc.label = label;
  doc.sentences = segment_sentences(doc.body);
  doc.title_word_count = tokenize(doc.title).size();
  doc.word_count = doc.title_word_count;
  for (const auto& s : doc.sentences) doc.word_count += s.word_count;
  return doc;
}

std::vector<AbstractDoc> parse_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open corpus file '" + path.string() + "'");
  return parse_corpus(in, path.string());
}

std::vector<AbstractDoc> parse_corpus(std::istream& in, std::string_view source_name) {
  std::vector<AbstractDoc> docs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto where = std::string(source_name) + ":" + std::to_string(line_no);
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(where + ": invalid JSON record: " + e.what());
    }
    if (!record.is_object()) throw ParseError(where + ": record is not a JSON object");
    auto text_field = [&](const char* key, bool required) -> std::string {
      auto it = record.find(key);
      if (it == record.end() || it->is_null()) {
        if (required) throw ParseError(where + ": record missing required field '" + key + "'");
        return {};
      }
      if (!it->is_string()) throw ParseError(where + ": field '" + key + "' must be a string");
      return it->get<std::string>();
    };
    auto id = text_field("id", true);
    if (id.empty()) throw ParseError(where + ": record has an empty 'id'");
    auto body = text_field("abstract", true);
    auto title = text_field("title", false);
    std::optional<DocClass> label;
    if (auto l = text_field("label", false); !l.empty()) {
      label = parse_doc_class(l);
      if (!label) throw ParseError(where + ": record '" + id + "' has unknown label '" + l + "'");
    }
    if (!seen.insert(id).second) throw ParseError(where + ": duplicate doc id '" + id + "'");
    docs.push_back(make_document(std::move(id), std::move(title), std::move(body), label));
  }
  return docs;
}

void serialize_corpus(std::ostream& out, std::span<const AbstractDoc> docs) {
  for (const auto& doc : docs) {
    nlohmann::ordered_json record;
    record["id"] = doc.doc_id;
    record["title"] = doc.title;
    record["abstract"] = doc.body;
    if (doc.label) record["label"] = std::string(to_string(*doc.label));
    out << record.dump() << '\n';
  }
}

}  // namespace cliniqa
