#include "cliniqa/index.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cliniqa/errors.hpp"
#include "numeric_format.hpp"

namespace cliniqa {

namespace {

constexpr std::string_view kIndexMagic = "cliniqa-index";
constexpr int kIndexVersion = 1;

std::size_t set_index(FeatureSet set) { return static_cast<std::size_t>(set); }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

SparseVector concat(const SparseVector& a, const SparseVector& b, std::uint32_t offset) {
  SparseVector out = a;
  for (std::size_t i = 0; i < b.nnz(); ++i) {
    out.indices.push_back(b.indices[i] + offset);
    out.values.push_back(b.values[i]);
  }
  return out;
}

SparseVector normalized_copy(const SparseVector& v) {
  SparseVector out = v;
  const auto length = std::sqrt(v.squared_norm());
  if (length == 0.0) return out;
  for (auto& x : out.values) x /= length;
  return out;
}

}  // namespace

std::string_view to_string(Weighting w) {
  switch (w) {
    case Weighting::tf: return "tf";
    case Weighting::tfidf: return "tfidf";
    case Weighting::normalized: return "normalized";
  }
  return "tf";
}

std::string_view to_string(FeatureSet f) {
  switch (f) {
    case FeatureSet::phrases: return "phrases";
    case FeatureSet::tags: return "tags";
    case FeatureSet::combined: return "combined";
  }
  return "phrases";
}

FeatureSet parse_feature_set(std::string_view name) {
  if (name == "phrases") return FeatureSet::phrases;
  if (name == "tags") return FeatureSet::tags;
  if (name == "combined" || name == "phrases+tags") return FeatureSet::combined;
  throw std::invalid_argument("unknown feature set '" + std::string(name) + "' (expected phrases, tags or combined)");
}

double SparseVector::squared_norm() const {
  double sum = 0.0;
  for (double v : values) sum += v * v;
  return sum;
}

double idf(std::size_t document_count, std::size_t document_frequency, double log_base) {
  if (document_count == 0 || document_frequency == 0 || document_frequency > document_count) {
    throw std::domain_error("idf requires 1 <= DF <= N (N=" + std::to_string(document_count) +
                            ", DF=" + std::to_string(document_frequency) + ")");
  }
  if (!(log_base > 0.0) || log_base == 1.0) throw std::domain_error("idf log base must be positive and != 1");
  const double ratio = static_cast<double>(document_count) / static_cast<double>(document_frequency);
  return std::log(ratio) / std::log(log_base);
}

double euclidean_length(std::span<const double> weights) {
  double sum = 0.0;
  for (double w : weights) sum += w * w;
  return std::sqrt(sum);
}

NormalizedVector normalize(std::span<const double> weights) {
  NormalizedVector out{std::vector<double>(weights.begin(), weights.end()), false};
  const double length = euclidean_length(weights);
  if (length == 0.0) {
    out.zero_norm = true;
    return out;
  }
  for (auto& w : out.values) w /= length;
  return out;
}

WeightedMatrix::WeightedMatrix(Weighting scheme, std::vector<std::string> columns, std::vector<SparseVector> rows)
    : scheme_(scheme), columns_(std::move(columns)), rows_(std::move(rows)) {}

std::vector<double> WeightedMatrix::dense_row(std::size_t r) const {
  std::vector<double> out(columns_.size(), 0.0);
  const auto& v = rows_.at(r);
  for (std::size_t i = 0; i < v.nnz(); ++i) out[v.indices[i]] = v.values[i];
  return out;
}

double WeightedMatrix::at(std::size_t r, std::size_t c) const {
  const auto& v = rows_.at(r);
  auto it = std::lower_bound(v.indices.begin(), v.indices.end(), static_cast<std::uint32_t>(c));
  if (it == v.indices.end() || *it != c) return 0.0;
  return v.values[static_cast<std::size_t>(it - v.indices.begin())];
}

TermCounts term_frequency(const ConceptMapping& mapping) {
  TermCounts counts;
  for (const auto& [phrase, n] : mapping.phrases) {
    if (n) counts.phrases.emplace(phrase, n);
  }
  for (const auto& [tag, n] : mapping.tags) {
    if (n) counts.tags.emplace(tag, n);
  }
  return counts;
}

DocumentIndex DocumentIndex::build(std::vector<std::string> doc_ids, std::span<const TermCounts> counts,
                                   IndexOptions options) {
  if (doc_ids.empty()) throw std::invalid_argument("cannot build an index over an empty collection");
  if (doc_ids.size() != counts.size()) throw std::invalid_argument("doc id and term count lists differ in length");

  DocumentIndex index;
  index.log_base_ = options.log_base;
  index.doc_ids_ = std::move(doc_ids);
  for (std::size_t r = 0; r < index.doc_ids_.size(); ++r) {
    if (!index.row_by_id_.emplace(index.doc_ids_[r], r).second) {
      throw std::invalid_argument("duplicate doc id '" + index.doc_ids_[r] + "'");
    }
  }

  std::set<std::string> phrase_terms;
  std::set<std::string> tag_terms;
  for (const auto& c : counts) {
    for (const auto& [term, n] : c.phrases) if (n) phrase_terms.insert(term);
    for (const auto& [term, n] : c.tags) if (n) tag_terms.insert(term);
  }
  index.vocab_[0].assign(phrase_terms.begin(), phrase_terms.end());
  index.vocab_[1].assign(tag_terms.begin(), tag_terms.end());
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t c = 0; c < index.vocab_[k].size(); ++c) index.column_by_term_[k].emplace(index.vocab_[k][c], c);
  }

  std::vector<SparseVector> phrase_rows;
  std::vector<SparseVector> tag_rows;
  auto to_row = [](const std::map<std::string, std::size_t>& terms, const auto& columns) {
    SparseVector row;
    for (const auto& [term, n] : terms) {
      if (!n) continue;
      row.indices.push_back(static_cast<std::uint32_t>(columns.find(term)->second));
      row.values.push_back(static_cast<double>(n));
    }
    return row;
  };
  for (const auto& c : counts) {
    phrase_rows.push_back(to_row(c.phrases, index.column_by_term_[0]));
    tag_rows.push_back(to_row(c.tags, index.column_by_term_[1]));
  }
  index.matrices_[index.slot(FeatureSet::phrases, Weighting::tf)] =
      WeightedMatrix(Weighting::tf, index.vocab_[0], std::move(phrase_rows));
  index.matrices_[index.slot(FeatureSet::tags, Weighting::tf)] =
      WeightedMatrix(Weighting::tf, index.vocab_[1], std::move(tag_rows));
  index.rebuild_derived();
  return index;
}

std::size_t DocumentIndex::slot(FeatureSet set, Weighting scheme) const {
  return set_index(set) * 3 + static_cast<std::size_t>(scheme);
}

void DocumentIndex::rebuild_derived() {
  const auto n = doc_ids_.size();
  vocab_[2] = vocab_[0];
  vocab_[2].insert(vocab_[2].end(), vocab_[1].begin(), vocab_[1].end());

  std::vector<SparseVector> tfidf_rows[2];
  for (std::size_t k = 0; k < 2; ++k) {
    const auto set = static_cast<FeatureSet>(k);
    const auto& tf = matrices_[slot(set, Weighting::tf)];
    df_[k].assign(vocab_[k].size(), 0);
    for (std::size_t r = 0; r < n; ++r) {
      for (auto c : tf.row(r).indices) ++df_[k][c];
    }
    std::vector<double> weights(vocab_[k].size());
    for (std::size_t c = 0; c < weights.size(); ++c) weights[c] = idf(n, df_[k][c], log_base_);
    std::vector<SparseVector> normalized_rows;
    for (std::size_t r = 0; r < n; ++r) {
      // terms present in every document weigh zero and are not stored
      SparseVector row;
      const auto& counts = tf.row(r);
      for (std::size_t i = 0; i < counts.nnz(); ++i) {
        const double w = counts.values[i] * weights[counts.indices[i]];
        if (w == 0.0) continue;
        row.indices.push_back(counts.indices[i]);
        row.values.push_back(w);
      }
      normalized_rows.push_back(normalized_copy(row));
      tfidf_rows[k].push_back(std::move(row));
    }
    matrices_[slot(set, Weighting::tfidf)] = WeightedMatrix(Weighting::tfidf, vocab_[k], tfidf_rows[k]);
    matrices_[slot(set, Weighting::normalized)] =
        WeightedMatrix(Weighting::normalized, vocab_[k], std::move(normalized_rows));
  }
  df_[2] = df_[0];
  df_[2].insert(df_[2].end(), df_[1].begin(), df_[1].end());

  const auto offset = static_cast<std::uint32_t>(vocab_[0].size());
  std::vector<SparseVector> tf_rows;
  std::vector<SparseVector> tfidf_combined;
  std::vector<SparseVector> normalized_combined;
  const auto& ptf = matrices_[slot(FeatureSet::phrases, Weighting::tf)];
  const auto& ttf = matrices_[slot(FeatureSet::tags, Weighting::tf)];
  for (std::size_t r = 0; r < n; ++r) {
    tf_rows.push_back(concat(ptf.row(r), ttf.row(r), offset));
    auto joined = concat(tfidf_rows[0][r], tfidf_rows[1][r], offset);
    normalized_combined.push_back(normalized_copy(joined));
    tfidf_combined.push_back(std::move(joined));
  }
  matrices_[slot(FeatureSet::combined, Weighting::tf)] = WeightedMatrix(Weighting::tf, vocab_[2], std::move(tf_rows));
  matrices_[slot(FeatureSet::combined, Weighting::tfidf)] =
      WeightedMatrix(Weighting::tfidf, vocab_[2], std::move(tfidf_combined));
  matrices_[slot(FeatureSet::combined, Weighting::normalized)] =
      WeightedMatrix(Weighting::normalized, vocab_[2], std::move(normalized_combined));
}

std::optional<std::size_t> DocumentIndex::row_of(std::string_view doc_id) const {
  auto it = row_by_id_.find(doc_id);
  if (it == row_by_id_.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::string>& DocumentIndex::vocabulary(FeatureSet set) const { return vocab_[set_index(set)]; }

const std::vector<std::size_t>& DocumentIndex::document_frequency(FeatureSet set) const {
  return df_[set_index(set)];
}

std::optional<std::size_t> DocumentIndex::column_of(TermKind kind, std::string_view term) const {
  const auto& columns = column_by_term_[kind == TermKind::phrase ? 0 : 1];
  auto it = columns.find(term);
  if (it == columns.end()) return std::nullopt;
  return it->second;
}

const WeightedMatrix& DocumentIndex::matrix(FeatureSet set, Weighting scheme) const {
  return matrices_[slot(set, scheme)];
}

TermCounts DocumentIndex::counts(std::size_t row) const {
  TermCounts out;
  const auto& p = matrices_[slot(FeatureSet::phrases, Weighting::tf)].row(row);
  for (std::size_t i = 0; i < p.nnz(); ++i) {
    out.phrases.emplace(vocab_[0][p.indices[i]], static_cast<std::size_t>(p.values[i]));
  }
  const auto& t = matrices_[slot(FeatureSet::tags, Weighting::tf)].row(row);
  for (std::size_t i = 0; i < t.nnz(); ++i) {
    out.tags.emplace(vocab_[1][t.indices[i]], static_cast<std::size_t>(t.values[i]));
  }
  return out;
}

DocumentIndex DocumentIndex::subset(std::span<const std::size_t> rows) const {
  std::vector<std::string> ids;
  std::vector<TermCounts> counts_list;
  for (auto r : rows) {
    ids.push_back(doc_ids_.at(r));
    counts_list.push_back(counts(r));
  }
  return build(std::move(ids), counts_list, IndexOptions{log_base_});
}

void DocumentIndex::save(std::ostream& out) const {
  out << kIndexMagic << " v" << kIndexVersion << '\n';
  out << "log_base " << detail::format_double(log_base_) << '\n';
  out << "documents " << doc_ids_.size() << '\n';
  for (std::size_t r = 0; r < doc_ids_.size(); ++r) out << r << '\t' << doc_ids_[r] << '\n';
  for (std::size_t k = 0; k < 2; ++k) {
    out << "vocabulary " << to_string(static_cast<FeatureSet>(k)) << ' ' << vocab_[k].size() << '\n';
    for (std::size_t c = 0; c < vocab_[k].size(); ++c) out << c << '\t' << df_[k][c] << '\t' << vocab_[k][c] << '\n';
  }
  auto write_matrix = [&](FeatureSet set, Weighting scheme) {
    const auto& m = matrix(set, scheme);
    std::size_t nnz = 0;
    for (std::size_t r = 0; r < m.row_count(); ++r) nnz += m.row(r).nnz();
    out << "matrix " << to_string(set) << ' ' << to_string(scheme) << ' ' << nnz << '\n';
    for (std::size_t r = 0; r < m.row_count(); ++r) {
      const auto& row = m.row(r);
      for (std::size_t i = 0; i < row.nnz(); ++i) {
        out << r << ' ' << row.indices[i] << ' ' << detail::format_double(row.values[i]) << '\n';
      }
    }
  };
  write_matrix(FeatureSet::phrases, Weighting::tf);
  write_matrix(FeatureSet::tags, Weighting::tf);
  write_matrix(FeatureSet::phrases, Weighting::normalized);
  write_matrix(FeatureSet::tags, Weighting::normalized);
  write_matrix(FeatureSet::combined, Weighting::normalized);
  out << "end\n";
}

void DocumentIndex::save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write index file '" + path.string() + "'");
  save(out);
}

DocumentIndex DocumentIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open index file '" + path.string() + "'");
  return load(in);
}

DocumentIndex DocumentIndex::load(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&](std::string_view expect) -> std::string& {
    if (!std::getline(in, line)) throw ParseError("index file truncated, expected " + std::string(expect));
    ++line_no;
    return line;
  };
  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError("index file line " + std::to_string(line_no) + ": " + what);
  };
  auto header_value = [&](std::string_view key) {
    const auto& l = next_line(key);
    if (l.rfind(std::string(key) + " ", 0) != 0) throw fail("expected '" + std::string(key) + "'");
    return l.substr(key.size() + 1);
  };
  auto parse_size = [&](std::string_view text) {
    auto v = detail::parse_integer<std::size_t>(text);
    if (!v) throw fail("bad integer '" + std::string(text) + "'");
    return *v;
  };

  if (next_line("header") != std::string(kIndexMagic) + " v" + std::to_string(kIndexVersion)) {
    throw fail("unsupported index header '" + line + "'");
  }
  DocumentIndex index;
  auto base = detail::parse_double(header_value("log_base"));
  if (!base) throw fail("bad log base");
  index.log_base_ = *base;
  const auto n = parse_size(header_value("documents"));
  for (std::size_t r = 0; r < n; ++r) {
    auto fields = split(next_line("document row"), '\t');
    if (fields.size() != 2 || parse_size(fields[0]) != r) throw fail("bad document row");
    index.row_by_id_.emplace(fields[1], r);
    index.doc_ids_.push_back(fields[1]);
  }
  std::vector<std::size_t> stored_df[2];
  for (std::size_t k = 0; k < 2; ++k) {
    auto fields = split(header_value("vocabulary"), ' ');
    if (fields.size() != 2 || fields[0] != to_string(static_cast<FeatureSet>(k))) throw fail("bad vocabulary header");
    const auto size = parse_size(fields[1]);
    for (std::size_t c = 0; c < size; ++c) {
      auto cols = split(next_line("term row"), '\t');
      if (cols.size() != 3 || parse_size(cols[0]) != c) throw fail("bad term row");
      stored_df[k].push_back(parse_size(cols[1]));
      index.column_by_term_[k].emplace(cols[2], c);
      index.vocab_[k].push_back(cols[2]);
    }
  }
  auto read_matrix = [&](FeatureSet set, Weighting scheme) {
    auto fields = split(header_value("matrix"), ' ');
    if (fields.size() != 3 || fields[0] != to_string(set) || fields[1] != to_string(scheme)) {
      throw fail("expected matrix block " + std::string(to_string(set)) + " " + std::string(to_string(scheme)));
    }
    const auto nnz = parse_size(fields[2]);
    std::vector<SparseVector> rows(n);
    const auto columns = index.vocab_[set_index(set)].size() +
                         (set == FeatureSet::combined ? index.vocab_[1].size() : std::size_t{0});
    for (std::size_t i = 0; i < nnz; ++i) {
      auto cells = split(next_line("matrix cell"), ' ');
      if (cells.size() != 3) throw fail("bad matrix cell");
      const auto r = parse_size(cells[0]);
      const auto c = parse_size(cells[1]);
      auto v = detail::parse_double(cells[2]);
      if (!v || r >= n || c >= columns) throw fail("matrix cell out of range");
      auto& row = rows[r];
      if (!row.indices.empty() && row.indices.back() >= c) throw fail("matrix cells out of order");
      row.indices.push_back(static_cast<std::uint32_t>(c));
      row.values.push_back(*v);
    }
    return rows;
  };
  index.matrices_[index.slot(FeatureSet::phrases, Weighting::tf)] =
      WeightedMatrix(Weighting::tf, index.vocab_[0], read_matrix(FeatureSet::phrases, Weighting::tf));
  index.matrices_[index.slot(FeatureSet::tags, Weighting::tf)] =
      WeightedMatrix(Weighting::tf, index.vocab_[1], read_matrix(FeatureSet::tags, Weighting::tf));
  std::vector<SparseVector> normalized[3];
  normalized[0] = read_matrix(FeatureSet::phrases, Weighting::normalized);
  normalized[1] = read_matrix(FeatureSet::tags, Weighting::normalized);
  index.vocab_[2] = index.vocab_[0];
  index.vocab_[2].insert(index.vocab_[2].end(), index.vocab_[1].begin(), index.vocab_[1].end());
  normalized[2] = read_matrix(FeatureSet::combined, Weighting::normalized);
  if (next_line("end") != "end") throw fail("expected 'end'");

  index.rebuild_derived();
  for (std::size_t k = 0; k < 2; ++k) {
    if (stored_df[k] != index.df_[k]) throw ParseError("index file: stored document frequencies disagree with TF matrix");
  }
  // Persisted weights are authoritative; they round-trip exactly at 17 digits.
  for (std::size_t k = 0; k < 3; ++k) {
    const auto set = static_cast<FeatureSet>(k);
    auto& m = index.matrices_[index.slot(set, Weighting::normalized)];
    for (std::size_t r = 0; r < n; ++r) {
      if (normalized[k][r].indices != m.row(r).indices) {
        throw ParseError("index file: normalized " + std::string(to_string(set)) + " row " + std::to_string(r) +
                         " does not match the TF sparsity pattern");
      }
    }
    m = WeightedMatrix(Weighting::normalized, index.vocab_[k], std::move(normalized[k]));
  }
  return index;
}

DocumentIndex build_index(std::span<const AbstractDoc> corpus, const Lexicon& lexicon, IndexOptions options) {
  if (corpus.empty()) throw std::invalid_argument("cannot build an index over an empty corpus");
  std::vector<std::string> ids;
  std::vector<TermCounts> counts;
  ids.reserve(corpus.size());
  counts.reserve(corpus.size());
  for (const auto& doc : corpus) {
    ids.push_back(doc.doc_id);
    counts.push_back(term_frequency(map_document(doc, lexicon)));
  }
  return DocumentIndex::build(std::move(ids), counts, options);
}

}  // namespace cliniqa
