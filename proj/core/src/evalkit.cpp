#include "cliniqa/evalkit.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "cliniqa/errors.hpp"
#include "numeric_format.hpp"

namespace cliniqa {

std::vector<GoldAnswer> parse_gold(std::istream& in, std::string_view source_name) {
  std::vector<GoldAnswer> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const std::string where = std::string(source_name) + ":" + std::to_string(line_no);
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto pos = line.find('\t', start);
      fields.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    if (fields.size() != 4) {
      throw ParseError(where + ": expected 4 tab-separated fields, found " + std::to_string(fields.size()));
    }
    const auto sentence = detail::parse_integer<std::size_t>(fields[3]);
    if (!sentence) throw ParseError(where + ": sentence index must be a non-negative integer");
    if (fields[0].empty() || fields[2].empty()) throw ParseError(where + ": empty question id or doc id");
    out.push_back(GoldAnswer{fields[0], fields[1], fields[2], *sentence});
  }
  return out;
}

std::vector<GoldAnswer> parse_gold(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open gold file '" + path.string() + "'");
  return parse_gold(in, path.string());
}

void validate_gold(std::span<const GoldAnswer> gold, std::span<const AbstractDoc> corpus) {
  std::map<std::string_view, const AbstractDoc*> by_id;
  for (const auto& doc : corpus) by_id.emplace(doc.doc_id, &doc);
  for (const auto& g : gold) {
    const auto it = by_id.find(g.doc_id);
    if (it == by_id.end()) throw DataError("gold answer " + g.question_id + " names unknown document " + g.doc_id);
    if (g.sentence >= it->second->sentences.size()) {
      throw DataError("gold answer " + g.question_id + " names sentence " + std::to_string(g.sentence) + " of " +
                      g.doc_id + ", which has " + std::to_string(it->second->sentences.size()) + " sentences");
    }
  }
}

EffortDoc effort_doc(const AbstractDoc& doc) {
  EffortDoc e;
  e.doc_id = doc.doc_id;
  e.word_count = doc.word_count;
  for (std::size_t j = 0; j < doc.sentences.size(); ++j) e.words_through.push_back(doc.words_through(j));
  return e;
}

std::optional<std::size_t> user_effort(std::span<const EffortDoc> ranked, const GoldAnswer& gold) {
  std::size_t words = 0;
  for (const auto& doc : ranked) {
    if (doc.doc_id == gold.doc_id) {
      if (gold.sentence >= doc.words_through.size()) {
        throw DataError("gold sentence " + std::to_string(gold.sentence) + " is out of range for " + doc.doc_id);
      }
      return words + doc.words_through[gold.sentence];
    }
    words += doc.word_count;
  }
  return std::nullopt;
}

std::optional<std::size_t> gold_rank(std::span<const std::string> ranked_doc_ids, std::string_view gold_doc_id) {
  for (std::size_t i = 0; i < ranked_doc_ids.size(); ++i) {
    if (ranked_doc_ids[i] == gold_doc_id) return i + 1;
  }
  return std::nullopt;
}

double mrr(std::span<const std::optional<std::size_t>> ranks) {
  if (ranks.empty()) throw std::invalid_argument("mrr of an empty question set");
  double sum = 0.0;
  for (const auto& r : ranks) {
    if (r) {
      if (*r == 0) throw std::invalid_argument("ranks are 1-based");
      sum += 1.0 / static_cast<double>(*r);
    }
  }
  return sum / static_cast<double>(ranks.size());
}

std::vector<CurvePoint> recall_effort_curve(std::span<const std::optional<std::size_t>> efforts,
                                            std::span<const std::size_t> cutoffs) {
  std::vector<CurvePoint> out;
  out.reserve(cutoffs.size());
  for (std::size_t cutoff : cutoffs) {
    std::size_t hits = 0;
    for (const auto& e : efforts) {
      if (e && *e <= cutoff) ++hits;
    }
    out.push_back(CurvePoint{cutoff, efforts.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(efforts.size())});
  }
  return out;
}

std::vector<std::size_t> effort_cutoffs(std::size_t max_cutoff, std::size_t step) {
  if (step == 0) throw std::invalid_argument("effort cutoff step must be positive");
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c <= max_cutoff; c += step) out.push_back(c);
  return out;
}

EvalReport summarize(std::vector<QuestionOutcome> questions, std::span<const std::size_t> cutoffs) {
  EvalReport report;
  std::vector<std::optional<std::size_t>> ranks;
  std::vector<std::optional<std::size_t>> efforts;
  std::size_t answered = 0;
  std::size_t top1 = 0;
  for (auto& q : questions) {
    q.reciprocal_rank = q.rank ? 1.0 / static_cast<double>(*q.rank) : 0.0;
    ranks.push_back(q.rank);
    efforts.push_back(q.effort);
    if (q.rank) ++answered;
    if (q.rank && *q.rank == 1) ++top1;
  }
  report.questions = std::move(questions);
  if (!ranks.empty()) {
    report.mrr = mrr(ranks);
    report.answered_fraction = static_cast<double>(answered) / static_cast<double>(ranks.size());
    report.top1_fraction = static_cast<double>(top1) / static_cast<double>(ranks.size());
  }
  report.curve = recall_effort_curve(efforts, cutoffs);
  return report;
}

void write_report(std::ostream& out, const EvalReport& report) {
  using json = nlohmann::ordered_json;
  json rows = json::array();
  for (const auto& q : report.questions) {
    rows.push_back(json{{"question_id", q.question_id},
                        {"question", q.question_text},
                        {"gold_doc_id", q.gold_doc_id},
                        {"gold_sentence", q.gold_sentence},
                        {"answerable", q.answerable},
                        {"rank", q.rank ? json(*q.rank) : json(nullptr)},
                        {"reciprocal_rank", q.reciprocal_rank},
                        {"effort", q.effort ? json(*q.effort) : json(nullptr)},
                        {"sentence_highlighted", q.sentence_highlighted}});
  }
  json curve = json::array();
  for (const auto& p : report.curve) curve.push_back(json{{"cutoff", p.cutoff}, {"recall", p.recall}});
  json doc{{"questions", rows},
           {"aggregates",
            {{"question_count", report.questions.size()},
             {"mrr", report.mrr},
             {"answered_fraction", report.answered_fraction},
             {"top1_fraction", report.top1_fraction}}},
           {"recall_effort_curve", curve}};
  out << doc.dump(2) << '\n';
}

void write_curve_tsv(std::ostream& out, std::span<const CurvePoint> curve) {
  out << "cutoff\trecall\n";
  for (const auto& p : curve) out << p.cutoff << '\t' << detail::format_double(p.recall) << '\n';
}

}  // namespace cliniqa
