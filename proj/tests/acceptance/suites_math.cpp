#include "criterion.hpp"

#include <cliniqa/cross_validation.hpp>
#include <cliniqa/decision_tree.hpp>
#include <cliniqa/fisher.hpp>
#include <cliniqa/index.hpp>
#include <cliniqa/knn.hpp>
#include <cliniqa/naive_bayes.hpp>
#include <cliniqa/question.hpp>
#include <cliniqa/retrieval.hpp>
#include <cliniqa/svm.hpp>

#include "fixtures.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>

namespace cliniqa::acceptance {
namespace {

using Matrix = std::vector<std::vector<double>>;

std::string str(double v) { return std::to_string(v); }

std::vector<std::string> doc_ids(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("d" + std::to_string(100 + i));
  return out;
}

// Column terms of a feature set in index column order, with their kind.
std::vector<std::pair<bool, std::string>> columns(const DocumentIndex& index, FeatureSet set) {
  std::vector<std::pair<bool, std::string>> out;
  if (set != FeatureSet::tags)
    for (const auto& p : index.vocabulary(FeatureSet::phrases)) out.emplace_back(true, p);
  if (set != FeatureSet::phrases)
    for (const auto& t : index.vocabulary(FeatureSet::tags)) out.emplace_back(false, t);
  return out;
}

// TF x ln(N/DF) / Euclidean length, computed from the raw counts.
Matrix oracle_normalized(std::span<const TermCounts> counts, const std::vector<std::pair<bool, std::string>>& cols) {
  const double n = double(counts.size());
  auto tf = [&](const TermCounts& c, const std::pair<bool, std::string>& col) -> double {
    const auto& m = col.first ? c.phrases : c.tags;
    auto it = m.find(col.second);
    return it == m.end() ? 0.0 : double(it->second);
  };
  std::vector<double> idf(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    double df = 0;
    for (const auto& c : counts) df += tf(c, cols[j]) > 0;
    idf[j] = std::log(n / df);
  }
  Matrix out;
  for (const auto& c : counts) {
    std::vector<double> row(cols.size());
    double length = 0;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      row[j] = tf(c, cols[j]) * idf[j];
      length += row[j] * row[j];
    }
    length = std::sqrt(length);
    if (length > 0)
      for (auto& v : row) v /= length;
    out.push_back(row);
  }
  return out;
}

double l2(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void check_normalized(Criterion& c, const DocumentIndex& natural, const DocumentIndex& base10,
                      std::span<const TermCounts> counts, const std::string& label) {
  for (auto set : {FeatureSet::phrases, FeatureSet::tags, FeatureSet::combined}) {
    const std::string where = label + "/" + std::string(to_string(set));
    const auto& a = natural.matrix(set, Weighting::normalized);
    const auto& b = base10.matrix(set, Weighting::normalized);
    const auto oracle = oracle_normalized(counts, columns(natural, set));
    for (std::size_t r = 0; r < a.row_count(); ++r) {
      const auto da = a.dense_row(r), db = b.dense_row(r);
      const double norm = l2(da);
      if (norm != 0.0) c.expect(std::abs(norm - 1.0) <= 1e-9, where + " row " + std::to_string(r) + " norm " + str(norm));
      double worst_base = 0, worst_oracle = 0;
      for (std::size_t j = 0; j < da.size(); ++j) {
        worst_base = std::max(worst_base, std::abs(da[j] - db[j]));
        worst_oracle = std::max(worst_oracle, std::abs(da[j] - oracle[r][j]));
      }
      c.expect(worst_base <= 1e-9, where + " row " + std::to_string(r) + " ln vs log10 differ by " + str(worst_base));
      c.expect(worst_oracle <= 1e-9, where + " row " + std::to_string(r) + " differs from hand weights by " +
                                         str(worst_oracle));
    }
  }
}

void check_duplicate(Criterion& c, std::vector<TermCounts> counts, std::size_t source, std::size_t k,
                     const std::string& label) {
  TermCounts scaled = counts[source];
  for (auto& [_, n] : scaled.phrases) n *= k;
  for (auto& [_, n] : scaled.tags) n *= k;
  counts.push_back(scaled);
  const auto index = DocumentIndex::build(doc_ids(counts.size()), counts);
  const auto copy = counts.size() - 1;
  for (auto set : {FeatureSet::phrases, FeatureSet::tags, FeatureSet::combined}) {
    const auto& norm = index.matrix(set, Weighting::normalized);
    const auto a = norm.dense_row(source), b = norm.dense_row(copy);
    double worst = 0;
    for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
    c.expect(worst <= 1e-12, label + " x" + std::to_string(k) + " normalized rows differ by " + str(worst));
    const auto& tf = index.matrix(set, Weighting::tf);
    if (tf.row(source).nnz())
      c.expect(tf.dense_row(source) != tf.dense_row(copy), label + " TF rows should differ");
  }
}

}  // namespace

void normalization_suite(Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  const auto& corpus = testing::minicorpus();
  const auto& lexicon = testing::minicorpus_lexicon();
  const auto natural = build_index(corpus, lexicon);
  const auto base10 = build_index(corpus, lexicon, IndexOptions{10.0});
  std::vector<TermCounts> counts;
  for (std::size_t r = 0; r < natural.document_count(); ++r) counts.push_back(natural.counts(r));
  check_normalized(c, natural, base10, counts, "mini-corpus");
  for (std::size_t doc = 0; doc < counts.size(); ++doc)
    check_duplicate(c, counts, doc, 2 + doc % 4, "mini-corpus doc " + natural.doc_ids()[doc]);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  c.expect(elapsed.count() < 5.0, "mini-corpus normalization took " + str(elapsed.count()) + " s");
  c.note("mini-corpus " + std::to_string(elapsed.count()).substr(0, 5) + " s");

  // random collections, including terms present in every document
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> draw(0, 4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<TermCounts> random(25);
    for (auto& d : random) {
      for (int t = 0; t < 12; ++t)
        if (int n = draw(rng); n > 1) d.phrases["p" + std::to_string(t)] = std::size_t(n - 1);
      for (int t = 0; t < 5; ++t)
        if (int n = draw(rng); n > 2) d.tags["T" + std::to_string(t)] = std::size_t(n - 2);
      d.phrases["everywhere"] = 1;
    }
    const auto ids = doc_ids(random.size());
    check_normalized(c, DocumentIndex::build(ids, random), DocumentIndex::build(ids, random, IndexOptions{10.0}),
                     random, "random " + std::to_string(trial));
    check_duplicate(c, random, std::size_t(trial) % random.size(), 2 + std::size_t(trial) % 5,
                    "random " + std::to_string(trial));
  }
}

void rank_equivalence(Criterion& c) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> draw(0, 5);
  std::bernoulli_distribution pick(0.3);
  const std::size_t fixtures = 200;
  for (std::size_t f = 0; f < fixtures; ++f) {
    std::vector<TermCounts> counts(20);
    for (auto& d : counts)
      for (int t = 0; t < 10; ++t)
        if (int n = draw(rng); n > 2) d.phrases["p" + std::to_string(t)] = std::size_t(n - 2);
    const auto index = DocumentIndex::build(doc_ids(counts.size()), counts);
    const auto& vocab = index.vocabulary(FeatureSet::phrases);
    if (vocab.empty()) continue;
    std::vector<double> q(vocab.size(), 0.0);
    for (auto& v : q) v = pick(rng) ? 1.0 : 0.0;
    q[f % q.size()] = 1.0;

    // full cosine over TF x IDF, computed from the raw counts
    std::vector<double> by_cosine;
    const auto cols = columns(index, FeatureSet::phrases);
    const double qlen = l2(q);
    for (std::size_t r = 0; r < counts.size(); ++r) {
      std::vector<double> d(vocab.size());
      for (std::size_t j = 0; j < vocab.size(); ++j) {
        auto it = counts[r].phrases.find(vocab[j]);
        double df = 0;
        for (const auto& other : counts) df += other.phrases.count(vocab[j]);
        d[j] = it == counts[r].phrases.end() ? 0.0 : double(it->second) * std::log(20.0 / df);
      }
      const double dlen = l2(d);
      double dot = 0;
      for (std::size_t j = 0; j < d.size(); ++j) dot += q[j] * d[j];
      by_cosine.push_back(dlen == 0 ? 0.0 : dot / (qlen * dlen));
    }
    const auto by_sim = score_documents(q, index, FeatureSet::phrases);

    // shared tie-break: descending score, then ascending position
    auto argsort = [](const std::vector<double>& s) {
      std::vector<std::size_t> order(s.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return s[a] > s[b]; });
      return order;
    };
    c.expect(argsort(by_sim) == argsort(by_cosine), "fixture " + std::to_string(f) + ": Sim and Cosine orders differ");
  }
  c.note(std::to_string(fixtures) + " fixtures");
}

namespace {

std::size_t brute_force_knn(const LabeledDataset& data, const std::vector<double>& x, std::size_t k) {
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double d = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) d += (x[j] - data[i].x[j]) * (x[j] - data[i].x[j]);
    all.emplace_back(d, i);
  }
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> votes(data.class_count(), 0);
  for (std::size_t i = 0; i < k; ++i) ++votes[data[all[i].second].label];
  const auto best = *std::max_element(votes.begin(), votes.end());
  for (std::size_t i = 0; i < k; ++i)
    if (votes[data[all[i].second].label] == best) return data[all[i].second].label;
  return 0;
}

double entropy_bits(const std::vector<std::size_t>& counts) {
  double total = 0, h = 0;
  for (auto n : counts) total += double(n);
  for (auto n : counts)
    if (n) h -= (double(n) / total) * std::log2(double(n) / total);
  return h;
}

SplitChoice exhaustive_split(const LabeledDataset& d) {
  std::vector<std::size_t> all(d.class_count(), 0);
  for (const auto& s : d.samples()) ++all[s.label];
  const double base = entropy_bits(all);
  SplitChoice best{0, 0.0, -1.0};
  for (std::size_t f = 0; f < d.dimension(); ++f) {
    std::set<double> values;
    for (const auto& s : d.samples()) values.insert(s.x[f]);
    for (auto it = values.begin(); std::next(it) != values.end(); ++it) {
      const double t = (*it + *std::next(it)) / 2;
      std::vector<std::size_t> left(d.class_count(), 0), right(d.class_count(), 0);
      for (const auto& s : d.samples()) ++(s.x[f] <= t ? left : right)[s.label];
      double nl = 0, nr = 0;
      for (auto n : left) nl += double(n);
      for (auto n : right) nr += double(n);
      const double gain = base - (nl * entropy_bits(left) + nr * entropy_bits(right)) / double(d.size());
      if (gain > best.gain + 1e-12) best = {f, t, gain};
    }
  }
  return best;
}

std::vector<double> gaussian_solve(Matrix a, std::vector<double> b) {
  const auto n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

void knn_oracle(Criterion& c) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coord(0, 4);
  std::size_t queries = 0;
  for (int set = 0; set < 25; ++set) {
    const std::size_t classes = 2 + std::size_t(set) % 3;
    std::vector<std::string> names;
    for (std::size_t k = 0; k < classes; ++k) names.push_back("c" + std::to_string(k));
    LabeledDataset d(names, 3);
    std::uniform_int_distribution<std::size_t> label(0, classes - 1);
    for (int i = 0; i < 30; ++i) d.add({double(coord(rng)), double(coord(rng)), double(coord(rng))}, label(rng));
    for (int q = 0; q < 24; ++q, ++queries) {
      std::vector<double> x{double(coord(rng)), double(coord(rng)), double(coord(rng))};
      for (std::size_t k : {1, 2, 3, 4, 7})
        c.expect(knn_predict(d, x, k) == brute_force_knn(d, x, k),
                 "knn set " + std::to_string(set) + " query " + std::to_string(q) + " k=" + std::to_string(k));
    }
  }
  c.expect(queries >= 500, "only " + std::to_string(queries) + " knn queries");
}

void nb_oracle(Criterion& c) {
  LabeledDataset d({"A", "B"}, 2);
  d.add({3.0, 1.0}, 0);
  d.add({1.0, 3.0}, 1);
  const auto model = nb_train(d);
  // add-one smoothing: P(t0|A) = 4/6, P(t0|B) = 2/6, equal priors; query (1, 0)
  const std::vector<double> q{1.0, 0.0};
  const double pa = 0.5 * (4.0 / 6.0), pb = 0.5 * (2.0 / 6.0);
  const auto post = model.posteriors(q);
  c.expect(std::abs(post[0] - pa / (pa + pb)) <= 1e-12, "NB posterior A " + str(post[0]));
  c.expect(std::abs(post[1] - pb / (pa + pb)) <= 1e-12, "NB posterior B " + str(post[1]));
  c.expect(nb_predict(model, q) == 0, "NB prediction");
}

void tree_oracle(Criterion& c) {
  auto compare = [&](const LabeledDataset& d, const std::string& label) {
    std::vector<std::size_t> rows(d.size());
    std::iota(rows.begin(), rows.end(), 0);
    const auto split = best_split(d, rows);
    const auto expected = exhaustive_split(d);
    if (!c.expect(split.has_value(), label + ": no split")) return;
    c.expect(split->feature == expected.feature && split->threshold == expected.threshold,
             label + ": root split differs from the exhaustive oracle");
    c.expect(std::abs(split->gain - expected.gain) <= 1e-12, label + ": gain differs");
    const auto tree = dt_train(d);
    c.expect(tree.nodes[0].feature == expected.feature && tree.nodes[0].threshold == expected.threshold,
             label + ": trained root differs");
  };
  LabeledDataset fixed({"A", "B"}, 2);
  fixed.add({1, 5}, 0);
  fixed.add({2, 1}, 1);
  fixed.add({3, 6}, 0);
  fixed.add({4, 2}, 1);
  compare(fixed, "four sample fixture");

  std::mt19937 rng(23);
  std::uniform_int_distribution<int> value(0, 6);
  std::uniform_int_distribution<std::size_t> label(0, 2);
  for (int trial = 0; trial < 60; ++trial) {
    LabeledDataset d({"a", "b", "c"}, 3);
    std::set<std::vector<double>> seen;
    while (d.size() < 14) {
      FeatureVector x{double(value(rng)), double(value(rng)), double(value(rng))};
      if (!seen.insert(x).second) continue;
      d.add(x, label(rng));
    }
    compare(d, "random tree fixture " + std::to_string(trial));
  }
}

void fisher_oracle(Criterion& c) {
  for (std::uint32_t seed = 1; seed <= 5; ++seed) {
    const std::size_t dim = 4;
    std::mt19937 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    LabeledDataset d({"neg", "pos"}, dim);
    for (int i = 0; i < 40; ++i) {
      for (std::size_t label = 0; label < 2; ++label) {
        FeatureVector x(dim);
        for (std::size_t k = 0; k < dim; ++k) x[k] = noise(rng) * (1.0 + double(k)) + (label ? 1.5 - 0.4 * double(k) : 0.0);
        x[0] += 0.5 * x[dim - 1];
        d.add(x, label);
      }
    }
    // class means and population scatter matrices
    std::vector<double> m0(dim, 0), m1(dim, 0);
    double n0 = 0, n1 = 0;
    for (const auto& s : d.samples()) {
      auto& m = s.label ? m1 : m0;
      (s.label ? n1 : n0) += 1;
      for (std::size_t k = 0; k < dim; ++k) m[k] += s.x[k];
    }
    for (std::size_t k = 0; k < dim; ++k) {
      m0[k] /= n0;
      m1[k] /= n1;
    }
    Matrix pooled(dim, std::vector<double>(dim, 0));
    for (const auto& s : d.samples()) {
      const auto& m = s.label ? m1 : m0;
      const double n = s.label ? n1 : n0;
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) pooled[i][j] += (s.x[i] - m[i]) * (s.x[j] - m[j]) / n;
    }
    std::vector<double> diff(dim);
    for (std::size_t k = 0; k < dim; ++k) diff[k] = m1[k] - m0[k];
    const auto w = gaussian_solve(pooled, diff);
    const auto model = fisher_train(d);
    double worst = 0;
    for (std::size_t k = 0; k < dim; ++k) worst = std::max(worst, std::abs(model.projection[k] - w[k]));
    c.expect(worst <= 1e-9, "Fisher w differs from the closed form by " + str(worst));

    auto separation = [&](const std::vector<double>& v) {
      double between = 0, within = 0;
      for (std::size_t i = 0; i < dim; ++i) {
        between += v[i] * diff[i];
        for (std::size_t j = 0; j < dim; ++j) within += v[i] * pooled[i][j] * v[j];
      }
      return between * between / within;
    };
    const double best = separation(model.projection);
    std::mt19937 dir_rng(seed + 100);
    std::normal_distribution<double> dir(0.0, 1.0);
    std::size_t beaten = 0;
    for (int probe = 0; probe < 1000; ++probe) {
      std::vector<double> v(dim);
      for (auto& x : v) x = dir(dir_rng);
      beaten += separation(v) > best * (1 + 1e-12);
    }
    c.expect(beaten == 0, std::to_string(beaten) + " random directions beat the Fisher direction");
  }
}

}  // namespace

void classifier_oracles(Criterion& c) {
  knn_oracle(c);
  nb_oracle(c);
  tree_oracle(c);
  fisher_oracle(c);
}

void svm_suite(Criterion& c) {
  // kernel values against exp(-gamma * ||x - x'||)
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> coord(-3, 3);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> a{coord(rng), coord(rng), coord(rng)}, b{coord(rng), coord(rng), coord(rng)};
    const double gamma = 0.005 * (1 + i % 7);
    double s = 0;
    for (std::size_t k = 0; k < 3; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    const double expected = std::exp(-gamma * std::sqrt(s));
    c.expect(std::abs(erbf_kernel(a, b, gamma) - expected) <= 1e-15, "ERBF kernel value");
  }
  const std::vector<double> origin{0, 0}, unit{1, 0};
  c.expect(erbf_kernel(origin, unit, 0.005) == std::exp(-0.005), "ERBF e^-0.005");

  // separable toys: dual feasibility and perfect training accuracy
  for (auto kernel : {Kernel{KernelType::erbf, 0.005}, Kernel{KernelType::erbf, 0.5}, Kernel{KernelType::linear, 0.0},
                      Kernel{KernelType::rbf, 0.2}}) {
    for (std::uint32_t seed = 1; seed <= 5; ++seed) {
      std::mt19937 toy_rng(seed);
      std::uniform_real_distribution<double> jitter(-1.0, 1.0);
      std::vector<FeatureVector> x;
      std::vector<int> y;
      for (int i = 0; i < 15; ++i) {
        x.push_back({-3.0 + jitter(toy_rng), -3.0 + jitter(toy_rng)});
        y.push_back(-1);
        x.push_back({3.0 + jitter(toy_rng), 3.0 + jitter(toy_rng)});
        y.push_back(+1);
      }
      SvmOptions options;
      options.kernel = kernel;
      const auto model = svm_train(x, y, options);
      const std::string label = std::string(kernel.type == KernelType::linear ? "linear"
                                            : kernel.type == KernelType::rbf ? "rbf"
                                                                             : "erbf") +
                                " seed " + std::to_string(seed);
      double balance = 0;
      bool bounded = true;
      for (std::size_t i = 0; i < y.size(); ++i) {
        const double l = model.training_multipliers[i];
        bounded = bounded && l >= 0.0 && l <= options.penalty;
        balance += l * y[i];
      }
      c.expect(bounded, label + ": multiplier outside [0, D]");
      c.expect(std::abs(balance) <= 1e-6, label + ": |sum lambda y| = " + str(std::abs(balance)));
      std::size_t correct = 0;
      for (std::size_t i = 0; i < x.size(); ++i) correct += model.predict(x[i]) == y[i];
      c.expect(correct == x.size(), label + ": training accuracy below 100%");
    }
  }

  // two points at 0 and 2: the decision boundary is the midpoint 1
  const std::vector<FeatureVector> two{{0.0}, {2.0}};
  const std::vector<int> labels{-1, +1};
  const auto model = svm_train(two, labels, SvmOptions{});
  double lo = 0.0, hi = 2.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = (lo + hi) / 2;
    const std::vector<double> p{mid};
    (model.decision(p) < 0 ? lo : hi) = mid;
  }
  c.expect(std::abs(lo - 1.0) <= 1e-3, "two point boundary at " + str(lo));
  const double lambda = 1.0 / (1.0 - std::exp(-0.01));
  for (double l : model.training_multipliers)
    c.expect(std::abs(l - lambda) <= 1e-3 * lambda, "two point multiplier " + str(l) + " vs " + str(lambda));
}

namespace {

class AlwaysFirst : public Classifier {
 public:
  AlwaysFirst() : Classifier(ClassifierParams{}) {}
  Algorithm algorithm() const override { return Algorithm::naive_bayes; }
  void train(const LabeledDataset& data) override {
    begin_training(data);
    trained_ = true;
  }
  std::vector<double> scores(std::span<const double>) const override {
    std::vector<double> s(classes_.size(), 0.0);
    s[0] = 1.0;
    return s;
  }
  std::string serialize() const override { return "{}"; }
};

}  // namespace

void cv_harness(Criterion& c) {
  auto same = [](const CvReport& a, const CvReport& b) {
    if (a.accuracy != b.accuracy || a.folds.size() != b.folds.size()) return false;
    for (std::size_t f = 0; f < a.folds.size(); ++f)
      if (a.folds[f].correct != b.folds[f].correct || a.folds[f].test_size != b.folds[f].test_size) return false;
    return true;
  };

  const LabeledDataset synthetic = [] {
    LabeledDataset d({"a", "b", "c"}, 2);
    for (int i = 0; i < 45; ++i) d.add({double(i % 7), double(i % 5)}, std::size_t(i % 3));
    return d;
  }();
  const auto questions = parse_questions(testing::minicorpus_dir() / "questions.tsv");
  const auto& lexicon = testing::minicorpus_lexicon();
  const auto focus = focus_dataset(questions, lexicon, question_vocabulary(questions, lexicon, FeatureSet::combined));
  for (auto algorithm : kAllAlgorithms) {
    for (const LabeledDataset* data : {&synthetic, &focus}) {
      const auto first = cross_validate(algorithm, ClassifierParams{}, *data, 10, 42);
      const auto second = cross_validate(algorithm, ClassifierParams{}, *data, 10, 42);
      c.expect(same(first, second), std::string(to_string(algorithm)) + ": repeated 10-fold runs differ");
      c.expect(first.folds.size() == 10, "fold count");
    }
  }
  c.expect(stratified_folds(synthetic, 10, 42) == stratified_folds(synthetic, 10, 42), "fold assignment repeats");

  LabeledDataset split({"majority", "minority"}, 1);
  for (std::size_t i = 0; i < 100; ++i) split.add({double(i)}, i < 60 ? 0 : 1);
  const auto baseline = cross_validate([] { return std::make_unique<AlwaysFirst>(); }, split, 10, 42);
  c.expect(baseline.accuracy == 0.6, "majority baseline accuracy " + str(baseline.accuracy));
}

}  // namespace cliniqa::acceptance
