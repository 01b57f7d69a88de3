#include "cliniqa/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cliniqa/errors.hpp"
#include "numeric_format.hpp"

namespace cliniqa {

LabeledDataset::LabeledDataset(std::vector<std::string> classes, std::size_t dimension)
    : classes_(std::move(classes)), dimension_(dimension) {}

void LabeledDataset::add(FeatureVector x, std::size_t label, std::string id) {
  if (x.size() != dimension_) {
    throw std::invalid_argument("sample dimension " + std::to_string(x.size()) + " != dataset dimension " +
                                std::to_string(dimension_));
  }
  if (label >= classes_.size()) throw std::invalid_argument("sample label " + std::to_string(label) + " out of range");
  samples_.push_back({std::move(x), label, std::move(id)});
}

std::vector<std::size_t> LabeledDataset::class_counts() const {
  std::vector<std::size_t> counts(classes_.size(), 0);
  for (const auto& s : samples_) ++counts[s.label];
  return counts;
}

std::size_t LabeledDataset::populated_classes() const {
  const auto counts = class_counts();
  return static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }));
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> rows) const {
  LabeledDataset out(classes_, dimension_);
  out.samples_.reserve(rows.size());
  for (auto r : rows) out.samples_.push_back(samples_.at(r));
  return out;
}

std::size_t argmax_lowest(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

void write_sparse_dataset(std::ostream& out, const LabeledDataset& data) {
  out << "# classes ";
  for (std::size_t c = 0; c < data.class_count(); ++c) out << (c ? "," : "") << data.classes()[c];
  out << " dimension " << data.dimension() << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& s = data[i];
    out << (s.id.empty() ? "sample" + std::to_string(i) : s.id) << ' ' << data.classes()[s.label];
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (s.x[k] != 0.0) out << ' ' << k << ':' << detail::format_double(s.x[k]);
    }
    out << '\n';
  }
}

LabeledDataset read_sparse_dataset(std::istream& in) {
  std::vector<std::string> classes;
  std::size_t dimension = 0;
  bool has_header = false;
  struct Row {
    std::string id;
    std::string label;
    std::vector<std::pair<std::size_t, double>> cells;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    if (line.rfind("# classes ", 0) == 0) {
      std::string hash, kw, list, dim_kw;
      fields >> hash >> kw >> list >> dim_kw >> dimension;
      if (dim_kw != "dimension") throw ParseError("dataset line " + std::to_string(line_no) + ": bad header");
      std::stringstream names(list);
      std::string name;
      while (std::getline(names, name, ',')) classes.push_back(name);
      has_header = true;
      continue;
    }
    if (line.front() == '#') continue;
    Row row;
    if (!(fields >> row.id >> row.label)) throw ParseError("dataset line " + std::to_string(line_no) + ": missing id or label");
    std::string cell;
    while (fields >> cell) {
      const auto colon = cell.find(':');
      auto index = colon == std::string::npos ? std::nullopt : detail::parse_integer<std::size_t>(std::string_view(cell).substr(0, colon));
      auto value = colon == std::string::npos ? std::nullopt : detail::parse_double(std::string_view(cell).substr(colon + 1));
      if (!index || !value) throw ParseError("dataset line " + std::to_string(line_no) + ": bad cell '" + cell + "'");
      row.cells.emplace_back(*index, *value);
    }
    rows.push_back(std::move(row));
  }
  if (!has_header) {
    for (const auto& r : rows) {
      if (std::find(classes.begin(), classes.end(), r.label) == classes.end()) classes.push_back(r.label);
      for (const auto& [k, v] : r.cells) dimension = std::max(dimension, k + 1);
    }
  }
  LabeledDataset data(classes, dimension);
  for (auto& r : rows) {
    auto it = std::find(classes.begin(), classes.end(), r.label);
    if (it == classes.end()) throw ParseError("dataset: unknown label '" + r.label + "'");
    FeatureVector x(dimension, 0.0);
    for (const auto& [k, v] : r.cells) {
      if (k >= dimension) throw ParseError("dataset: feature index " + std::to_string(k) + " beyond dimension");
      x[k] = v;
    }
    data.add(std::move(x), static_cast<std::size_t>(it - classes.begin()), std::move(r.id));
  }
  return data;
}

}  // namespace cliniqa
