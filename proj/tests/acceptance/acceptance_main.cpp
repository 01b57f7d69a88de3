#include "criterion.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

using namespace cliniqa::acceptance;

namespace {

struct Entry {
  const char* name;
  void (*run)(Criterion&);
};

constexpr Entry kCriteria[] = {
    {"normalization", normalization_suite},
    {"rank-equivalence", rank_equivalence},
    {"classifier-oracles", classifier_oracles},
    {"svm", svm_suite},
    {"cv-harness", cv_harness},
    {"ranking", ranking_suite},
    {"metrics", metrics_suite},
    {"planted-answers", planted_answers},
    {"determinism", determinism},
};

}  // namespace

namespace cliniqa::acceptance {

bool Criterion::expect(bool ok, const std::string& what) {
  ++checks_;
  if (!ok) failures_.push_back(what);
  return ok;
}

}  // namespace cliniqa::acceptance

int main() {
  std::size_t failed = 0;
  for (const auto& entry : kCriteria) {
    Criterion c;
    const auto start = std::chrono::steady_clock::now();
    try {
      entry.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", elapsed.count());
    std::cout << (c.passed() ? "PASS" : "FAIL") << "  " << entry.name << "  (" << c.checks() << " checks, " << timing
              << ")";
    for (const auto& n : c.notes()) std::cout << "  " << n;
    std::cout << '\n';
    const std::size_t shown = 10;
    for (std::size_t i = 0; i < c.failures().size() && i < shown; ++i) std::cout << "      " << c.failures()[i] << '\n';
    if (c.failures().size() > shown) std::cout << "      ... " << c.failures().size() - shown << " more\n";
    failed += !c.passed();
  }
  std::cout << (failed ? "FAIL" : "PASS") << "  acceptance: " << std::size(kCriteria) - failed << "/"
            << std::size(kCriteria) << " criteria\n";
  return failed ? 1 : 0;
}
