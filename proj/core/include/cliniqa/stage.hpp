#pragma once

#include "cliniqa/classifier.hpp"
#include "cliniqa/index.hpp"

namespace cliniqa {

/// Algorithm, feature set and hyperparameters of one classification stage
/// (document filter, answerable gate, question focus).
struct StageSpec {
  Algorithm algorithm = Algorithm::svm;
  FeatureSet features = FeatureSet::combined;
  ClassifierParams params{};
};

}  // namespace cliniqa
