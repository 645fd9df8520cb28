#pragma once

#include <string>
#include <vector>

#include "copa/classifiers/logreg.hpp"
#include "copa/classifiers/score_matrix.hpp"
#include "copa/features/features.hpp"
#include "copa/features/standardizer.hpp"

namespace copa {

// A single (motion, CoPA) pair classifier over the standardized 17 features.
struct FeatureLRModel {
  std::string feature_ordering = copa::feature_ordering();
  LogRegParams params;
  Standardizer standardizer;
  LinearWeights weights;
};

struct FeatureTrainingSet {
  std::vector<std::vector<double>> X;
  std::vector<int> y;
};

// One row per (training motion, CoPA). Each row is computed with its own
// motion held out, so that training rows see the same counts a held-out query
// would. `extra` adds exclusions shared by all rows (the fold's test motion).
inline FeatureTrainingSet feature_training_set(const Dataset& train, const SimilarityContext& ctx,
                                               const FeatureExclusions& extra = {}) {
  FeatureTrainingSet set;
  for (const Motion& m : train.motions()) {
    FeatureExclusions ex = extra;
    ex.motion_ids.insert(m.id);
    ex.topics.insert(m.topic);
    MotionTextSets ms = motion_text_sets(m, train, ctx);
    for (const Copa& c : train.copas()) {
      FeatureVector f = compute_features(m, ms, c, copa_text_sets(c, train, ex), train, ctx, ex);
      set.X.emplace_back(f.begin(), f.end());
      set.y.push_back(c.contains(m.id) ? 1 : 0);
    }
  }
  return set;
}

inline FeatureLRModel train_feature_lr(const Dataset& train, const SimilarityContext& ctx,
                                       const LogRegParams& params = {}, const FeatureExclusions& extra = {}) {
  FeatureTrainingSet set = feature_training_set(train, ctx, extra);
  FeatureLRModel model;
  model.params = params;
  model.standardizer = Standardizer::fit<std::vector<double>>(set.X);
  for (auto& row : set.X) row = model.standardizer.transform(row);
  model.weights = logreg_fit(set.X, set.y, params).weights;
  return model;
}

inline double feature_lr_score(const FeatureLRModel& model, const FeatureVector& f) {
  return logreg_predict(model.weights, model.standardizer.transform(f));
}

// Never abstains.
inline ScoreRow predict_feature_lr(const FeatureLRModel& model, const Motion& motion, const Dataset& ds,
                                   const SimilarityContext& ctx, const FeatureExclusions& ex = {}) {
  ScoreRow row;
  MotionTextSets ms = motion_text_sets(motion, ds, ctx);
  for (const Copa& c : ds.copas())
    row.push_back(feature_lr_score(model, compute_features(motion, ms, c, copa_text_sets(c, ds, ex), ds, ctx, ex)));
  return row;
}

}  // namespace copa
