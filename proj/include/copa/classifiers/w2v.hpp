#pragma once

#include <string>
#include <vector>

#include "copa/classifiers/blacklist.hpp"
#include "copa/classifiers/logreg.hpp"
#include "copa/classifiers/score_matrix.hpp"
#include "copa/kb/dataset.hpp"
#include "copa/text_sim/embedding.hpp"

namespace copa {

// One-vs-rest logistic regression over the unit embedding of the motion topic.
struct W2VModel {
  std::size_t dimension = 0;
  LogRegParams params;
  std::vector<std::string> copa_ids;
  std::vector<LinearWeights> per_copa;  // parallel to copa_ids
  Blacklist blacklist;
};

inline W2VModel train_w2v_lr(const Dataset& train, const EmbeddingStore& store, const LogRegParams& params = {}) {
  W2VModel model;
  model.dimension = store.dimension();
  model.params = params;
  model.blacklist = Blacklist::build(train);

  std::vector<std::vector<double>> X;
  std::vector<const Motion*> rows;
  for (const Motion& m : train.motions()) {
    if (auto v = embed_term(store, m.topic)) {
      X.push_back(std::move(*v));
      rows.push_back(&m);
    }
  }
  for (const Copa& c : train.copas()) {
    model.copa_ids.push_back(c.id);
    if (X.empty()) {
      model.per_copa.push_back({std::vector<double>(model.dimension, 0.0), 0.0});
      continue;
    }
    std::vector<int> y;
    for (const Motion* m : rows) y.push_back(c.contains(m->id) ? 1 : 0);
    model.per_copa.push_back(logreg_fit(X, y, params).weights);
  }
  return model;
}

// Abstains on every CoPA when the topic has no embedding.
inline ScoreRow predict_w2v(const W2VModel& model, const EmbeddingStore& store, const Motion& motion) {
  ScoreRow row(model.copa_ids.size());
  auto v = embed_term(store, motion.topic);
  if (!v) return row;
  for (std::size_t j = 0; j < row.size(); ++j)
    row[j] = model.blacklist.blocks(model.copa_ids[j], motion.action) ? 0.0 : logreg_predict(model.per_copa[j], *v);
  return row;
}

}  // namespace copa
