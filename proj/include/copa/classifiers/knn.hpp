#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "copa/classifiers/score_matrix.hpp"
#include "copa/kb/dataset.hpp"
#include "copa/text_sim/similarity.hpp"

namespace copa {

struct KnnParams {
  SimilarityKind kind = SimilarityKind::Embedding;
  double threshold = 0.5;   // neighbours need similarity strictly above this
  std::size_t min_neighbors = 3;
  std::size_t top = 5;
  // Skip training motions whose topic equals the query's (leave-one-out).
  bool skip_same_topic = false;
};

struct Neighbor {
  std::string motion_id;
  double similarity;
};

// Training motions whose topic is similar enough to the query's, best first
// (ties by motion id), truncated to `top`. Empty when fewer than
// `min_neighbors` qualify.
inline std::vector<Neighbor> knn_neighbors(const Dataset& train, const Motion& motion, const SimilarityContext& ctx,
                                           const KnnParams& params = {}) {
  std::vector<Neighbor> cands;
  for (const Motion& m : train.motions()) {
    if (m.id == motion.id) continue;
    if (params.skip_same_topic && m.topic == motion.topic) continue;
    auto s = term_similarity(params.kind, motion.topic, m.topic, ctx);
    if (s && *s > params.threshold) cands.push_back({m.id, *s});
  }
  if (cands.size() < params.min_neighbors) return {};
  std::sort(cands.begin(), cands.end(), [](const Neighbor& a, const Neighbor& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.motion_id < b.motion_id;
  });
  if (cands.size() > params.top) cands.resize(params.top);
  return cands;
}

// score(c) = fraction of the selected neighbours that belong to c; abstains
// on every CoPA when too few neighbours qualify.
inline ScoreRow predict_knn(const Dataset& train, const Motion& motion, const SimilarityContext& ctx,
                            const KnnParams& params = {}) {
  ScoreRow row(train.copas().size());
  auto nn = knn_neighbors(train, motion, ctx, params);
  if (nn.empty()) return row;
  for (std::size_t j = 0; j < row.size(); ++j) {
    std::size_t hits = 0;
    for (const auto& n : nn) hits += train.copas()[j].contains(n.motion_id);
    row[j] = static_cast<double>(hits) / static_cast<double>(nn.size());
  }
  return row;
}

}  // namespace copa
