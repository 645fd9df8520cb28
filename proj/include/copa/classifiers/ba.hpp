#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "copa/classifiers/score_matrix.hpp"
#include "copa/kb/dataset.hpp"

namespace copa {

// By-action classifier: score(c) = p(c, a) = n(c, a) / |M_a| over training
// motions, reported only when n(c, a) >= k.
struct BAModel {
  int k = 5;
  std::vector<std::string> copa_ids;
  std::map<std::string, std::size_t> action_totals;                          // |M_a|
  std::map<std::pair<std::string, std::string>, std::size_t> support;      // (copa, action) -> n(c,a)

  std::size_t n(const std::string& copa, const std::string& action) const {
    auto it = support.find({copa, action});
    return it == support.end() ? 0 : it->second;
  }

  double p(const std::string& copa, const std::string& action) const {
    auto it = action_totals.find(action);
    if (it == action_totals.end() || it->second == 0) return 0.0;
    return static_cast<double>(n(copa, action)) / static_cast<double>(it->second);
  }
};

inline BAModel train_ba(const Dataset& ds, int k = 5) {
  if (k < 1) throw DomainError("BA: k must be at least 1");
  BAModel model;
  model.k = k;
  for (const Copa& c : ds.copas()) model.copa_ids.push_back(c.id);
  for (const Motion& m : ds.motions()) ++model.action_totals[m.action];
  for (const Copa& c : ds.copas())
    for (const auto& id : c.motion_ids)
      if (const Motion* m = ds.find_motion(id)) ++model.support[{c.id, m->action}];
  return model;
}

inline ScoreRow predict_ba(const BAModel& model, const Motion& motion) {
  ScoreRow row(model.copa_ids.size());
  auto it = model.action_totals.find(motion.action);
  if (it == model.action_totals.end() || it->second == 0) return row;
  for (std::size_t j = 0; j < row.size(); ++j) {
    const std::string& c = model.copa_ids[j];
    if (model.n(c, motion.action) >= static_cast<std::size_t>(model.k)) row[j] = model.p(c, motion.action);
  }
  return row;
}

}  // namespace copa
