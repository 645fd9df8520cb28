#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "copa/kb/dataset.hpp"

namespace copa {

struct CopaStats {
  std::vector<std::string> copa_ids;  // rows/columns of `overlap`, dataset order
  std::map<std::string, std::size_t> sizes;
  std::size_t motions = 0;
  std::size_t labels = 0;
  double covered_fraction = 0.0;       // motions in >= 1 CoPA / all motions
  double mean_copas_per_motion = 0.0;  // over all motions
  std::size_t max_copas_per_motion = 0;
  // overlap[i][j] = |M_i ∩ M_j| / |M_i|; an empty row is all zero.
  std::vector<std::vector<double>> overlap;
};

inline CopaStats copa_stats(const Dataset& ds, bool exclude_general) {
  CopaStats st;
  st.motions = ds.motions().size();
  std::vector<const Copa*> included;
  for (const Copa& c : ds.copas()) {
    if (exclude_general && ds.is_general(c.id)) continue;
    included.push_back(&c);
    st.copa_ids.push_back(c.id);
    st.sizes[c.id] = c.motion_ids.size();
  }

  std::map<std::string, std::size_t> per_motion;
  for (const Copa* c : included) {
    for (const auto& m : c->motion_ids) ++per_motion[m];
    st.labels += c->motion_ids.size();
  }
  for (const auto& [m, n] : per_motion) st.max_copas_per_motion = std::max(st.max_copas_per_motion, n);
  if (st.motions > 0) {
    st.covered_fraction = static_cast<double>(per_motion.size()) / static_cast<double>(st.motions);
    st.mean_copas_per_motion = static_cast<double>(st.labels) / static_cast<double>(st.motions);
  }

  const std::size_t n = included.size();
  st.overlap.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& mi = included[i]->motion_ids;
    if (mi.empty()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& mj = included[j]->motion_ids;
      std::size_t inter = 0;
      for (const auto& m : mi) inter += mj.count(m);
      st.overlap[i][j] = static_cast<double>(inter) / static_cast<double>(mi.size());
    }
  }
  return st;
}

}  // namespace copa
