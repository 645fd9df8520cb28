#pragma once

#include <algorithm>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "copa/classifiers/score_matrix.hpp"

namespace copa {

// Each entry takes the highest non-abstaining score among the inputs, and
// abstains only when all inputs do. The id space is the union of the inputs'
// ids, in first-seen order; ids absent from an input count as abstentions.
inline ScoreMatrix ensemble(std::span<const ScoreMatrix> inputs, std::string method = "ensemble") {
  if (inputs.empty()) throw DomainError("ensemble: no input matrices");
  std::vector<std::string> motions, copas;
  std::set<std::string> seen_m, seen_c;
  for (const auto& in : inputs) {
    for (const auto& id : in.motion_ids())
      if (seen_m.insert(id).second) motions.push_back(id);
    for (const auto& id : in.copa_ids())
      if (seen_c.insert(id).second) copas.push_back(id);
  }
  ScoreMatrix out(std::move(method), motions, copas);
  for (const auto& in : inputs) {
    for (std::size_t i = 0; i < in.rows(); ++i) {
      std::size_t oi = *out.motion_index(in.motion_ids()[i]);
      for (std::size_t j = 0; j < in.cols(); ++j) {
        const Score& s = in.at(i, j);
        if (!s) continue;
        std::size_t oj = *out.copa_index(in.copa_ids()[j]);
        const Score& cur = out.at(oi, oj);
        if (!cur || *s > *cur) out.set(oi, oj, s);
      }
    }
  }
  return out;
}

}  // namespace copa
