#pragma once

#include <optional>
#include <string>
#include <vector>

#include "copa/classifiers/score_matrix.hpp"
#include "copa/kb/dataset.hpp"

namespace copa {

// i/steps for i = 0..steps; strictly increasing within [0,1].
inline std::vector<double> threshold_grid(int steps = 100) {
  if (steps < 1) throw DomainError("threshold grid needs at least one step");
  std::vector<double> g;
  for (int i = 0; i <= steps; ++i) g.push_back(static_cast<double>(i) / steps);
  return g;
}

inline void check_grid(const std::vector<double>& grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) throw DomainError("threshold grid values must lie in [0,1]");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("threshold grid must be strictly increasing");
  }
}

struct PrPoint {
  double threshold;
  double precision;
  double recall;
};

struct CoveragePoint {
  double threshold;
  double coverage;
  double p_at_1;
};

// A pair is predicted at threshold t when its score is >= t; abstentions are
// never predicted. Recall counts every labelled pair of the dataset (minus
// general CoPAs when excluded), whether or not the method scored that CoPA.
// Thresholds with no predicted pair are omitted.
inline std::vector<PrPoint> pr_curve(const ScoreMatrix& scores, const Dataset& ds, bool exclude_general,
                                     const std::vector<double>& grid) {
  check_grid(grid);
  std::size_t positives = 0;
  for (const Label& l : ds.labels())
    if (!(exclude_general && ds.is_general(l.copa)) && ds.find_motion(l.motion)) ++positives;

  struct Cell {
    double score;
    bool match;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    const std::string& m = scores.motion_ids()[i];
    if (!ds.find_motion(m)) continue;
    for (std::size_t j = 0; j < scores.cols(); ++j) {
      const std::string& c = scores.copa_ids()[j];
      if (exclude_general && ds.is_general(c)) continue;
      if (const Score& s = scores.at(i, j)) cells.push_back({*s, ds.matches(m, c)});
    }
  }

  std::vector<PrPoint> out;
  for (double t : grid) {
    std::size_t predicted = 0, tp = 0;
    for (const Cell& cell : cells)
      if (cell.score >= t) {
        ++predicted;
        tp += cell.match;
      }
    if (predicted == 0) continue;
    double recall = positives == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(positives);
    out.push_back({t, static_cast<double>(tp) / static_cast<double>(predicted), recall});
  }
  return out;
}

// Highest-scoring non-abstaining CoPA of a motion (ties: smallest CoPA id).
inline std::optional<std::pair<std::string, double>> top_copa(const ScoreMatrix& scores, std::size_t row,
                                                              const Dataset& ds, bool exclude_general) {
  std::optional<std::pair<std::string, double>> best;
  for (std::size_t j = 0; j < scores.cols(); ++j) {
    const std::string& c = scores.copa_ids()[j];
    if (exclude_general && ds.is_general(c)) continue;
    const Score& s = scores.at(row, j);
    if (!s) continue;
    if (!best || *s > best->second || (*s == best->second && c < best->first)) best = std::make_pair(c, *s);
  }
  return best;
}

// coverage(t): share of all dataset motions with some score >= t.
// p@1(t): among those, share whose top CoPA is a true match.
inline std::vector<CoveragePoint> p_at_1_curve(const ScoreMatrix& scores, const Dataset& ds, bool exclude_general,
                                               const std::vector<double>& grid) {
  check_grid(grid);
  std::vector<std::pair<double, bool>> tops;  // per covered-able motion: (top score, top is a match)
  for (const Motion& m : ds.motions()) {
    auto row = scores.motion_index(m.id);
    if (!row) continue;
    if (auto best = top_copa(scores, *row, ds, exclude_general)) tops.emplace_back(best->second, ds.matches(m.id, best->first));
  }
  const double total = static_cast<double>(ds.motions().size());
  std::vector<CoveragePoint> out;
  for (double t : grid) {
    std::size_t covered = 0, hits = 0;
    for (const auto& [s, match] : tops)
      if (s >= t) {
        ++covered;
        hits += match;
      }
    if (covered == 0) continue;
    out.push_back({t, static_cast<double>(covered) / total, static_cast<double>(hits) / static_cast<double>(covered)});
  }
  return out;
}

struct Baseline {
  std::string copa_id;
  double precision = 0.0;
};

// Always predict the largest included CoPA (ties: smallest id).
inline Baseline baseline_largest(const Dataset& ds, bool exclude_general) {
  Baseline b;
  const Copa* best = nullptr;
  for (const Copa& c : ds.copas()) {
    if (exclude_general && ds.is_general(c.id)) continue;
    if (best == nullptr || c.motion_ids.size() > best->motion_ids.size() ||
        (c.motion_ids.size() == best->motion_ids.size() && c.id < best->id))
      best = &c;
  }
  if (best == nullptr || ds.motions().empty()) return b;
  b.copa_id = best->id;
  b.precision = static_cast<double>(best->motion_ids.size()) / static_cast<double>(ds.motions().size());
  return b;
}

}  // namespace copa
