#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "copa/error.hpp"

namespace copa {

// A classifier's verdict on one (motion, CoPA) pair: a score in [0,1], or
// nullopt for an abstention.
using Score = std::optional<double>;

// One row of scores, indexed like the dataset's CoPA list.
using ScoreRow = std::vector<Score>;

// Dense (motion x CoPA) table of scores. Missing entries are abstentions.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  ScoreMatrix(std::string method, std::vector<std::string> motion_ids, std::vector<std::string> copa_ids)
      : method_(std::move(method)), motion_ids_(std::move(motion_ids)), copa_ids_(std::move(copa_ids)) {
    for (std::size_t i = 0; i < motion_ids_.size(); ++i) motion_index_.emplace(motion_ids_[i], i);
    for (std::size_t j = 0; j < copa_ids_.size(); ++j) copa_index_.emplace(copa_ids_[j], j);
    if (motion_index_.size() != motion_ids_.size() || copa_index_.size() != copa_ids_.size())
      throw DomainError("score matrix: duplicate ids");
    cells_.assign(motion_ids_.size() * copa_ids_.size(), std::nullopt);
  }

  const std::string& method() const noexcept { return method_; }
  void set_method(std::string m) { method_ = std::move(m); }
  const std::vector<std::string>& motion_ids() const noexcept { return motion_ids_; }
  const std::vector<std::string>& copa_ids() const noexcept { return copa_ids_; }
  std::size_t rows() const noexcept { return motion_ids_.size(); }
  std::size_t cols() const noexcept { return copa_ids_.size(); }

  const Score& at(std::size_t i, std::size_t j) const { return cells_[i * copa_ids_.size() + j]; }
  void set(std::size_t i, std::size_t j, Score s) {
    if (s && !(*s >= 0.0 && *s <= 1.0)) throw DomainError("score out of [0,1] for method " + method_);
    cells_[i * copa_ids_.size() + j] = s;
  }

  std::optional<std::size_t> motion_index(std::string_view id) const {
    auto it = motion_index_.find(std::string(id));
    if (it == motion_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> copa_index(std::string_view id) const {
    auto it = copa_index_.find(std::string(id));
    if (it == copa_index_.end()) return std::nullopt;
    return it->second;
  }

  Score get(std::string_view motion_id, std::string_view copa_id) const {
    auto i = motion_index(motion_id);
    auto j = copa_index(copa_id);
    if (!i || !j) return std::nullopt;
    return at(*i, *j);
  }

  void set_row(std::size_t i, const ScoreRow& row) {
    if (row.size() != cols()) throw DimensionMismatch("score row has wrong width");
    for (std::size_t j = 0; j < row.size(); ++j) set(i, j, row[j]);
  }

  bool operator==(const ScoreMatrix& o) const {
    return method_ == o.method_ && motion_ids_ == o.motion_ids_ && copa_ids_ == o.copa_ids_ && cells_ == o.cells_;
  }

 private:
  std::string method_;
  std::vector<std::string> motion_ids_;
  std::vector<std::string> copa_ids_;
  std::map<std::string, std::size_t> motion_index_;
  std::map<std::string, std::size_t> copa_index_;
  std::vector<Score> cells_;
};

}  // namespace copa
