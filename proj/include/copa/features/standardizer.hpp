#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "copa/error.hpp"

namespace copa {

// Per-feature z-scoring with population standard deviation. Features whose
// deviation is at or below the floor are treated as constant and map to 0.
class Standardizer {
 public:
  static constexpr double kStddevFloor = 1e-9;

  Standardizer() = default;
  Standardizer(std::vector<double> mean, std::vector<double> stddev)
      : mean_(std::move(mean)), stddev_(std::move(stddev)) {
    if (mean_.size() != stddev_.size()) throw DimensionMismatch("standardizer: mean/stddev size mismatch");
  }

  template <typename Row>
  static Standardizer fit(std::span<const Row> rows) {
    if (rows.empty()) throw EmptyTrainingSet("standardize: no training vectors");
    const std::size_t d = std::size(rows[0]);
    std::vector<double> mean(d, 0.0), sd(d, 0.0);
    for (const auto& r : rows) {
      if (std::size(r) != d) throw DimensionMismatch("standardize: inconsistent vector sizes");
      for (std::size_t j = 0; j < d; ++j) mean[j] += r[j];
    }
    const double n = static_cast<double>(rows.size());
    for (double& m : mean) m /= n;
    for (const auto& r : rows)
      for (std::size_t j = 0; j < d; ++j) sd[j] += (r[j] - mean[j]) * (r[j] - mean[j]);
    for (double& s : sd) s = std::sqrt(s / n);
    return Standardizer(std::move(mean), std::move(sd));
  }

  std::size_t dimension() const noexcept { return mean_.size(); }
  const std::vector<double>& mean() const noexcept { return mean_; }
  const std::vector<double>& stddev() const noexcept { return stddev_; }
  bool is_constant(std::size_t j) const { return !(stddev_[j] > kStddevFloor); }

  template <typename Row>
  std::vector<double> transform(const Row& x) const {
    if (std::size(x) != mean_.size()) throw DimensionMismatch("standardizer: input has wrong dimension");
    std::vector<double> z(mean_.size());
    for (std::size_t j = 0; j < z.size(); ++j) z[j] = is_constant(j) ? 0.0 : (x[j] - mean_[j]) / stddev_[j];
    return z;
  }

 private:
  std::vector<double> mean_;
  std::vector<double> stddev_;
};

}  // namespace copa
