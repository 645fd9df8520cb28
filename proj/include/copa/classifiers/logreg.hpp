#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "copa/error.hpp"
#include "copa/features/standardizer.hpp"

namespace copa {

struct LogRegParams {
  double lambda = 1e-3;  // L2 weight on w; the bias is not penalised
  double tol = 1e-6;     // stop when the gradient norm drops below this
  int max_iters = 10000;
};

struct LinearWeights {
  std::vector<double> w;
  double b = 0.0;
};

struct LogRegFit {
  LinearWeights weights;
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective;  // objective before the first step and after every accepted step
};

inline double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + e^z) without overflow.
inline double softplus(double z) { return (z > 0 ? z : 0.0) + std::log1p(std::exp(-std::abs(z))); }

namespace detail {

inline void check_problem(std::span<const std::vector<double>> X, std::span<const int> y, std::size_t dim) {
  if (X.size() != y.size())
    throw DimensionMismatch("logreg: " + std::to_string(X.size()) + " rows but " + std::to_string(y.size()) + " labels");
  for (const auto& row : X)
    if (row.size() != dim) throw DimensionMismatch("logreg: inconsistent feature dimension");
}

inline double margin(const LinearWeights& p, const std::vector<double>& x) {
  double z = p.b;
  for (std::size_t j = 0; j < x.size(); ++j) z += p.w[j] * x[j];
  return z;
}

}  // namespace detail

// Mean negative log-likelihood plus (lambda/2)·||w||².
inline double logreg_objective(std::span<const std::vector<double>> X, std::span<const int> y,
                               const LinearWeights& p, double lambda) {
  double nll = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    double z = detail::margin(p, X[i]);
    nll += softplus(z) - (y[i] != 0 ? z : 0.0);
  }
  double reg = 0.0;
  for (double wj : p.w) reg += wj * wj;
  return nll / static_cast<double>(X.size()) + 0.5 * lambda * reg;
}

// Gradient of logreg_objective; the bias component comes last.
inline std::vector<double> logreg_gradient(std::span<const std::vector<double>> X, std::span<const int> y,
                                           const LinearWeights& p, double lambda) {
  const std::size_t d = p.w.size();
  std::vector<double> g(d + 1, 0.0);
  for (std::size_t i = 0; i < X.size(); ++i) {
    double r = sigmoid(detail::margin(p, X[i])) - (y[i] != 0 ? 1.0 : 0.0);
    for (std::size_t j = 0; j < d; ++j) g[j] += r * X[i][j];
    g[d] += r;
  }
  const double n = static_cast<double>(X.size());
  for (std::size_t j = 0; j < d; ++j) g[j] = g[j] / n + lambda * p.w[j];
  g[d] /= n;
  return g;
}

// Full-batch gradient descent from zero with Armijo backtracking. The step
// size carries over between iterations (doubled before each search), and a
// step is only taken if it lowers the objective.
inline LogRegFit logreg_fit(std::span<const std::vector<double>> X, std::span<const int> y,
                            const LogRegParams& params = {}) {
  if (X.empty()) throw EmptyTrainingSet("logreg: no training rows");
  const std::size_t d = X[0].size();
  detail::check_problem(X, y, d);

  LogRegFit fit;
  LinearWeights& p = fit.weights;
  p.w.assign(d, 0.0);
  double f = logreg_objective(X, y, p, params.lambda);
  fit.objective.push_back(f);

  constexpr double kArmijo = 1e-4;
  constexpr double kMinStep = 1e-20;
  double step = 1.0;
  for (fit.iterations = 0; fit.iterations < params.max_iters; ++fit.iterations) {
    std::vector<double> g = logreg_gradient(X, y, p, params.lambda);
    double gg = 0.0;
    for (double gj : g) gg += gj * gj;
    if (std::sqrt(gg) < params.tol) {
      fit.converged = true;
      break;
    }
    step *= 2.0;
    bool moved = false;
    while (step > kMinStep) {
      LinearWeights cand{p.w, p.b - step * g[d]};
      for (std::size_t j = 0; j < d; ++j) cand.w[j] -= step * g[j];
      double fc = logreg_objective(X, y, cand, params.lambda);
      if (fc <= f - kArmijo * step * gg && fc <= f) {
        p = std::move(cand);
        f = fc;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;  // no representable step lowers the objective
    fit.objective.push_back(f);
  }
  return fit;
}

inline double logreg_predict(const LinearWeights& p, const std::vector<double>& x) {
  return sigmoid(detail::margin(p, x));
}

}  // namespace copa
