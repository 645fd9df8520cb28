#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "copa/error.hpp"

namespace copa {

inline double log_choose(long n, long k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// Upper tail P[X >= k] for X ~ Hypergeometric(population N, K successes,
// n draws). The pmf is evaluated in log space and accumulated from the top of
// the support downwards against the pmf mode, so the result is exactly
// non-increasing in k for fixed (n, K, N).
inline double hypergeom_pvalue(long k, long n, long K, long N) {
  if (!(0 <= k && k <= n && n <= N && k <= K && K <= N))
    throw DomainError("hypergeom_pvalue: invalid arguments k=" + std::to_string(k) + " n=" + std::to_string(n) +
                      " K=" + std::to_string(K) + " N=" + std::to_string(N));
  const long lo = std::max(0L, n + K - N);
  const long hi = std::min(n, K);
  if (k <= lo) return 1.0;

  const double log_total = log_choose(N, n);
  std::vector<double> logp(static_cast<std::size_t>(hi - lo + 1));
  for (long i = lo; i <= hi; ++i)
    logp[static_cast<std::size_t>(i - lo)] = log_choose(K, i) + log_choose(N - K, n - i) - log_total;
  const double peak = *std::max_element(logp.begin(), logp.end());

  double tail = 0.0;
  for (long i = hi; i >= k; --i) tail += std::exp(logp[static_cast<std::size_t>(i - lo)] - peak);
  return std::clamp(std::exp(peak) * tail, 0.0, 1.0);
}

}  // namespace copa
