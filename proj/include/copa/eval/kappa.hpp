#pragma once

#include <span>

#include "copa/error.hpp"

namespace copa {

// Cohen's kappa for two binary annotations (nonzero = positive). When chance
// agreement is total (p_e = 1) the result is 1 for perfect observed agreement
// and 0 otherwise.
inline double cohen_kappa(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw LengthMismatch("cohen_kappa: label lists differ in length");
  if (a.empty()) throw LengthMismatch("cohen_kappa: empty label lists");
  const double n = static_cast<double>(a.size());
  double agree = 0, pos_a = 0, pos_b = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool x = a[i] != 0, y = b[i] != 0;
    agree += x == y;
    pos_a += x;
    pos_b += y;
  }
  const double po = agree / n;
  const double pe = (pos_a / n) * (pos_b / n) + (1 - pos_a / n) * (1 - pos_b / n);
  if (pe >= 1.0) return po >= 1.0 ? 1.0 : 0.0;
  return (po - pe) / (1.0 - pe);
}

}  // namespace copa
