#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "copa/error.hpp"
#include "copa/text.hpp"

namespace copa {

using Vector = std::vector<double>;

// word -> vector table. Keys are stored lowercased; all vectors share one
// dimension.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(std::size_t dimension) : dim_(dimension) {
    if (dim_ == 0) throw DomainError("embedding dimension must be positive");
  }

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return table_.size(); }

  // Returns false (and keeps the old vector) when the lowercased word is
  // already present.
  bool add(std::string_view word, Vector v) {
    if (v.size() != dim_)
      throw DimensionMismatch("vector for '" + std::string(word) + "' has dimension " +
                              std::to_string(v.size()) + ", expected " + std::to_string(dim_));
    return table_.emplace(to_lower(word), std::move(v)).second;
  }

  const Vector* find(std::string_view word) const {
    auto it = table_.find(to_lower(word));
    return it == table_.end() ? nullptr : &it->second;
  }

 private:
  std::size_t dim_;
  std::unordered_map<std::string, Vector> table_;
};

namespace detail {

inline std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool parse_double(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

inline bool is_unsigned_int(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace detail

// Text format: one "word v1 ... vd" record per line. An optional first line
// "count dim" (two integers) is detected and skipped.
inline EmbeddingStore parse_embeddings(std::istream& in, const std::string& source = "<stream>") {
  std::optional<EmbeddingStore> store;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto fields = detail::split_spaces(line);
    if (fields.empty()) continue;
    if (lineno == 1 && fields.size() == 2 && detail::is_unsigned_int(fields[0]) && detail::is_unsigned_int(fields[1]))
      continue;
    if (fields.size() < 2) throw ParseError(source + ":" + std::to_string(lineno) + ": expected a word and a vector");
    Vector v(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i)
      if (!detail::parse_double(fields[i], v[i - 1]))
        throw ParseError(source + ":" + std::to_string(lineno) + ": bad number '" + std::string(fields[i]) + "'");
    if (!store) store.emplace(v.size());
    if (v.size() != store->dimension())
      throw ParseError(source + ":" + std::to_string(lineno) + ": expected " + std::to_string(store->dimension()) +
                       " components, got " + std::to_string(v.size()));
    store->add(fields[0], std::move(v));
  }
  if (!store) throw ParseError(source + ": no embedding records");
  return std::move(*store);
}

inline EmbeddingStore load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_embeddings(in, path.string());
}

inline double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Sum of the vectors of the known words of `term`, scaled to unit length.
// nullopt when no word is known (or the sum vanishes).
inline std::optional<Vector> embed_term(const EmbeddingStore& store, std::string_view term) {
  Vector sum(store.dimension(), 0.0);
  bool any = false;
  for (const auto& word : tokenize(term)) {
    if (const Vector* v = store.find(word)) {
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*v)[i];
      any = true;
    }
  }
  if (!any) return std::nullopt;
  double norm = std::sqrt(dot(sum, sum));
  if (!(norm > 0.0) || !std::isfinite(norm)) return std::nullopt;
  for (double& x : sum) x /= norm;
  return sum;
}

}  // namespace copa
