#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "copa/text.hpp"
#include "copa/text_sim/wiki_corpus.hpp"

namespace copa {

using SparseVector = std::map<std::string, double>;

// idf(t) = ln(N_docs / df(t)); terms never seen get ln(N_docs). Natural log,
// no smoothing.
class TfIdfModel {
 public:
  TfIdfModel() = default;

  // Each document is a set of (lowercased) terms.
  explicit TfIdfModel(const std::vector<std::set<std::string>>& documents) : n_docs_(documents.size()) {
    for (const auto& doc : documents)
      for (const auto& t : doc) ++df_[to_lower(t)];
  }

  static TfIdfModel from_wiki(const WikiCorpus& corpus) {
    std::vector<std::set<std::string>> docs;
    for (const auto& [topic, art] : corpus.articles()) docs.push_back(art.body_terms);
    return TfIdfModel(docs);
  }

  std::size_t document_count() const noexcept { return n_docs_; }

  double idf(std::string_view term) const {
    if (n_docs_ == 0) return 0.0;
    auto it = df_.find(to_lower(term));
    double df = it == df_.end() ? 1.0 : static_cast<double>(it->second);
    return std::log(static_cast<double>(n_docs_) / df);
  }

  // tf * idf over a bag of terms.
  SparseVector weigh(const std::vector<std::string>& terms) const {
    std::map<std::string, double> tf;
    for (const auto& t : terms) tf[t] += 1.0;
    SparseVector v;
    for (const auto& [t, f] : tf) {
      double w = f * idf(t);
      if (w != 0.0) v[t] = w;
    }
    return v;
  }

 private:
  std::size_t n_docs_ = 0;
  std::map<std::string, std::size_t> df_;
};

inline double sparse_cosine(const SparseVector& a, const SparseVector& b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (const auto& [t, w] : a) aa += w * w;
  for (const auto& [t, w] : b) bb += w * w;
  // Iterate the two sorted maps in lockstep so the sum order depends only on
  // the shared keys, not on which argument comes first.
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      ab += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return ab / (std::sqrt(aa) * std::sqrt(bb));
}

}  // namespace copa
