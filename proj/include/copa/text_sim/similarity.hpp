#pragma once

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "copa/text_sim/embedding.hpp"
#include "copa/text_sim/tfidf.hpp"
#include "copa/text_sim/wiki_corpus.hpp"

namespace copa {

enum class SimilarityKind { Embedding, EmbeddingAlt, TfIdf };

inline constexpr std::array<SimilarityKind, 3> kSimilarityKinds{SimilarityKind::Embedding,
                                                                 SimilarityKind::EmbeddingAlt, SimilarityKind::TfIdf};

inline std::string_view to_string(SimilarityKind k) {
  switch (k) {
    case SimilarityKind::Embedding: return "emb";
    case SimilarityKind::EmbeddingAlt: return "alt";
    case SimilarityKind::TfIdf: return "tfidf";
  }
  return "?";
}

// Shared, immutable stores backing the similarity measures. Any of them may
// be missing; measures that need a missing store report no value.
struct SimilarityContext {
  std::shared_ptr<const EmbeddingStore> embeddings;
  std::shared_ptr<const EmbeddingStore> alt_embeddings;
  std::shared_ptr<const WikiCorpus> wiki;
  std::shared_ptr<const TfIdfModel> tfidf;

  // Derives the tf-idf model from the wiki articles when none is given.
  void complete() {
    if (!tfidf && wiki) tfidf = std::make_shared<const TfIdfModel>(TfIdfModel::from_wiki(*wiki));
  }
};

// Terms of the document that represents `term` for the tf-idf measure: the
// body of its wiki article when there is one, otherwise its own tokens.
inline std::vector<std::string> tfidf_document(std::string_view term, const WikiCorpus* wiki) {
  if (wiki != nullptr)
    if (const WikiArticle* art = wiki->article(term))
      return {art->body_terms.begin(), art->body_terms.end()};
  return tokenize(term);
}

inline std::optional<double> embedding_similarity(const EmbeddingStore& store, std::string_view a,
                                                  std::string_view b) {
  auto va = embed_term(store, a);
  if (!va) return std::nullopt;
  auto vb = embed_term(store, b);
  if (!vb) return std::nullopt;
  return std::clamp((dot(*va, *vb) + 1.0) / 2.0, 0.0, 1.0);
}

inline std::optional<double> tfidf_similarity(const TfIdfModel& model, const WikiCorpus* wiki, std::string_view a,
                                              std::string_view b) {
  SparseVector va = model.weigh(tfidf_document(a, wiki));
  if (va.empty()) return std::nullopt;
  SparseVector vb = model.weigh(tfidf_document(b, wiki));
  if (vb.empty()) return std::nullopt;
  return std::clamp(sparse_cosine(va, vb), 0.0, 1.0);
}

// Similarity in [0,1], or nullopt when either side cannot be represented.
inline std::optional<double> term_similarity(SimilarityKind kind, std::string_view a, std::string_view b,
                                             const SimilarityContext& ctx) {
  switch (kind) {
    case SimilarityKind::Embedding:
      if (!ctx.embeddings) return std::nullopt;
      return embedding_similarity(*ctx.embeddings, a, b);
    case SimilarityKind::EmbeddingAlt:
      if (!ctx.alt_embeddings) return std::nullopt;
      return embedding_similarity(*ctx.alt_embeddings, a, b);
    case SimilarityKind::TfIdf:
      if (!ctx.tfidf) return std::nullopt;
      return tfidf_similarity(*ctx.tfidf, ctx.wiki.get(), a, b);
  }
  return std::nullopt;
}

// Mean similarity over all pairs (one term from each side), skipping pairs
// without a value; 0 when nothing is left. Values are summed in sorted order
// so that swapping the arguments gives a bit-identical result.
inline double set_similarity(SimilarityKind kind, std::span<const std::string> lhs, std::span<const std::string> rhs,
                             const SimilarityContext& ctx) {
  std::vector<double> values;
  values.reserve(lhs.size() * rhs.size());
  for (const auto& a : lhs)
    for (const auto& b : rhs)
      if (auto s = term_similarity(kind, a, b, ctx)) values.push_back(*s);
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

// Mean idf of the CoPA titles that occur among the body terms of the topic's
// article; 0 when none do or the article is missing.
inline double avg_idf_in_article(std::span<const std::string> copa_titles, std::string_view topic,
                                 const WikiCorpus& corpus, const TfIdfModel& tfidf) {
  const WikiArticle* art = corpus.article(topic);
  if (art == nullptr) return 0.0;
  std::set<std::string> present;
  for (const auto& t : copa_titles) {
    std::string key = to_lower(t);
    if (art->body_terms.count(key)) present.insert(key);
  }
  if (present.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& t : present) sum += tfidf.idf(t);
  return sum / static_cast<double>(present.size());
}

}  // namespace copa
