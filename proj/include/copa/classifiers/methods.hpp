#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "copa/classifiers/ba.hpp"
#include "copa/classifiers/feature_lr.hpp"
#include "copa/classifiers/knn.hpp"
#include "copa/classifiers/naive_bayes.hpp"
#include "copa/classifiers/w2v.hpp"

namespace copa {

enum class Method { BA, KNN, W2V, NB, LR };

inline constexpr std::array<Method, 5> kAllMethods{Method::BA, Method::KNN, Method::W2V, Method::NB, Method::LR};

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::BA: return "ba";
    case Method::KNN: return "knn";
    case Method::W2V: return "w2v";
    case Method::NB: return "nb";
    case Method::LR: return "lr";
  }
  return "?";
}

inline std::optional<Method> parse_method(std::string_view s) {
  for (Method m : kAllMethods)
    if (to_string(m) == s) return m;
  return std::nullopt;
}

inline bool is_topic_method(Method m) { return m == Method::KNN || m == Method::W2V || m == Method::NB; }

// Everything a method may read besides the dataset.
struct Resources {
  SimilarityContext sim;
  std::shared_ptr<const TopicSentenceCorpus> sentences;
};

struct MethodParams {
  int ba_k = 5;
  KnnParams knn;
  double nb_alpha = 1.0;
  LogRegParams logreg;
  std::size_t min_topic_copa_size = 10;
};

// Name of an input `m` cannot run without; empty when nothing is missing.
inline std::string missing_inputs(Method m, const Resources& r, const MethodParams& p) {
  switch (m) {
    case Method::KNN:
      switch (p.knn.kind) {
        case SimilarityKind::Embedding: return r.sim.embeddings ? "" : "embeddings";
        case SimilarityKind::EmbeddingAlt: return r.sim.alt_embeddings ? "" : "alt embeddings";
        case SimilarityKind::TfIdf: return r.sim.tfidf ? "" : "wiki corpus";
      }
      return {};
    case Method::W2V: return r.sim.embeddings ? "" : "embeddings";
    case Method::NB: return r.sentences ? "" : "sentence corpus";
    case Method::BA:
    case Method::LR: return {};
  }
  return {};
}

// CoPAs a method is evaluated on: topic methods only see topic-related CoPAs
// with at least `min_topic_copa_size` motions in `ds`; BA and LR see all (BA
// abstains on its own where support is below k).
inline std::vector<bool> eligible_copas(Method m, const Dataset& ds, const MethodParams& p) {
  std::vector<bool> ok;
  for (const Copa& c : ds.copas())
    ok.push_back(!is_topic_method(m) || (c.topic_related && c.motion_ids.size() >= p.min_topic_copa_size));
  return ok;
}

// Trains `method` on `train` and scores `motion` against every CoPA of
// `train`. `ex` carries leave-one-out exclusions (topic of the held-out motion).
inline ScoreRow train_and_score(Method method, const Dataset& train, const Motion& motion, const Resources& res,
                                const MethodParams& p, const FeatureExclusions& ex = {}) {
  if (auto missing = missing_inputs(method, res, p); !missing.empty())
    throw ConfigError("method " + std::string(to_string(method)) + " needs " + missing);
  switch (method) {
    case Method::BA: return predict_ba(train_ba(train, p.ba_k), motion);
    case Method::KNN: {
      KnnParams kp = p.knn;
      kp.skip_same_topic = kp.skip_same_topic || ex.topics.count(motion.topic) > 0;
      return predict_knn(train, motion, res.sim, kp);
    }
    case Method::W2V: {
      auto model = train_w2v_lr(train, *res.sim.embeddings, p.logreg);
      return predict_w2v(model, *res.sim.embeddings, motion);
    }
    case Method::NB: return predict_nb(train_nb(train, *res.sentences, p.nb_alpha), motion, *res.sentences);
    case Method::LR: {
      auto model = train_feature_lr(train, res.sim, p.logreg, ex);
      return predict_feature_lr(model, motion, train, res.sim, ex);
    }
  }
  return {};
}

}  // namespace copa
