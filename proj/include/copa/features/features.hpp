#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "copa/kb/dataset.hpp"
#include "copa/text_sim/similarity.hpp"

namespace copa {

inline constexpr std::size_t kFeatureCount = 17;

// f1..f12 are pair-major, similarity-kind-minor:
//   (m_t,c_m) (m_t,c_t) (m_w,c_m) (m_w,c_t) x (emb, alt, tfidf)
// f13 average idf, f14..f17 count ratios.
inline const std::array<std::string, kFeatureCount>& feature_names() {
  static const std::array<std::string, kFeatureCount> names{
      "emb_mt_cm",  "alt_mt_cm",       "tfidf_mt_cm",         "emb_mt_ct",        "alt_mt_ct",
      "tfidf_mt_ct", "emb_mw_cm",      "alt_mw_cm",           "tfidf_mw_cm",      "emb_mw_ct",
      "alt_mw_ct",  "tfidf_mw_ct",     "avg_idf_cm_in_article", "action_share",   "action_copa_jaccard",
      "copa_given_action", "action_given_copa"};
  return names;
}

// Ordering tag persisted with trained models.
inline std::string feature_ordering() {
  std::string s;
  for (const auto& n : feature_names()) {
    if (!s.empty()) s += ',';
    s += n;
  }
  return s;
}

using FeatureVector = std::array<double, kFeatureCount>;

struct MotionTextSets {
  std::vector<std::string> m_t;  // {action surface form, topic}
  std::vector<std::string> m_w;  // <= 10 enriched wiki titles
};

struct CopaTextSets {
  std::vector<std::string> c_m;
  std::vector<std::string> c_t;  // distinct member topics, exclusions applied
};

// Motions removed from every count, and topics removed from c_t. Under
// leave-one-out the held-out motion goes in both.
struct FeatureExclusions {
  std::set<std::string> motion_ids;
  std::set<std::string> topics;

  static FeatureExclusions holdout(const Dataset& ds, std::string_view motion_id) {
    FeatureExclusions ex;
    ex.motion_ids.insert(std::string(motion_id));
    if (const Motion* m = ds.find_motion(motion_id)) ex.topics.insert(m->topic);
    return ex;
  }
};

inline MotionTextSets motion_text_sets(const Motion& motion, const Dataset& ds, const SimilarityContext& ctx) {
  MotionTextSets s;
  const std::string& surface = ds.actions().surface(motion.action);
  s.m_t.push_back(surface);
  if (motion.topic != surface) s.m_t.push_back(motion.topic);
  if (ctx.wiki && ctx.wiki->article(motion.topic) != nullptr) s.m_w = topic_related_titles(motion.topic, *ctx.wiki, 10);
  return s;
}

inline CopaTextSets copa_text_sets(const Copa& copa, const Dataset& ds, const FeatureExclusions& ex) {
  CopaTextSets s;
  s.c_m = copa.manual_titles;
  std::set<std::string> topics;
  for (const auto& id : copa.motion_ids) {
    if (ex.motion_ids.count(id)) continue;
    const Motion* m = ds.find_motion(id);
    if (m != nullptr && !ex.topics.count(m->topic)) topics.insert(m->topic);
  }
  s.c_t.assign(topics.begin(), topics.end());
  return s;
}

struct CountFeatures {
  double action_share = 0.0;         // |M_a| / |M_*|
  double action_copa_jaccard = 0.0;  // |M_a ∩ M_c| / |M_a ∪ M_c|
  double copa_given_action = 0.0;    // |M_a ∩ M_c| / |M_a|
  double action_given_copa = 0.0;    // |M_a ∩ M_c| / |M_c|
};

inline double safe_ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

inline CountFeatures count_features(std::string_view action, const Copa& copa, const Dataset& ds,
                                    const FeatureExclusions& ex) {
  std::size_t all = 0, with_action = 0, in_copa = 0, both = 0;
  for (const Motion& m : ds.motions()) {
    if (ex.motion_ids.count(m.id)) continue;
    ++all;
    bool a = m.action == action;
    bool c = copa.contains(m.id);
    with_action += a;
    in_copa += c;
    both += a && c;
  }
  return {safe_ratio(with_action, all), safe_ratio(both, with_action + in_copa - both), safe_ratio(both, with_action),
          safe_ratio(both, in_copa)};
}

inline FeatureVector compute_features(const Motion& motion, const MotionTextSets& ms, const Copa& copa,
                                      const CopaTextSets& cs, const Dataset& ds, const SimilarityContext& ctx,
                                      const FeatureExclusions& ex) {
  FeatureVector f{};
  const std::array<std::pair<const std::vector<std::string>*, const std::vector<std::string>*>, 4> pairs{
      {{&ms.m_t, &cs.c_m}, {&ms.m_t, &cs.c_t}, {&ms.m_w, &cs.c_m}, {&ms.m_w, &cs.c_t}}};
  std::size_t i = 0;
  for (const auto& [lhs, rhs] : pairs)
    for (SimilarityKind kind : kSimilarityKinds) f[i++] = set_similarity(kind, *lhs, *rhs, ctx);
  f[12] = (ctx.wiki && ctx.tfidf) ? avg_idf_in_article(cs.c_m, motion.topic, *ctx.wiki, *ctx.tfidf) : 0.0;
  CountFeatures c = count_features(motion.action, copa, ds, ex);
  f[13] = c.action_share;
  f[14] = c.action_copa_jaccard;
  f[15] = c.copa_given_action;
  f[16] = c.action_given_copa;
  return f;
}

inline FeatureVector compute_features(const Motion& motion, const Copa& copa, const Dataset& ds,
                                      const SimilarityContext& ctx, const FeatureExclusions& ex) {
  return compute_features(motion, motion_text_sets(motion, ds, ctx), copa, copa_text_sets(copa, ds, ex), ds, ctx, ex);
}

// Leave-one-out form: `holdout` is dropped from M_a, M_c, M_* and its topic
// from c_t.
inline FeatureVector compute_features(const Motion& motion, const Copa& copa, const Dataset& ds,
                                      const SimilarityContext& ctx,
                                      const std::optional<std::string>& holdout = std::nullopt) {
  return compute_features(motion, copa, ds, ctx,
                          holdout ? FeatureExclusions::holdout(ds, *holdout) : FeatureExclusions{});
}

}  // namespace copa
