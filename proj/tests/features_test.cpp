#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"

using namespace copa;
using copa::testing::make_copa;
using copa::testing::small_registry;

namespace {

// 10 motions; m0..m3 are "ban"; copa c holds m2..m6 (two of them bans).
Dataset counting_toy() {
  std::vector<Motion> motions;
  for (int i = 0; i < 10; ++i)
    motions.push_back({"m" + std::to_string(i), i < 4 ? "ban" : "legalize", "topic" + std::to_string(i)});
  std::vector<Label> labels;
  for (int i = 2; i <= 6; ++i) labels.push_back({"m" + std::to_string(i), "c", {}});
  labels.push_back({"m0", "d", {}});
  return Dataset(small_registry(), motions, {make_copa("c"), make_copa("d")}, labels, std::set<std::string>{});
}

struct Counts {
  std::size_t all = 0, a = 0, c = 0, ac = 0;
};

Counts count_sets(const Dataset& ds, const Copa& copa, const std::string& action, const std::set<std::string>& skip) {
  std::set<std::string> Ma, Mc, Mall;
  for (const auto& m : ds.motions()) {
    if (skip.count(m.id)) continue;
    Mall.insert(m.id);
    if (m.action == action) Ma.insert(m.id);
  }
  for (const auto& id : copa.motion_ids)
    if (!skip.count(id)) Mc.insert(id);
  Counts k;
  k.all = Mall.size();
  k.a = Ma.size();
  k.c = Mc.size();
  for (const auto& id : Ma) k.ac += Mc.count(id);
  return k;
}

}  // namespace

TEST(Features, NamesAndOrdering) {
  EXPECT_EQ(feature_names().size(), 17u);
  EXPECT_EQ(feature_names()[0], "emb_mt_cm");
  EXPECT_EQ(feature_names()[16], "action_given_copa");
  EXPECT_NE(feature_ordering().find("tfidf_mw_ct,avg_idf_cm_in_article"), std::string::npos);
}

TEST(Features, CountingToy) {
  Dataset ds = counting_toy();
  const Motion& m = *ds.find_motion("m0");
  auto f = compute_features(m, *ds.find_copa("c"), ds, SimilarityContext{});
  EXPECT_DOUBLE_EQ(f[13], 0.4);
  EXPECT_DOUBLE_EQ(f[14], 2.0 / 7.0);
  EXPECT_DOUBLE_EQ(f[15], 0.5);
  EXPECT_DOUBLE_EQ(f[16], 0.4);
  // No stores: similarity and idf features are 0.
  for (std::size_t i = 0; i < 13; ++i) EXPECT_EQ(f[i], 0.0);
}

TEST(Features, EmptyCopaAfterHoldout) {
  std::vector<Motion> motions{{"m0", "ban", "x"}, {"m1", "ban", "y"}};
  Dataset ds(small_registry(), motions, {make_copa("c")}, {{"m0", "c", {}}}, std::set<std::string>{});
  auto f = compute_features(*ds.find_motion("m0"), *ds.find_copa("c"), ds, SimilarityContext{}, std::string("m0"));
  EXPECT_EQ(f[14], 0.0);
  EXPECT_EQ(f[15], 0.0);
  EXPECT_EQ(f[16], 0.0);
  EXPECT_DOUBLE_EQ(f[13], 1.0);
  for (double x : f) EXPECT_FALSE(std::isnan(x));
}

TEST(Features, EveryMotionSameActionAndCopa) {
  std::vector<Motion> motions{{"m0", "ban", "x"}, {"m1", "ban", "y"}, {"m2", "ban", "z"}};
  std::vector<Label> labels{{"m0", "c", {}}, {"m1", "c", {}}, {"m2", "c", {}}};
  Dataset ds(small_registry(), motions, {make_copa("c")}, labels, std::set<std::string>{});
  auto f = compute_features(*ds.find_motion("m1"), *ds.find_copa("c"), ds, SimilarityContext{});
  for (std::size_t i = 13; i < 17; ++i) EXPECT_EQ(f[i], 1.0);
}

TEST(Features, HoldoutDropsMotionFromCopaDenominator) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Dataset ds = copa::testing::random_dataset(rng);
    for (const auto& copa : ds.copas())
      for (const auto& mid : copa.motion_ids) {
        const Motion& m = *ds.find_motion(mid);
        auto f = compute_features(m, copa, ds, SimilarityContext{}, mid);
        Counts k = count_sets(ds, copa, m.action, {mid});
        EXPECT_EQ(k.c, copa.motion_ids.size() - 1);
        EXPECT_DOUBLE_EQ(f[16], k.c == 0 ? 0.0 : static_cast<double>(k.ac) / k.c);
        EXPECT_DOUBLE_EQ(f[15], k.a == 0 ? 0.0 : static_cast<double>(k.ac) / k.a);
        EXPECT_DOUBLE_EQ(f[13], static_cast<double>(k.a) / k.all);
      }
  }
}

TEST(Features, HoldoutDropsTopicFromCopaTopics) {
  std::vector<Motion> motions{{"m0", "ban", "smoking"}, {"m1", "legalize", "smoking"}, {"m2", "ban", "gambling"}};
  std::vector<Label> labels{{"m0", "c", {}}, {"m1", "c", {}}, {"m2", "c", {}}};
  Dataset ds(small_registry(), motions, {make_copa("c")}, labels, std::set<std::string>{});
  auto ex = FeatureExclusions::holdout(ds, "m0");
  auto cs = copa_text_sets(*ds.find_copa("c"), ds, ex);
  EXPECT_EQ(cs.c_t, std::vector<std::string>{"gambling"});
  auto all = copa_text_sets(*ds.find_copa("c"), ds, FeatureExclusions{});
  EXPECT_EQ(all.c_t, (std::vector<std::string>{"gambling", "smoking"}));
}

TEST(Features, MotionTextSetsUseSurfaceForm) {
  Dataset ds = load_dataset(copa::testing::data_path("dataset.json"));
  SimilarityContext ctx;
  ctx.wiki = std::make_shared<WikiCorpus>(load_wiki_corpus(copa::testing::data_path("wiki.json")));
  const Motion* m = ds.find_motion("further_exploit", "solar energy");
  ASSERT_NE(m, nullptr);
  auto ms = motion_text_sets(*m, ds, ctx);
  EXPECT_EQ(ms.m_t, (std::vector<std::string>{"further exploit", "solar energy"}));
  EXPECT_EQ(ms.m_w, topic_related_titles("solar energy", *ctx.wiki));
  // Topic with no article: m_w stays empty, no error.
  Motion stray{"x", "ban", "no such article"};
  EXPECT_TRUE(motion_text_sets(stray, ds, ctx).m_w.empty());
}

TEST(Features, FuzzRangesBoundsAndDeterminism) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    Dataset ds = copa::testing::random_dataset(rng);
    SimilarityContext ctx;
    ctx.embeddings = copa::testing::random_store(rng);
    ctx.alt_embeddings = copa::testing::random_store(rng);
    for (const auto& m : ds.motions())
      for (const auto& c : ds.copas()) {
        auto f = compute_features(m, c, ds, ctx, m.id);
        for (std::size_t i = 0; i < 12; ++i) {
          EXPECT_GE(f[i], 0.0);
          EXPECT_LE(f[i], 1.0);
        }
        EXPECT_GE(f[12], 0.0);
        for (std::size_t i = 13; i < 17; ++i) {
          EXPECT_GE(f[i], 0.0);
          EXPECT_LE(f[i], 1.0);
        }
        EXPECT_LE(f[14], std::min(f[15], f[16]) + 1e-15);
        EXPECT_EQ(f, compute_features(m, c, ds, ctx, m.id));
      }
  }
}

TEST(Features, FixtureFullContext) {
  Dataset ds = load_dataset(copa::testing::data_path("dataset.json"));
  SimilarityContext ctx;
  ctx.embeddings = std::make_shared<EmbeddingStore>(load_embeddings(copa::testing::data_path("embeddings.txt")));
  ctx.alt_embeddings =
      std::make_shared<EmbeddingStore>(load_embeddings(copa::testing::data_path("embeddings_alt.txt")));
  ctx.wiki = std::make_shared<WikiCorpus>(load_wiki_corpus(copa::testing::data_path("wiki.json")));
  ctx.complete();
  const Motion* m = ds.find_motion("further_exploit", "solar energy");
  auto f = compute_features(*m, *ds.find_copa("clean_energy"), ds, ctx, m->id);
  for (std::size_t i = 0; i < 12; ++i) {
    EXPECT_GE(f[i], 0.0);
    EXPECT_LE(f[i], 1.0);
  }
  EXPECT_GT(f[0], 0.0);
  EXPECT_GE(f[12], 0.0);
}

TEST(Standardizer, SingleVectorMapsToZero) {
  std::vector<FeatureVector> rows(1);
  for (std::size_t i = 0; i < kFeatureCount; ++i) rows[0][i] = 0.1 * static_cast<double>(i);
  auto s = Standardizer::fit<FeatureVector>(rows);
  for (double z : s.transform(rows[0])) EXPECT_EQ(z, 0.0);
}

TEST(Standardizer, TwoVectors) {
  std::vector<FeatureVector> rows(2);
  rows[1][13] = 2.0;
  auto s = Standardizer::fit<FeatureVector>(rows);
  EXPECT_DOUBLE_EQ(s.transform(rows[0])[13], -1.0);
  EXPECT_DOUBLE_EQ(s.transform(rows[1])[13], 1.0);
  EXPECT_TRUE(s.is_constant(0));
  EXPECT_EQ(s.transform(rows[1])[0], 0.0);
}

TEST(Standardizer, MomentsOfTransformedSet) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 5.0);
  std::vector<FeatureVector> rows(50);
  for (auto& r : rows)
    for (double& x : r) x = u(rng);
  auto s = Standardizer::fit<FeatureVector>(rows);
  for (std::size_t j = 0; j < kFeatureCount; ++j) {
    double mean = 0, sq = 0;
    for (const auto& r : rows) mean += s.transform(r)[j];
    mean /= 50;
    for (const auto& r : rows) sq += (s.transform(r)[j] - mean) * (s.transform(r)[j] - mean);
    EXPECT_NEAR(mean, 0.0, 1e-9);
    EXPECT_NEAR(std::sqrt(sq / 50), 1.0, 1e-9);
  }
}

TEST(Standardizer, Errors) {
  std::vector<FeatureVector> none;
  EXPECT_THROW(Standardizer::fit<FeatureVector>(none), EmptyTrainingSet);
  std::vector<std::vector<double>> ragged{{1.0, 2.0}, {1.0}};
  EXPECT_THROW(Standardizer::fit<std::vector<double>>(ragged), DimensionMismatch);
  auto s = Standardizer::fit<std::vector<double>>(std::vector<std::vector<double>>{{1.0, 2.0}});
  EXPECT_THROW(s.transform(std::vector<double>{1.0}), DimensionMismatch);
}
