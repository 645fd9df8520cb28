#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"

using namespace copa;
using copa::testing::make_copa;
using copa::testing::small_registry;

namespace {

ScoreMatrix matrix_for(const Dataset& ds, const std::string& method = "x") {
  std::vector<std::string> ms, cs;
  for (const auto& m : ds.motions()) ms.push_back(m.id);
  for (const auto& c : ds.copas()) cs.push_back(c.id);
  return ScoreMatrix(method, ms, cs);
}

// 5 motions x 3 CoPAs with random labels.
Dataset five_by_three(std::mt19937_64& rng) {
  std::bernoulli_distribution lab(0.4);
  std::vector<Motion> motions;
  std::vector<Label> labels;
  for (int i = 0; i < 5; ++i) {
    motions.push_back({"m" + std::to_string(i), "ban", "t" + std::to_string(i)});
    for (int j = 0; j < 3; ++j)
      if (lab(rng)) labels.push_back({motions.back().id, "c" + std::to_string(j), {}});
  }
  return Dataset(small_registry(), motions, {make_copa("c0"), make_copa("c1"), make_copa("c2")}, labels,
                 std::set<std::string>{"c2"});
}

void randomize(ScoreMatrix& s, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> hundredths(0, 100);
  std::bernoulli_distribution abstain(0.2);
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (!abstain(rng)) s.set(i, j, hundredths(rng) / 100.0);
}

}  // namespace

// ---- leave-one-out

TEST(LeaveOneOut, ThreeFolds) {
  std::vector<Motion> motions{{"m0", "ban", "a"}, {"m1", "ban", "b"}, {"m2", "legalize", "c"}};
  Dataset ds(small_registry(), motions, {make_copa("c")}, {{"m0", "c", {}}, {"m1", "c", {}}},
             std::set<std::string>{});
  EvalConfig cfg;
  cfg.methods = {Method::BA};
  cfg.params.ba_k = 1;
  auto r = leave_one_out(ds, cfg, Resources{});
  ASSERT_EQ(r.methods.size(), 1u);
  EXPECT_EQ(r.methods[0].rows(), 3u);
  // Fold m0 trains on {m1, m2}: one ban motion, in c.
  EXPECT_EQ(*r.methods[0].get("m0", "c"), 1.0);
  EXPECT_EQ(*r.methods[0].get("m1", "c"), 1.0);
  // Fold m2: no legalize motion left.
  EXPECT_FALSE(r.methods[0].get("m2", "c"));
  EXPECT_EQ(r.ensemble.get("m0", "c"), r.methods[0].get("m0", "c"));
}

TEST(LeaveOneOut, BAAbstainsWhenSupportIsShort) {
  std::vector<Motion> motions;
  std::vector<Label> labels;
  for (int i = 0; i < 6; ++i) {
    motions.push_back({"m" + std::to_string(i), "ban", "t" + std::to_string(i)});
    if (i < 4) labels.push_back({motions.back().id, "c", {}});
  }
  Dataset ds(small_registry(), motions, {make_copa("c")}, labels, std::set<std::string>{});
  EvalConfig cfg;
  cfg.methods = {Method::BA};
  auto r = leave_one_out(ds, cfg, Resources{});
  for (std::size_t i = 0; i < r.methods[0].rows(); ++i) EXPECT_FALSE(r.methods[0].at(i, 0)) << i;
}

TEST(LeaveOneOut, KnnMatchesPerFoldOracle) {
  std::mt19937_64 rng(17);
  const auto& words = copa::testing::topic_words();
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    std::bernoulli_distribution lab(0.4);
    std::vector<Motion> motions;
    std::vector<Label> labels;
    for (int i = 0; i < 10; ++i) {
      // Topics may repeat across motions (different actions).
      motions.push_back({"m" + std::to_string(i), small_registry().actions()[i % 4].id, words[pick(rng)]});
      for (int j = 0; j < 2; ++j)
        if (lab(rng)) labels.push_back({motions.back().id, "c" + std::to_string(j), {}});
    }
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<Motion> uniq;
    for (const auto& m : motions)
      if (seen.emplace(m.action, m.topic).second) uniq.push_back(m);
    std::vector<Label> kept;
    for (const auto& l : labels)
      for (const auto& m : uniq)
        if (m.id == l.motion) kept.push_back(l);
    Dataset ds(small_registry(), uniq, {make_copa("c0", "", true), make_copa("c1", "", false)}, kept,
               std::set<std::string>{});
    Resources res;
    res.sim.embeddings = copa::testing::random_store(rng, 3);
    EvalConfig cfg;
    cfg.methods = {Method::KNN};
    cfg.params.min_topic_copa_size = 1;
    cfg.threads = 3;
    auto r = leave_one_out(ds, cfg, res);

    for (const Motion& held : ds.motions()) {
      auto hv = embed_term(*res.sim.embeddings, held.topic);
      std::vector<std::pair<double, std::string>> cands;
      for (const Motion& m : ds.motions()) {
        if (m.id == held.id || m.topic == held.topic) continue;
        auto v = embed_term(*res.sim.embeddings, m.topic);
        double s = (dot(*hv, *v) + 1) / 2;
        if (s > 0.5) cands.emplace_back(-s, m.id);
      }
      std::sort(cands.begin(), cands.end());
      for (const Copa& c : ds.copas()) {
        Score got = r.methods[0].get(held.id, c.id);
        bool eligible = c.topic_related && !c.motion_ids.empty();
        if (!eligible || cands.size() < 3) {
          EXPECT_FALSE(got);
          continue;
        }
        std::size_t top = std::min<std::size_t>(5, cands.size()), hits = 0;
        for (std::size_t k = 0; k < top; ++k) hits += c.contains(cands[k].second);
        ASSERT_TRUE(got);
        EXPECT_DOUBLE_EQ(*got, static_cast<double>(hits) / top);
      }
    }
    // Thread count does not change results.
    cfg.threads = 1;
    EXPECT_EQ(leave_one_out(ds, cfg, res).methods[0], r.methods[0]);
  }
}

TEST(LeaveOneOut, Errors) {
  std::vector<Motion> one{{"m0", "ban", "a"}};
  Dataset tiny(small_registry(), one, {make_copa("c")}, {}, std::set<std::string>{});
  EvalConfig cfg;
  cfg.methods = {Method::BA};
  EXPECT_THROW(leave_one_out(tiny, cfg, Resources{}), DomainError);

  Dataset ds = load_dataset(copa::testing::data_path("dataset.json"));
  cfg.methods = {Method::W2V};
  EXPECT_THROW(leave_one_out(ds, cfg, Resources{}), ConfigError);

  // A training failure inside a fold is reported with the fold's motion.
  cfg.methods = {Method::BA};
  cfg.params.ba_k = 0;
  try {
    leave_one_out(ds, cfg, Resources{});
    FAIL() << "expected FoldError";
  } catch (const FoldError& e) {
    EXPECT_EQ(e.motion_id(), ds.motions()[0].id);
    EXPECT_NE(std::string(e.what()).find(ds.motions()[0].id), std::string::npos);
  }
}

// ---- PR curve

TEST(PrCurve, PerfectScorerAndAllAbstain) {
  Dataset ds = load_dataset(copa::testing::data_path("dataset.json"));
  ScoreMatrix s = matrix_for(ds);
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) s.set(i, j, ds.matches(s.motion_ids()[i], s.copa_ids()[j]) ? 1.0 : 0.0);
  auto pr = pr_curve(s, ds, false, threshold_grid());
  auto at_half = std::find_if(pr.begin(), pr.end(), [](const PrPoint& p) { return p.threshold == 0.5; });
  ASSERT_NE(at_half, pr.end());
  EXPECT_EQ(at_half->precision, 1.0);
  EXPECT_EQ(at_half->recall, 1.0);

  EXPECT_TRUE(pr_curve(matrix_for(ds), ds, false, threshold_grid()).empty());
  EXPECT_TRUE(p_at_1_curve(matrix_for(ds), ds, false, threshold_grid()).empty());
}

TEST(PrCurve, MatchesExhaustiveSweep) {
  std::mt19937_64 rng(123);
  const auto grid = threshold_grid();
  for (int trial = 0; trial < 100; ++trial) {
    Dataset ds = five_by_three(rng);
    ScoreMatrix s = matrix_for(ds);
    randomize(s, rng);
    for (bool excl : {false, true}) {
      std::vector<PrPoint> oracle;
      std::size_t positives = 0;
      for (const auto& l : ds.labels()) positives += !(excl && l.copa == "c2");
      for (double t : grid) {
        std::size_t pred = 0, tp = 0;
        for (std::size_t i = 0; i < 5; ++i)
          for (std::size_t j = 0; j < 3; ++j) {
            if (excl && j == 2) continue;
            if (s.at(i, j) && *s.at(i, j) >= t) {
              ++pred;
              tp += ds.matches("m" + std::to_string(i), "c" + std::to_string(j));
            }
          }
        if (pred == 0) continue;
        oracle.push_back({t, double(tp) / pred, positives ? double(tp) / positives : 0.0});
      }
      auto got = pr_curve(s, ds, excl, grid);
      ASSERT_EQ(got.size(), oracle.size());
      for (std::size_t k = 0; k < got.size(); ++k) {
        EXPECT_EQ(got[k].threshold, oracle[k].threshold);
        EXPECT_EQ(got[k].precision, oracle[k].precision);
        EXPECT_EQ(got[k].recall, oracle[k].recall);
        if (k > 0) {
          EXPECT_LE(got[k].recall, got[k - 1].recall);
        }
        EXPECT_GE(got[k].precision, 0.0);
        EXPECT_LE(got[k].precision, 1.0);
      }
    }
  }
}

TEST(PrCurve, GridValidation) {
  Dataset ds = load_dataset(copa::testing::data_path("dataset.json"));
  ScoreMatrix s = matrix_for(ds);
  EXPECT_THROW(pr_curve(s, ds, false, {0.5, 0.5}), DomainError);
  EXPECT_THROW(pr_curve(s, ds, false, {0.2, 1.2}), DomainError);
  EXPECT_THROW(threshold_grid(0), DomainError);
  EXPECT_EQ(threshold_grid().size(), 101u);
}

// ---- P@1

TEST(PAt1, MatchesExhaustiveSweep) {
  std::mt19937_64 rng(321);
  const auto grid = threshold_grid(20);
  for (int trial = 0; trial < 100; ++trial) {
    Dataset ds = five_by_three(rng);
    ScoreMatrix s = matrix_for(ds);
    randomize(s, rng);
    for (bool excl : {false, true}) {
      auto got = p_at_1_curve(s, ds, excl, grid);
      std::size_t k = 0;
      for (double t : grid) {
        std::size_t covered = 0, hits = 0;
        for (std::size_t i = 0; i < 5; ++i) {
          // argmax over included columns; earlier column (smaller id) wins ties
          int best = -1;
          for (std::size_t j = 0; j < 3; ++j) {
            if (excl && j == 2) continue;
            if (!s.at(i, j)) continue;
            if (best < 0 || *s.at(i, j) > *s.at(i, best)) best = static_cast<int>(j);
          }
          if (best < 0 || *s.at(i, best) < t) continue;
          ++covered;
          hits += ds.matches("m" + std::to_string(i), "c" + std::to_string(best));
        }
        if (covered == 0) continue;
        ASSERT_LT(k, got.size());
        EXPECT_EQ(got[k].threshold, t);
        EXPECT_EQ(got[k].coverage, covered / 5.0);
        EXPECT_EQ(got[k].p_at_1, double(hits) / covered);
        if (k > 0) {
          EXPECT_LE(got[k].coverage, got[k - 1].coverage);
        }
        ++k;
      }
      EXPECT_EQ(k, got.size());
    }
  }
}

TEST(PAt1, OracleScorer) {
  Dataset ds = load_dataset(copa::testing::data_path("dataset.json"));
  ScoreMatrix s = matrix_for(ds);
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (ds.matches(s.motion_ids()[i], s.copa_ids()[j])) s.set(i, j, 0.9);
  auto curve = p_at_1_curve(s, ds, false, {0.5, 0.95});
  ASSERT_EQ(curve.size(), 1u);
  EXPECT_EQ(curve[0].p_at_1, 1.0);
}

// ---- baseline

TEST(Baseline, Cases) {
  std::vector<Motion> motions;
  std::vector<Label> labels;
  for (int i = 0; i < 10; ++i) {
    motions.push_back({"m" + std::to_string(i), "ban", "t" + std::to_string(i)});
    if (i < 4) labels.push_back({motions.back().id, "big", {}});
    if (i >= 8) labels.push_back({motions.back().id, "small", {}});
  }
  Dataset ds(small_registry(), motions, {make_copa("small"), make_copa("big")}, labels, std::set<std::string>{});
  auto b = baseline_largest(ds, false);
  EXPECT_EQ(b.copa_id, "big");
  EXPECT_DOUBLE_EQ(b.precision, 0.4);

  std::vector<Label> all;
  for (const auto& m : motions) all.push_back({m.id, "small", {}});
  Dataset full(small_registry(), motions, {make_copa("small"), make_copa("big")}, all, std::set<std::string>{"big"});
  EXPECT_EQ(baseline_largest(full, false).precision, 1.0);

  // Tie on size: smallest id.
  std::vector<Label> tie{{"m0", "zz", {}}, {"m1", "aa", {}}};
  Dataset tied(small_registry(), motions, {make_copa("zz"), make_copa("aa")}, tie, std::set<std::string>{"aa"});
  EXPECT_EQ(baseline_largest(tied, false).copa_id, "aa");
  EXPECT_EQ(baseline_largest(tied, true).copa_id, "zz");
}

// ---- kappa

TEST(Kappa, Cases) {
  std::vector<int> a{1, 0, 1, 1, 0, 0};
  EXPECT_DOUBLE_EQ(cohen_kappa(a, a), 1.0);
  std::vector<int> na{0, 1, 0, 0, 1, 1};
  EXPECT_DOUBLE_EQ(cohen_kappa(a, na), -1.0);

  std::vector<int> x{1, 1, 0, 0, 1}, y{1, 0, 0, 0, 1};
  // Confusion: both-1 = 2, x1y0 = 1, x0y1 = 0, both-0 = 2.
  const double po = 4.0 / 5, pe = (3.0 / 5) * (2.0 / 5) + (2.0 / 5) * (3.0 / 5);
  EXPECT_NEAR(cohen_kappa(x, y), (po - pe) / (1 - pe), 1e-12);

  std::vector<int> ones{1, 1, 1};
  EXPECT_EQ(cohen_kappa(ones, ones), 1.0);
  std::vector<int> shorter{1, 0};
  EXPECT_THROW(cohen_kappa(ones, shorter), LengthMismatch);
  std::vector<int> none;
  EXPECT_THROW(cohen_kappa(none, none), LengthMismatch);

  std::mt19937_64 rng(5);
  std::bernoulli_distribution coin(0.5);
  for (int t = 0; t < 200; ++t) {
    std::vector<int> p(12), q(12);
    for (int i = 0; i < 12; ++i) {
      p[i] = coin(rng);
      q[i] = coin(rng);
    }
    double k = cohen_kappa(p, q);
    EXPECT_GE(k, -1.0);
    EXPECT_LE(k, 1.0);
    EXPECT_DOUBLE_EQ(k, cohen_kappa(q, p));
  }
}

// ---- properties over a full evaluation

class FixtureEval : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    ds_ = new Dataset(load_dataset(copa::testing::data_path("dataset.json")));
    Resources res;
    res.sim.embeddings = std::make_shared<EmbeddingStore>(load_embeddings(copa::testing::data_path("embeddings.txt")));
    res.sim.alt_embeddings =
        std::make_shared<EmbeddingStore>(load_embeddings(copa::testing::data_path("embeddings_alt.txt")));
    res.sim.wiki = std::make_shared<WikiCorpus>(load_wiki_corpus(copa::testing::data_path("wiki.json")));
    res.sim.complete();
    res.sentences =
        std::make_shared<TopicSentenceCorpus>(load_sentence_corpus(copa::testing::data_path("sentences.jsonl")));
    EvalConfig cfg;
    cfg.params.logreg.max_iters = 500;
    result_ = new LooResult(leave_one_out(*ds_, cfg, res));
  }
  static void TearDownTestSuite() {
    delete result_;
    delete ds_;
  }
  static Dataset* ds_;
  static LooResult* result_;
};

Dataset* FixtureEval::ds_ = nullptr;
LooResult* FixtureEval::result_ = nullptr;

TEST_F(FixtureEval, IneligibleCopasAbstain) {
  MethodParams p;
  for (const auto& m : result_->methods) {
    Method method = *parse_method(m.method());
    auto ok = eligible_copas(method, *ds_, p);
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!ok[j]) {
        for (std::size_t i = 0; i < m.rows(); ++i) EXPECT_FALSE(m.at(i, j));
      }
  }
}

TEST_F(FixtureEval, EnsemblePredictionsAreUnionOfConstituents) {
  for (double t : threshold_grid(20)) {
    std::set<std::pair<std::string, std::string>> uni, ens;
    for (const auto& m : result_->methods)
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
          if (m.at(i, j) && *m.at(i, j) >= t) uni.emplace(m.motion_ids()[i], m.copa_ids()[j]);
    const auto& e = result_->ensemble;
    for (std::size_t i = 0; i < e.rows(); ++i)
      for (std::size_t j = 0; j < e.cols(); ++j)
        if (e.at(i, j) && *e.at(i, j) >= t) ens.emplace(e.motion_ids()[i], e.copa_ids()[j]);
    EXPECT_EQ(ens, uni) << t;
  }
}

TEST_F(FixtureEval, ExcludeGeneralRemovesGeneralIds) {
  // Make general CoPAs score perfectly; with exclusion, curves must be as if
  // those columns and their labels were absent.
  ScoreMatrix s = result_->ensemble;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (ds_->is_general(s.copa_ids()[j])) s.set(i, j, 1.0);

  std::vector<std::string> keep;
  for (const auto& c : ds_->copas())
    if (!ds_->is_general(c.id)) keep.push_back(c.id);
  ScoreMatrix reduced("ensemble", s.motion_ids(), keep);
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) reduced.set(i, j, s.get(s.motion_ids()[i], keep[j]));
  std::vector<Label> labels;
  std::vector<Copa> copas;
  for (const auto& l : ds_->labels())
    if (!ds_->is_general(l.copa)) labels.push_back(l);
  for (const auto& c : ds_->copas())
    if (!ds_->is_general(c.id)) copas.push_back(c);
  Dataset stripped(ds_->actions(), ds_->motions(), copas, labels, std::set<std::string>{});

  auto a = pr_curve(s, *ds_, true, threshold_grid());
  auto b = pr_curve(reduced, stripped, false, threshold_grid());
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].precision, b[k].precision);
    EXPECT_EQ(a[k].recall, b[k].recall);
  }
  auto pa = p_at_1_curve(s, *ds_, true, threshold_grid());
  auto pb = p_at_1_curve(reduced, stripped, false, threshold_grid());
  ASSERT_EQ(pa.size(), pb.size());
  for (std::size_t k = 0; k < pa.size(); ++k) EXPECT_EQ(pa[k].p_at_1, pb[k].p_at_1);
  EXPECT_FALSE(ds_->is_general(baseline_largest(*ds_, true).copa_id));
}
