#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "copa/classifiers/ensemble.hpp"
#include "copa/classifiers/methods.hpp"
#include "copa/cli/config.hpp"
#include "copa/eval/curves.hpp"
#include "copa/eval/loo.hpp"
#include "copa/features/features.hpp"
#include "copa/kb/invention.hpp"
#include "copa/kb/io.hpp"
#include "copa/kb/stats.hpp"

namespace copa::cli {

// Fixed-point decimal, '.' separator regardless of locale.
inline std::string fixed(double v, int digits = 6) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, digits);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

inline Dataset load_configured_dataset(const AppConfig& cfg) {
  if (cfg.dataset.empty()) throw ConfigError("no dataset configured (set 'dataset' or --dataset)");
  std::optional<ActionRegistry> registry;
  if (!cfg.actions.empty()) registry = load_action_registry(cfg.actions);
  return load_dataset(cfg.dataset, registry);
}

inline bool input_configured(Method m, const AppConfig& cfg) {
  switch (m) {
    case Method::KNN:
      switch (cfg.params.knn.kind) {
        case SimilarityKind::Embedding: return !cfg.embeddings.empty();
        case SimilarityKind::EmbeddingAlt: return !cfg.alt_embeddings.empty();
        case SimilarityKind::TfIdf: return !cfg.wiki.empty();
      }
      return false;
    case Method::W2V: return !cfg.embeddings.empty();
    case Method::NB: return !cfg.sentences.empty();
    case Method::BA:
    case Method::LR: return true;
  }
  return false;
}

// The method list named by cfg.method. Empty, "all" or "ensemble" selects
// every method whose inputs are configured; naming a method whose inputs are
// missing is a configuration error.
inline std::vector<Method> resolve_methods(const AppConfig& cfg) {
  std::vector<Method> out;
  auto add = [&](Method m) {
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  };
  std::vector<std::string> names;
  std::stringstream ss(cfg.method);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) names.push_back(to_lower(item));
  if (names.empty()) names.push_back("all");
  for (const auto& name : names) {
    if (name == "all" || name == "ensemble") {
      for (Method m : kAllMethods)
        if (input_configured(m, cfg)) add(m);
      continue;
    }
    auto m = parse_method(name);
    if (!m) throw ConfigError("unknown method '" + name + "' (expected ba, knn, w2v, nb, lr or ensemble)");
    if (!input_configured(*m, cfg)) throw ConfigError("method " + name + " needs an input that is not configured");
    add(*m);
  }
  return out;
}

// Loads only the stores the given methods read.
inline Resources load_resources(const AppConfig& cfg, const std::vector<Method>& methods) {
  bool emb = false, alt = false, wiki = false, sentences = false;
  for (Method m : methods) {
    switch (m) {
      case Method::KNN:
        emb |= cfg.params.knn.kind == SimilarityKind::Embedding;
        alt |= cfg.params.knn.kind == SimilarityKind::EmbeddingAlt;
        wiki |= cfg.params.knn.kind == SimilarityKind::TfIdf;
        break;
      case Method::W2V: emb = true; break;
      case Method::NB: sentences = true; break;
      case Method::LR: emb = alt = wiki = true; break;
      case Method::BA: break;
    }
  }
  Resources r;
  if (emb && !cfg.embeddings.empty()) r.sim.embeddings = std::make_shared<const EmbeddingStore>(load_embeddings(cfg.embeddings));
  if (alt && !cfg.alt_embeddings.empty())
    r.sim.alt_embeddings = std::make_shared<const EmbeddingStore>(load_embeddings(cfg.alt_embeddings));
  if (wiki && !cfg.wiki.empty()) r.sim.wiki = std::make_shared<const WikiCorpus>(load_wiki_corpus(cfg.wiki));
  if (sentences && !cfg.sentences.empty())
    r.sentences = std::make_shared<const TopicSentenceCorpus>(load_sentence_corpus(cfg.sentences));
  r.sim.complete();
  return r;
}

inline void ensure_dir(const std::string& dir) {
  if (dir.empty()) throw ConfigError("no output directory configured (set 'out' or --out)");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

// ---------------------------------------------------------------- stats

inline nlohmann::json stats_json(const CopaStats& st) {
  nlohmann::json sizes = nlohmann::json::object();
  for (const auto& [id, n] : st.sizes) sizes[id] = n;
  return {{"motions", st.motions},
          {"labels", st.labels},
          {"covered_fraction", st.covered_fraction},
          {"mean_copas_per_motion", st.mean_copas_per_motion},
          {"max_copas_per_motion", st.max_copas_per_motion},
          {"sizes", sizes}};
}

inline void write_overlap_csv(const CopaStats& st, std::ostream& out) {
  out << "copa";
  for (const auto& id : st.copa_ids) out << ',' << id;
  out << '\n';
  for (std::size_t i = 0; i < st.copa_ids.size(); ++i) {
    out << st.copa_ids[i];
    for (double v : st.overlap[i]) out << ',' << fixed(v);
    out << '\n';
  }
}

inline void cmd_stats(const AppConfig& cfg, std::ostream& out) {
  Dataset ds = load_configured_dataset(cfg);
  CopaStats st = copa_stats(ds, cfg.exclude_general);
  out << "motions\t" << st.motions << '\n';
  out << "copas\t" << st.copa_ids.size() << '\n';
  out << "labels\t" << st.labels << '\n';
  out << "covered_fraction\t" << fixed(st.covered_fraction) << '\n';
  out << "mean_copas_per_motion\t" << fixed(st.mean_copas_per_motion) << '\n';
  out << "max_copas_per_motion\t" << st.max_copas_per_motion << '\n';
  for (const auto& id : st.copa_ids) out << "size\t" << id << '\t' << st.sizes.at(id) << '\n';
  if (!cfg.out.empty()) {
    ensure_dir(cfg.out);
    std::ostringstream csv;
    write_overlap_csv(st, csv);
    copa::detail::write_file(std::filesystem::path(cfg.out) / "overlap.csv", csv.str());
  }
}

// ---------------------------------------------------------------- match

struct MatchResult {
  std::string copa_id;
  double score;
};

// A motion already in the dataset is scored the way its leave-one-out fold
// scores it; a new motion is scored by models trained on the whole dataset.
inline ScoreMatrix score_query(const Dataset& ds, const Motion& query, const std::vector<Method>& methods,
                               const Resources& res, const MethodParams& params) {
  std::vector<std::string> copa_ids;
  for (const Copa& c : ds.copas()) copa_ids.push_back(c.id);

  const Motion* known = ds.find_motion(query.action, query.topic);
  Dataset train = known ? ds.without(known->id) : ds;
  Motion motion = known ? *known : query;
  FeatureExclusions ex;
  if (known) ex.topics.insert(known->topic);

  std::vector<ScoreMatrix> per_method;
  for (Method m : methods) {
    ScoreRow row = train_and_score(m, train, motion, res, params, ex);
    auto ok = eligible_copas(m, ds, params);
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!ok[j]) row[j] = std::nullopt;
    ScoreMatrix sm(std::string(to_string(m)), {motion.id}, copa_ids);
    sm.set_row(0, row);
    per_method.push_back(std::move(sm));
  }
  if (per_method.size() == 1) return per_method.front();
  if (per_method.empty()) return ScoreMatrix("ensemble", {motion.id}, copa_ids);
  return ensemble(per_method);
}

// Non-abstaining scores >= threshold, best first (ties by CoPA id).
inline std::vector<MatchResult> rank_matches(const ScoreMatrix& sm, double threshold) {
  std::vector<MatchResult> out;
  for (std::size_t j = 0; j < sm.cols(); ++j)
    if (const Score& s = sm.at(0, j); s && *s >= threshold) out.push_back({sm.copa_ids()[j], *s});
  std::sort(out.begin(), out.end(), [](const MatchResult& a, const MatchResult& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.copa_id < b.copa_id;
  });
  return out;
}

inline void cmd_match(const AppConfig& cfg, const std::string& action, const std::string& topic, std::ostream& out) {
  Dataset ds = load_configured_dataset(cfg);
  if (!ds.actions().contains(action)) throw UnknownAction(action);
  if (topic.empty()) throw DomainError("topic must not be empty");
  auto methods = resolve_methods(cfg);
  Resources res = load_resources(cfg, methods);
  Motion query{"query", action, topic};
  ScoreMatrix sm = score_query(ds, query, methods, res, cfg.params);
  for (const auto& r : rank_matches(sm, cfg.threshold)) {
    const Copa& c = *ds.find_copa(r.copa_id);
    out << fixed(r.score) << '\t' << c.id << '\t' << c.name << '\n';
    for (Stance s : {Stance::Pro, Stance::Con})
      out << '\t' << to_string(s) << '\t' << instantiate_claim(c.claim(s), query) << '\n';
  }
}

// ---------------------------------------------------------------- invent

inline void cmd_invent(const AppConfig& cfg, const std::string& action, const std::string& topic,
                       const std::string& copa_key, Stance stance, const SyllogismOptions& opts, std::ostream& out) {
  Dataset ds = load_configured_dataset(cfg);
  if (!ds.actions().contains(action)) throw UnknownAction(action);
  const Copa* copa = ds.find_copa_by_id_or_name(copa_key);
  if (copa == nullptr) throw DomainError("unknown CoPA: " + copa_key);
  Syllogism s = build_syllogism(Motion{"query", action, topic}, *copa, stance, ds.actions(), opts);
  out << s.major << '\n' << s.minor << '\n' << s.conclusion << '\n';
}

// ---------------------------------------------------------------- features

// One row per (motion, CoPA); each motion is held out of its own counts and
// c_t, i.e. the rows the pair classifier trains on.
inline void write_features_csv(const Dataset& ds, const SimilarityContext& ctx, std::ostream& out) {
  for (const auto& n : feature_names()) out << n << ',';
  out << "motion_id,copa_id,label\n";
  for (const Motion& m : ds.motions()) {
    FeatureExclusions ex = FeatureExclusions::holdout(ds, m.id);
    MotionTextSets ms = motion_text_sets(m, ds, ctx);
    for (const Copa& c : ds.copas()) {
      FeatureVector f = compute_features(m, ms, c, copa_text_sets(c, ds, ex), ds, ctx, ex);
      for (double v : f) out << fixed(v) << ',';
      out << m.id << ',' << c.id << ',' << (c.contains(m.id) ? 1 : 0) << '\n';
    }
  }
}

inline void cmd_features(const AppConfig& cfg, std::ostream& out) {
  Dataset ds = load_configured_dataset(cfg);
  Resources res = load_resources(cfg, {Method::LR});
  if (cfg.out.empty()) {
    write_features_csv(ds, res.sim, out);
    return;
  }
  ensure_dir(cfg.out);
  std::ostringstream csv;
  write_features_csv(ds, res.sim, csv);
  copa::detail::write_file(std::filesystem::path(cfg.out) / "features.csv", csv.str());
}

// ---------------------------------------------------------------- eval

inline std::string pr_csv(const ScoreMatrix& sm, const std::vector<PrPoint>& pts) {
  std::ostringstream o;
  o << "method,threshold,precision,recall\n";
  for (const auto& p : pts) o << sm.method() << ',' << fixed(p.threshold) << ',' << fixed(p.precision) << ',' << fixed(p.recall) << '\n';
  return o.str();
}

inline std::string p_at_1_csv(const ScoreMatrix& sm, const std::vector<CoveragePoint>& pts) {
  std::ostringstream o;
  o << "method,threshold,coverage,p_at_1\n";
  for (const auto& p : pts) o << sm.method() << ',' << fixed(p.threshold) << ',' << fixed(p.coverage) << ',' << fixed(p.p_at_1) << '\n';
  return o.str();
}

inline std::string scores_csv(const ScoreMatrix& sm) {
  std::ostringstream o;
  o << "motion_id,copa_id,score\n";
  for (std::size_t i = 0; i < sm.rows(); ++i)
    for (std::size_t j = 0; j < sm.cols(); ++j) {
      o << sm.motion_ids()[i] << ',' << sm.copa_ids()[j] << ',';
      if (const Score& s = sm.at(i, j)) o << fixed(*s);
      o << '\n';
    }
  return o.str();
}

// Writes <method>_pr.csv, <method>_p_at_1.csv and <method>_scores.csv for every
// method and the ensemble, plus summary.json.
inline void cmd_eval(const AppConfig& cfg, std::ostream& log) {
  Dataset ds = load_configured_dataset(cfg);
  EvalConfig ec;
  ec.methods = resolve_methods(cfg);
  ec.params = cfg.params;
  ec.exclude_general = cfg.exclude_general;
  ec.grid = threshold_grid(cfg.grid_steps);
  ec.threads = cfg.threads;
  Resources res = load_resources(cfg, ec.methods);
  ensure_dir(cfg.out);

  LooResult loo = leave_one_out(ds, ec, res);
  std::vector<const ScoreMatrix*> all;
  for (const auto& m : loo.methods) all.push_back(&m);
  all.push_back(&loo.ensemble);

  const std::filesystem::path dir(cfg.out);
  nlohmann::json methods = nlohmann::json::array();
  for (const ScoreMatrix* sm : all) {
    copa::detail::write_file(dir / (sm->method() + "_pr.csv"), pr_csv(*sm, pr_curve(*sm, ds, ec.exclude_general, ec.grid)));
    copa::detail::write_file(dir / (sm->method() + "_p_at_1.csv"),
                       p_at_1_csv(*sm, p_at_1_curve(*sm, ds, ec.exclude_general, ec.grid)));
    copa::detail::write_file(dir / (sm->method() + "_scores.csv"), scores_csv(*sm));
    methods.push_back(sm->method());
    log << "wrote " << sm->method() << " curves\n";
  }

  Baseline all_b = baseline_largest(ds, false);
  Baseline ng_b = baseline_largest(ds, true);
  nlohmann::json summary{
      {"dataset", {{"motions", ds.motions().size()}, {"copas", ds.copas().size()}, {"labels", ds.labels().size()}}},
      {"exclude_general", ec.exclude_general},
      {"grid_steps", cfg.grid_steps},
      {"methods", methods},
      {"stats", stats_json(copa_stats(ds, false))},
      {"stats_excluding_general", stats_json(copa_stats(ds, true))},
      {"baselines",
       {{"all", {{"copa", all_b.copa_id}, {"precision", all_b.precision}}},
        {"excluding_general", {{"copa", ng_b.copa_id}, {"precision", ng_b.precision}}}}}};
  copa::detail::write_file(dir / "summary.json", summary.dump(2) + "\n");
}

}  // namespace copa::cli
