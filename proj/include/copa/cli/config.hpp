#pragma once

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "copa/classifiers/methods.hpp"
#include "copa/error.hpp"
#include "copa/text.hpp"

namespace copa::cli {

struct AppConfig {
  // Input paths; empty means "not configured".
  std::string dataset;
  std::string actions;  // registry used when the dataset has no "actions" array
  std::string embeddings;
  std::string alt_embeddings;
  std::string sentences;
  std::string wiki;

  MethodParams params;
  int grid_steps = 100;
  bool exclude_general = false;
  unsigned threads = 0;

  std::string method;  // comma-separated; empty = every method whose inputs are configured
  double threshold = 0.5;
  std::string out;
};

// Setting names accepted in the config file, as COPA_<NAME> environment
// variables and as --<name-with-dashes> flags.
inline const std::vector<std::string>& setting_names() {
  static const std::vector<std::string> names{
      "dataset",   "actions",          "embeddings",        "alt_embeddings", "sentences",  "wiki",
      "k",         "knn_threshold",    "knn_min_neighbors", "knn_top",        "knn_similarity",
      "alpha",     "lambda",           "tol",               "max_iters",      "grid_steps", "min_topic_copa_size",
      "exclude_general", "threads",    "method",            "threshold",      "out"};
  return names;
}

namespace detail {

inline double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) throw ConfigError(key + ": not a number: '" + v + "'");
  return out;
}

inline long to_long(const std::string& key, const std::string& v) {
  long out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) throw ConfigError(key + ": not an integer: '" + v + "'");
  return out;
}

inline bool to_bool(const std::string& key, const std::string& v) {
  std::string l = to_lower(v);
  if (l == "1" || l == "true" || l == "yes" || l == "on") return true;
  if (l == "0" || l == "false" || l == "no" || l == "off") return false;
  throw ConfigError(key + ": not a boolean: '" + v + "'");
}

inline std::string normalize_key(std::string key) {
  for (char& c : key)
    if (c == '-') c = '_';
  return to_lower(key);
}

}  // namespace detail

inline void apply_setting(AppConfig& cfg, std::string key, const std::string& v) {
  key = detail::normalize_key(std::move(key));
  auto& p = cfg.params;
  if (key == "dataset") cfg.dataset = v;
  else if (key == "actions") cfg.actions = v;
  else if (key == "embeddings") cfg.embeddings = v;
  else if (key == "alt_embeddings") cfg.alt_embeddings = v;
  else if (key == "sentences") cfg.sentences = v;
  else if (key == "wiki") cfg.wiki = v;
  else if (key == "k") p.ba_k = static_cast<int>(detail::to_long(key, v));
  else if (key == "knn_threshold") p.knn.threshold = detail::to_double(key, v);
  else if (key == "knn_min_neighbors") p.knn.min_neighbors = static_cast<std::size_t>(std::max(0L, detail::to_long(key, v)));
  else if (key == "knn_top") p.knn.top = static_cast<std::size_t>(std::max(0L, detail::to_long(key, v)));
  else if (key == "knn_similarity") {
    if (v == "emb") p.knn.kind = SimilarityKind::Embedding;
    else if (v == "alt") p.knn.kind = SimilarityKind::EmbeddingAlt;
    else if (v == "tfidf") p.knn.kind = SimilarityKind::TfIdf;
    else throw ConfigError("knn_similarity: expected emb, alt or tfidf");
  } else if (key == "alpha") p.nb_alpha = detail::to_double(key, v);
  else if (key == "lambda") p.logreg.lambda = detail::to_double(key, v);
  else if (key == "tol") p.logreg.tol = detail::to_double(key, v);
  else if (key == "max_iters") p.logreg.max_iters = static_cast<int>(detail::to_long(key, v));
  else if (key == "grid_steps") cfg.grid_steps = static_cast<int>(detail::to_long(key, v));
  else if (key == "min_topic_copa_size") p.min_topic_copa_size = static_cast<std::size_t>(std::max(0L, detail::to_long(key, v)));
  else if (key == "exclude_general") cfg.exclude_general = detail::to_bool(key, v);
  else if (key == "threads") cfg.threads = static_cast<unsigned>(std::max(0L, detail::to_long(key, v)));
  else if (key == "method") cfg.method = v;
  else if (key == "threshold") cfg.threshold = detail::to_double(key, v);
  else if (key == "out") cfg.out = v;
  else throw ConfigError("unknown setting '" + key + "'");
}

inline void validate(const AppConfig& cfg) {
  const auto& p = cfg.params;
  if (p.ba_k < 1) throw ConfigError("k must be >= 1");
  if (!(p.knn.threshold >= 0.0 && p.knn.threshold <= 1.0)) throw ConfigError("knn_threshold must lie in [0,1]");
  if (p.knn.top < 1) throw ConfigError("knn_top must be >= 1");
  if (!(p.nb_alpha > 0.0)) throw ConfigError("alpha must be > 0");
  if (!(p.logreg.lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
  if (!(p.logreg.tol > 0.0)) throw ConfigError("tol must be > 0");
  if (p.logreg.max_iters < 1) throw ConfigError("max_iters must be >= 1");
  if (cfg.grid_steps < 1 || cfg.grid_steps > 100000) throw ConfigError("grid_steps must lie in [1, 100000]");
}

// Reads `key = value` settings (TOML/INI syntax; sections are not used).
inline std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_config(in);
  } catch (const CLI::Error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& item : items) {
    if (!item.parents.empty()) throw ConfigError(path.string() + ": sections are not supported ('" + item.fullname() + "')");
    if (item.name == "++" || item.name == "--") continue;  // section markers
    std::string value;
    for (std::size_t i = 0; i < item.inputs.size(); ++i) value += (i ? "," : "") + item.inputs[i];
    out.emplace_back(item.name, value);
  }
  return out;
}

// Defaults, then the config file, then COPA_* environment variables, then
// command-line flags.
inline AppConfig resolve_config(const std::string& config_path,
                                const std::vector<std::pair<std::string, std::string>>& flags) {
  // Later layers replace earlier ones before anything is parsed, so an
  // overridden value is never validated.
  std::map<std::string, std::string> merged;
  if (!config_path.empty())
    for (const auto& [k, v] : read_config_file(config_path)) merged[detail::normalize_key(k)] = v;
  for (const auto& name : setting_names()) {
    std::string env = "COPA_";
    for (char c : name) env += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (const char* v = std::getenv(env.c_str()); v != nullptr && *v != '\0') merged[name] = v;
  }
  for (const auto& [k, v] : flags) merged[detail::normalize_key(k)] = v;
  AppConfig cfg;
  for (const auto& [k, v] : merged) apply_setting(cfg, k, v);
  validate(cfg);
  return cfg;
}

}  // namespace copa::cli
