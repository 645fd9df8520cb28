#pragma once

#include <cmath>
#include <filesystem>
#include <limits>
#include <string>

#include <json.hpp>

#include "copa/classifiers/ba.hpp"
#include "copa/classifiers/feature_lr.hpp"
#include "copa/classifiers/naive_bayes.hpp"
#include "copa/classifiers/w2v.hpp"
#include "copa/kb/io.hpp"

namespace copa {

// Model files are JSON objects tagged with "method". -inf log values (empty
// classes) are written as null.

namespace detail {

inline nlohmann::json log_value(double v) { return std::isinf(v) ? nlohmann::json(nullptr) : nlohmann::json(v); }
inline double read_log_value(const nlohmann::json& j) {
  return j.is_null() ? -std::numeric_limits<double>::infinity() : j.get<double>();
}

inline void expect_method(const nlohmann::json& j, const std::string& method) {
  if (!j.is_object() || j.value("method", std::string()) != method)
    throw ParseError("model file: expected method '" + method + "'");
}

inline nlohmann::json params_json(const LogRegParams& p) {
  return {{"lambda", p.lambda}, {"tol", p.tol}, {"max_iters", p.max_iters}};
}
inline LogRegParams read_params(const nlohmann::json& j) {
  return {j.at("lambda").get<double>(), j.at("tol").get<double>(), j.at("max_iters").get<int>()};
}
inline nlohmann::json weights_json(const LinearWeights& w) { return {{"w", w.w}, {"b", w.b}}; }
inline LinearWeights read_weights(const nlohmann::json& j) {
  return {j.at("w").get<std::vector<double>>(), j.at("b").get<double>()};
}

template <typename F>
auto parse_model(const nlohmann::json& j, F&& f) {
  try {
    return f(j);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model file: ") + e.what());
  }
}

}  // namespace detail

inline nlohmann::json to_json(const BAModel& m) {
  nlohmann::json support = nlohmann::json::array();
  for (const auto& [key, n] : m.support) support.push_back({{"copa", key.first}, {"action", key.second}, {"n", n}});
  return {{"method", "ba"},
          {"hyperparameters", {{"k", m.k}}},
          {"copa_ids", m.copa_ids},
          {"action_totals", m.action_totals},
          {"support", support}};
}

inline BAModel ba_model_from_json(const nlohmann::json& j) {
  detail::expect_method(j, "ba");
  return detail::parse_model(j, [](const nlohmann::json& j) {
    BAModel m;
    m.k = j.at("hyperparameters").at("k").get<int>();
    m.copa_ids = j.at("copa_ids").get<std::vector<std::string>>();
    m.action_totals = j.at("action_totals").get<std::map<std::string, std::size_t>>();
    for (const auto& s : j.at("support"))
      m.support[{s.at("copa").get<std::string>(), s.at("action").get<std::string>()}] = s.at("n").get<std::size_t>();
    return m;
  });
}

inline nlohmann::json to_json(const W2VModel& m) {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& w : m.per_copa) per.push_back(detail::weights_json(w));
  return {{"method", "w2v"},
          {"scheme", "one-vs-rest"},
          {"hyperparameters", detail::params_json(m.params)},
          {"dimension", m.dimension},
          {"copa_ids", m.copa_ids},
          {"weights", per},
          {"blacklist", m.blacklist.actions}};
}

inline W2VModel w2v_model_from_json(const nlohmann::json& j) {
  detail::expect_method(j, "w2v");
  return detail::parse_model(j, [](const nlohmann::json& j) {
    W2VModel m;
    m.params = detail::read_params(j.at("hyperparameters"));
    m.dimension = j.at("dimension").get<std::size_t>();
    m.copa_ids = j.at("copa_ids").get<std::vector<std::string>>();
    for (const auto& w : j.at("weights")) m.per_copa.push_back(detail::read_weights(w));
    m.blacklist.actions = j.at("blacklist").get<std::map<std::string, std::set<std::string>>>();
    if (m.per_copa.size() != m.copa_ids.size()) throw ParseError("model file: weights/copa_ids size mismatch");
    return m;
  });
}

inline nlohmann::json to_json(const NBModel& m) {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& cm : m.per_copa) {
    per.push_back({{"log_prior_pos", detail::log_value(cm.log_prior_pos)},
                   {"log_prior_neg", detail::log_value(cm.log_prior_neg)},
                   {"log_p_pos", cm.log_p_pos},
                   {"log_p_neg", cm.log_p_neg}});
  }
  return {{"method", "nb"},
          {"scheme", "one-vs-rest"},
          {"hyperparameters", {{"alpha", m.alpha}}},
          {"copa_ids", m.copa_ids},
          {"classes", per},
          {"blacklist", m.blacklist.actions}};
}

inline NBModel nb_model_from_json(const nlohmann::json& j) {
  detail::expect_method(j, "nb");
  return detail::parse_model(j, [](const nlohmann::json& j) {
    NBModel m;
    m.alpha = j.at("hyperparameters").at("alpha").get<double>();
    m.copa_ids = j.at("copa_ids").get<std::vector<std::string>>();
    for (const auto& c : j.at("classes")) {
      NBClassModel cm;
      cm.log_prior_pos = detail::read_log_value(c.at("log_prior_pos"));
      cm.log_prior_neg = detail::read_log_value(c.at("log_prior_neg"));
      cm.log_p_pos = c.at("log_p_pos").get<std::map<std::string, double>>();
      cm.log_p_neg = c.at("log_p_neg").get<std::map<std::string, double>>();
      m.per_copa.push_back(std::move(cm));
    }
    m.blacklist.actions = j.at("blacklist").get<std::map<std::string, std::set<std::string>>>();
    if (m.per_copa.size() != m.copa_ids.size()) throw ParseError("model file: classes/copa_ids size mismatch");
    return m;
  });
}

inline nlohmann::json to_json(const FeatureLRModel& m) {
  return {{"method", "lr"},
          {"hyperparameters", detail::params_json(m.params)},
          {"feature_ordering", m.feature_ordering},
          {"standardizer", {{"mean", m.standardizer.mean()}, {"stddev", m.standardizer.stddev()}}},
          {"weights", detail::weights_json(m.weights)}};
}

inline FeatureLRModel feature_lr_model_from_json(const nlohmann::json& j) {
  detail::expect_method(j, "lr");
  return detail::parse_model(j, [](const nlohmann::json& j) {
    FeatureLRModel m;
    m.params = detail::read_params(j.at("hyperparameters"));
    m.feature_ordering = j.at("feature_ordering").get<std::string>();
    if (m.feature_ordering != feature_ordering())
      throw ParseError("model file: feature ordering '" + m.feature_ordering + "' is not supported");
    const auto& s = j.at("standardizer");
    m.standardizer = Standardizer(s.at("mean").get<std::vector<double>>(), s.at("stddev").get<std::vector<double>>());
    m.weights = detail::read_weights(j.at("weights"));
    if (m.weights.w.size() != kFeatureCount || m.standardizer.dimension() != kFeatureCount)
      throw ParseError("model file: expected " + std::to_string(kFeatureCount) + " features");
    return m;
  });
}

template <typename Model>
void save_model(const Model& m, const std::filesystem::path& path) {
  detail::write_file(path, to_json(m).dump(2) + "\n");
}

inline nlohmann::json load_model_json(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(detail::read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace copa
