#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "copa/error.hpp"
#include "copa/kb/dataset.hpp"

namespace copa {

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed: " + path.string());
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

inline std::string require_string(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_string()) throw ParseError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace detail

inline ActionRegistry parse_action_registry(const nlohmann::json& arr) {
  if (!arr.is_array()) throw ParseError("actions: expected an array");
  std::vector<Action> actions;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string where = "actions[" + std::to_string(i) + "]";
    actions.push_back({detail::require_string(arr[i], "id", where),
                       detail::require_string(arr[i], "surface", where)});
  }
  return ActionRegistry(std::move(actions));
}

inline ActionRegistry load_action_registry(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(detail::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return parse_action_registry(j.is_object() && j.contains("actions") ? j.at("actions") : j);
}

// `fallback_actions` is used when the document carries no "actions" array.
inline Dataset parse_dataset(const nlohmann::json& j,
                             const std::optional<ActionRegistry>& fallback_actions = std::nullopt) {
  if (!j.is_object()) throw ParseError("dataset: expected a JSON object");
  ActionRegistry actions;
  if (j.contains("actions")) {
    actions = parse_action_registry(j.at("actions"));
  } else if (fallback_actions) {
    actions = *fallback_actions;
  } else {
    throw ParseError("dataset: missing field 'actions' and no action registry supplied");
  }

  std::vector<Copa> copas;
  const auto& jc = detail::require(j, "copas", "dataset");
  if (!jc.is_array()) throw ParseError("dataset: 'copas' must be an array");
  for (std::size_t i = 0; i < jc.size(); ++i) {
    const auto& o = jc[i];
    std::string where = "copas[" + std::to_string(i) + "]";
    Copa c;
    c.id = detail::require_string(o, "id", where);
    where += " (" + c.id + ")";
    c.name = o.contains("name") ? detail::require_string(o, "name", where) : c.id;
    c.topic_related = o.value("topic_related", false);
    if (o.contains("manual_titles")) c.manual_titles = o.at("manual_titles").get<std::vector<std::string>>();
    const auto& claims = detail::require(o, "claims", where);
    if (!claims.is_array() || claims.size() != 2)
      throw ValidationError("CoPA '" + c.id + "' must have exactly two claims");
    for (std::size_t k = 0; k < 2; ++k) {
      try {
        c.claims[k].stance = parse_stance(detail::require_string(claims[k], "stance", where));
      } catch (const UnknownStance&) {
        throw ValidationError("CoPA '" + c.id + "' has a claim with an unknown stance");
      }
      c.claims[k].text = detail::require_string(claims[k], "template", where);
    }
    copas.push_back(std::move(c));
  }

  std::vector<Motion> motions;
  const auto& jm = detail::require(j, "motions", "dataset");
  if (!jm.is_array()) throw ParseError("dataset: 'motions' must be an array");
  for (std::size_t i = 0; i < jm.size(); ++i) {
    std::string where = "motions[" + std::to_string(i) + "]";
    motions.push_back({detail::require_string(jm[i], "id", where), detail::require_string(jm[i], "action", where),
                       detail::require_string(jm[i], "topic", where)});
  }

  std::vector<Label> labels;
  if (j.contains("labels")) {
    const auto& jl = j.at("labels");
    if (!jl.is_array()) throw ParseError("dataset: 'labels' must be an array");
    for (std::size_t i = 0; i < jl.size(); ++i) {
      std::string where = "labels[" + std::to_string(i) + "]";
      Label l{detail::require_string(jl[i], "motion", where), detail::require_string(jl[i], "copa", where), {}};
      if (jl[i].contains("claim_stance_pro_means_support") && !jl[i].at("claim_stance_pro_means_support").is_null())
        l.pro_means_support = jl[i].at("claim_stance_pro_means_support").get<bool>();
      labels.push_back(std::move(l));
    }
  }

  std::optional<std::set<std::string>> general;
  if (j.contains("general_copas")) general = j.at("general_copas").get<std::set<std::string>>();

  return Dataset(std::move(actions), std::move(motions), std::move(copas), std::move(labels), std::move(general));
}

inline Dataset load_dataset(const std::filesystem::path& path,
                            const std::optional<ActionRegistry>& fallback_actions = std::nullopt) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(detail::read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  try {
    return parse_dataset(j, fallback_actions);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline nlohmann::json dataset_to_json(const Dataset& ds) {
  nlohmann::json j;
  j["actions"] = nlohmann::json::array();
  for (const Action& a : ds.actions().actions()) j["actions"].push_back({{"id", a.id}, {"surface", a.surface}});
  j["copas"] = nlohmann::json::array();
  for (const Copa& c : ds.copas()) {
    nlohmann::json claims = nlohmann::json::array();
    for (const Claim& cl : c.claims) claims.push_back({{"stance", to_string(cl.stance)}, {"template", cl.text}});
    j["copas"].push_back({{"id", c.id},
                          {"name", c.name},
                          {"topic_related", c.topic_related},
                          {"manual_titles", c.manual_titles},
                          {"claims", claims}});
  }
  j["motions"] = nlohmann::json::array();
  for (const Motion& m : ds.motions()) j["motions"].push_back({{"id", m.id}, {"action", m.action}, {"topic", m.topic}});
  j["labels"] = nlohmann::json::array();
  for (const Label& l : ds.labels()) {
    nlohmann::json o{{"motion", l.motion}, {"copa", l.copa}};
    if (l.pro_means_support) o["claim_stance_pro_means_support"] = *l.pro_means_support;
    j["labels"].push_back(std::move(o));
  }
  j["general_copas"] = ds.general_copa_ids();
  return j;
}

inline void save_dataset(const Dataset& ds, const std::filesystem::path& path) {
  detail::write_file(path, dataset_to_json(ds).dump(2) + "\n");
}

}  // namespace copa
