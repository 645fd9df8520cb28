#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "copa/error.hpp"

namespace copa {

enum class Stance { Pro, Con };

inline std::string_view to_string(Stance s) { return s == Stance::Pro ? "pro" : "con"; }

inline Stance parse_stance(std::string_view s) {
  if (s == "pro" || s == "Pro" || s == "PRO") return Stance::Pro;
  if (s == "con" || s == "Con" || s == "CON") return Stance::Con;
  throw UnknownStance("unknown stance: " + std::string(s));
}

struct Action {
  std::string id;       // lowercase snake-case key, e.g. "further_exploit"
  std::string surface;  // human form used in text, e.g. "further exploit"

  bool operator==(const Action&) const = default;
};

// Closed set of allowed motion actions.
class ActionRegistry {
 public:
  ActionRegistry() = default;
  explicit ActionRegistry(std::vector<Action> actions) : actions_(std::move(actions)) {
    std::set<std::string> seen;
    for (const auto& a : actions_) {
      if (!valid_id(a.id)) throw ValidationError("action id must be lowercase snake-case: '" + a.id + "'");
      if (a.surface.empty()) throw ValidationError("action '" + a.id + "' has an empty surface form");
      if (!seen.insert(a.id).second) throw ValidationError("duplicate action id: " + a.id);
    }
  }

  const std::vector<Action>& actions() const noexcept { return actions_; }

  const Action* find(std::string_view id) const noexcept {
    for (const auto& a : actions_)
      if (a.id == id) return &a;
    return nullptr;
  }

  bool contains(std::string_view id) const noexcept { return find(id) != nullptr; }

  const std::string& surface(std::string_view id) const {
    const Action* a = find(id);
    if (a == nullptr) throw UnknownAction(std::string(id));
    return a->surface;
  }

  static bool valid_id(std::string_view id) noexcept {
    if (id.empty()) return false;
    for (char c : id)
      if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
    return true;
  }

  bool operator==(const ActionRegistry&) const = default;

 private:
  std::vector<Action> actions_;
};

struct Motion {
  std::string id;
  std::string action;
  std::string topic;  // Wikipedia title or redirect

  bool operator==(const Motion&) const = default;
};

// One side of a CoPA. The template may contain the literal token "[TOPIC]".
struct Claim {
  Stance stance = Stance::Pro;
  std::string text;

  bool operator==(const Claim&) const = default;
};

inline constexpr std::string_view kTopicToken = "[TOPIC]";

struct Copa {
  std::string id;
  std::string name;
  std::array<Claim, 2> claims;
  bool topic_related = false;
  std::vector<std::string> manual_titles;  // c_m
  std::set<std::string> motion_ids;        // M_c, derived from the label set

  const Claim& claim(Stance s) const {
    for (const auto& c : claims)
      if (c.stance == s) return c;
    throw UnknownStance("CoPA '" + id + "' has no " + std::string(to_string(s)) + " claim");
  }

  bool contains(std::string_view motion_id) const {
    return motion_ids.find(std::string(motion_id)) != motion_ids.end();
  }

  bool operator==(const Copa&) const = default;
};

struct Label {
  std::string motion;
  std::string copa;
  // Stance of the CoPA's pro claim relative to the motion, when annotated.
  // Carried through I/O; no classifier reads it.
  std::optional<bool> pro_means_support;

  bool operator==(const Label&) const = default;
  auto operator<=>(const Label& o) const {
    if (auto c = motion <=> o.motion; c != 0) return c;
    return copa <=> o.copa;
  }
};

}  // namespace copa
