#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "copa/error.hpp"
#include "copa/kb/types.hpp"

namespace copa {

inline const std::set<std::string>& default_general_copa_names() {
  static const std::set<std::string> names{"Conservatism", "Fixable", "Framework"};
  return names;
}

// Motions, CoPAs and the binary match relation between them. Validated on
// construction and immutable afterwards.
class Dataset {
 public:
  Dataset() = default;

  // `general` left empty selects every CoPA whose id or name is one of
  // Conservatism / Fixable / Framework. CoPA motion_ids are rebuilt from
  // `labels`; whatever the caller put there is ignored.
  Dataset(ActionRegistry actions, std::vector<Motion> motions, std::vector<Copa> copas,
          std::vector<Label> labels, std::optional<std::set<std::string>> general = std::nullopt)
      : actions_(std::move(actions)),
        motions_(std::move(motions)),
        copas_(std::move(copas)),
        labels_(std::move(labels)) {
    for (std::size_t i = 0; i < motions_.size(); ++i) {
      const Motion& m = motions_[i];
      if (m.id.empty()) throw ValidationError("motion with empty id");
      if (m.topic.empty()) throw ValidationError("motion '" + m.id + "' has an empty topic");
      if (!actions_.contains(m.action))
        throw ValidationError("motion '" + m.id + "' uses unknown action '" + m.action + "'");
      if (!motion_index_.emplace(m.id, i).second) throw ValidationError("duplicate motion id: " + m.id);
    }
    std::set<std::pair<std::string, std::string>> pairs;
    for (const Motion& m : motions_)
      if (!pairs.emplace(m.action, m.topic).second)
        throw ValidationError("motion '" + m.id + "' duplicates (" + m.action + ", " + m.topic + ")");

    for (std::size_t i = 0; i < copas_.size(); ++i) {
      Copa& c = copas_[i];
      if (c.id.empty()) throw ValidationError("CoPA with empty id");
      if (!copa_index_.emplace(c.id, i).second) throw ValidationError("duplicate CoPA id: " + c.id);
      bool pro = false, con = false;
      for (const Claim& cl : c.claims) {
        if (cl.text.empty()) throw ValidationError("CoPA '" + c.id + "' has an empty claim");
        (cl.stance == Stance::Pro ? pro : con) = true;
      }
      if (!(pro && con)) throw ValidationError("CoPA '" + c.id + "' needs one pro and one con claim");
      if (c.topic_related && c.manual_titles.empty())
        throw ValidationError("topic-related CoPA '" + c.id + "' has no manual titles");
      c.motion_ids.clear();
    }

    std::sort(labels_.begin(), labels_.end());
    for (std::size_t i = 0; i + 1 < labels_.size(); ++i)
      if (labels_[i].motion == labels_[i + 1].motion && labels_[i].copa == labels_[i + 1].copa)
        throw ValidationError("duplicate label (" + labels_[i].motion + ", " + labels_[i].copa + ")");
    for (const Label& l : labels_) {
      if (!motion_index_.count(l.motion)) throw ValidationError(l.motion);
      auto it = copa_index_.find(l.copa);
      if (it == copa_index_.end()) throw ValidationError(l.copa);
      copas_[it->second].motion_ids.insert(l.motion);
    }

    if (general) {
      for (const auto& g : *general)
        if (!copa_index_.count(g)) throw ValidationError("general CoPA '" + g + "' is not a CoPA id");
      general_ = std::move(*general);
    } else {
      for (const Copa& c : copas_)
        if (default_general_copa_names().count(c.id) || default_general_copa_names().count(c.name))
          general_.insert(c.id);
    }
  }

  const ActionRegistry& actions() const noexcept { return actions_; }
  const std::vector<Motion>& motions() const noexcept { return motions_; }
  const std::vector<Copa>& copas() const noexcept { return copas_; }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  const std::set<std::string>& general_copa_ids() const noexcept { return general_; }

  const Motion* find_motion(std::string_view id) const {
    auto it = motion_index_.find(std::string(id));
    return it == motion_index_.end() ? nullptr : &motions_[it->second];
  }
  const Copa* find_copa(std::string_view id) const {
    auto it = copa_index_.find(std::string(id));
    return it == copa_index_.end() ? nullptr : &copas_[it->second];
  }
  // Lookup by id first, then by display name.
  const Copa* find_copa_by_id_or_name(std::string_view key) const {
    if (const Copa* c = find_copa(key)) return c;
    for (const Copa& c : copas_)
      if (c.name == key) return &c;
    return nullptr;
  }
  const Motion* find_motion(std::string_view action, std::string_view topic) const {
    for (const Motion& m : motions_)
      if (m.action == action && m.topic == topic) return &m;
    return nullptr;
  }

  bool is_general(std::string_view copa_id) const { return general_.count(std::string(copa_id)) > 0; }

  bool matches(std::string_view motion_id, std::string_view copa_id) const {
    const Copa* c = find_copa(copa_id);
    return c != nullptr && c->contains(motion_id);
  }

  // Copy of the dataset with the given motions (and their labels) removed.
  Dataset without(std::span<const std::string> motion_ids) const {
    std::set<std::string> drop(motion_ids.begin(), motion_ids.end());
    std::vector<Motion> motions;
    for (const Motion& m : motions_)
      if (!drop.count(m.id)) motions.push_back(m);
    std::vector<Label> labels;
    for (const Label& l : labels_)
      if (!drop.count(l.motion)) labels.push_back(l);
    return Dataset(actions_, std::move(motions), copas_, std::move(labels), general_);
  }
  Dataset without(const std::string& motion_id) const {
    return without(std::span<const std::string>(&motion_id, 1));
  }

  bool operator==(const Dataset& o) const {
    return actions_ == o.actions_ && motions_ == o.motions_ && copas_ == o.copas_ &&
           labels_ == o.labels_ && general_ == o.general_;
  }

 private:
  ActionRegistry actions_;
  std::vector<Motion> motions_;
  std::vector<Copa> copas_;
  std::vector<Label> labels_;
  std::set<std::string> general_;
  std::map<std::string, std::size_t> motion_index_;
  std::map<std::string, std::size_t> copa_index_;
};

}  // namespace copa
