#pragma once

#include <map>
#include <set>
#include <string>

#include "copa/kb/dataset.hpp"

namespace copa {

// B_c: actions with no training motion in c. Motions with such an action are
// never predicted as members of c.
struct Blacklist {
  std::map<std::string, std::set<std::string>> actions;  // copa id -> B_c

  static Blacklist build(const Dataset& train) {
    Blacklist bl;
    for (const Copa& c : train.copas()) {
      std::set<std::string> seen;
      for (const auto& id : c.motion_ids)
        if (const Motion* m = train.find_motion(id)) seen.insert(m->action);
      auto& b = bl.actions[c.id];
      for (const Action& a : train.actions().actions())
        if (!seen.count(a.id)) b.insert(a.id);
    }
    return bl;
  }

  bool blocks(const std::string& copa_id, const std::string& action) const {
    auto it = actions.find(copa_id);
    return it != actions.end() && it->second.count(action) > 0;
  }
};

}  // namespace copa
