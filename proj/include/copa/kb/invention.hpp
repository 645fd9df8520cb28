#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "copa/kb/types.hpp"

namespace copa {

// Replaces every "[TOPIC]" in the claim template with the motion topic.
inline std::string instantiate_claim(const Claim& claim, const Motion& motion) {
  std::string out;
  out.reserve(claim.text.size());
  std::string_view rest = claim.text;
  for (auto pos = rest.find(kTopicToken); pos != std::string_view::npos; pos = rest.find(kTopicToken)) {
    out.append(rest.substr(0, pos));
    out.append(motion.topic);
    rest.remove_prefix(pos + kTopicToken.size());
  }
  out.append(rest);
  return out;
}

struct Syllogism {
  std::string major;
  std::string minor;
  std::string conclusion;
};

struct SyllogismOptions {
  // Replaces the default "<topic> relates to <CoPA name>" minor premise.
  std::optional<std::string> minor_override;
  // Subject and modal that open the conclusion after "Therefore, ".
  std::string conclusion_lead = "we should";
};

// Major premise: the CoPA claim of the requested stance. Minor premise: why the
// motion belongs to the CoPA. Conclusion: the motion's proposal.
inline Syllogism build_syllogism(const Motion& motion, const Copa& copa, Stance stance,
                                 const ActionRegistry& actions, const SyllogismOptions& opts = {}) {
  Syllogism s;
  s.major = instantiate_claim(copa.claim(stance), motion);
  s.minor = opts.minor_override ? *opts.minor_override : motion.topic + " relates to " + copa.name;
  s.conclusion = "Therefore, " + opts.conclusion_lead + " " + actions.surface(motion.action) + " " + motion.topic + ".";
  return s;
}

}  // namespace copa
