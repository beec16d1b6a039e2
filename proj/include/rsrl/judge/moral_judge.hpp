#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rsrl/env/bridge_world.hpp"
#include "rsrl/logic/default_theory.hpp"
#include "rsrl/shield/shield.hpp"

namespace rsrl::judge {

/// (phi, X): the agent should have realized `obligation` because of `reason`.
struct Accusation {
  std::string obligation;
  std::string reason;
  friend bool operator==(const Accusation&, const Accusation&) = default;
};

enum class VerdictSource { Oracle, Human };
std::string_view to_string(VerdictSource s);
VerdictSource parse_verdict_source(std::string_view text);

/// Outcome of judging one step; `accusation` is empty when the agent conformed.
struct Verdict {
  int t = 0;
  std::optional<Accusation> accusation;
  VerdictSource source = VerdictSource::Oracle;
};

/// Wire and log form: {t, obligation, reason, source}; obligation and reason are null for silence.
nlohmann::json to_json(const Verdict& v);
Verdict verdict_from_json(const nlohmann::json& doc);

struct Obligation {
  std::string rule_id;
  std::string action_type;
  std::string reason;
};

/// Automated judge backed by a ground-truth reason theory.
class OracleJudge {
 public:
  OracleJudge(logic::ReasonTheory truth, shield::ShieldGenerator generator);

  const logic::ReasonTheory& truth() const noexcept { return truth_; }

  /// Obligations O in `prev`, in rule-id order. Throws ConfigError if the
  /// ground truth does not yield exactly one proper scenario.
  std::vector<Obligation> obligations(const env::WorldState& prev, const env::LabelSet& labels) const;

  /// The first violated obligation in rule-id order, if any.
  std::optional<Accusation> judge(const env::WorldState& prev, const env::LabelSet& labels, env::Action a) const;

 private:
  logic::ReasonTheory truth_;
  shield::ShieldGenerator generator_;
};

/// Result of screening a human accusation before it reaches the learner.
struct Screening {
  bool accepted = true;
  std::string reason;
};

/// Rejects accusations whose atoms have the wrong kind, whose reason was
/// not a fact of `prev`, which accuse an action that in fact realizes the
/// named obligation, or which would make the learned priority order cyclic.
Screening screen_accusation(const Accusation& accusation, const env::WorldState& prev, const env::LabelSet& labels,
                            env::Action executed, const logic::ReasonTheory& theory,
                            const std::vector<std::string>& chosen, const shield::ShieldGenerator& generator);

}  // namespace rsrl::judge
