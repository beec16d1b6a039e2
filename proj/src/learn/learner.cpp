#include "rsrl/learn/learner.hpp"

#include "rsrl/common/error.hpp"

namespace rsrl::learn {

std::string fresh_rule_id(const logic::ReasonTheory& theory) {
  for (std::size_t k = theory.rules.size() + 1;; ++k) {
    std::string id = "d" + std::to_string(k);
    if (!theory.find_id(id)) return id;
  }
}

logic::ReasonTheory apply_feedback(const logic::ReasonTheory& theory, const logic::Vocabulary& vocabulary,
                                   const Feedback& feedback) {
  const auto& [obligation, reason] = feedback.accusation;
  if (!vocabulary.is_label(reason)) throw InputError("feedback reason '" + reason + "' is not a label");
  if (!vocabulary.is_action_type(obligation)) {
    throw InputError("feedback obligation '" + obligation + "' is not an action type");
  }
  for (const auto& id : feedback.chosen) {
    if (!theory.find_id(id)) throw InputError("chosen scenario names unknown rule '" + id + "'");
  }

  logic::ReasonTheory next = theory;
  bool changed = false;
  std::string reason_rule;
  if (const auto* existing = theory.find(reason, obligation)) {
    reason_rule = existing->id;
  } else {
    reason_rule = fresh_rule_id(theory);
    next.rules.push_back({reason_rule, reason, obligation});
    changed = true;
  }

  for (const auto& id : feedback.chosen) {
    if (id == reason_rule) continue;
    changed |= next.order.add(id, reason_rule);
  }

  if (auto cycle = next.order.find_cycle(); !cycle.empty()) {
    std::string text;
    for (const auto& id : cycle) text += (text.empty() ? "" : " < ") + id;
    throw InconsistentFeedbackError("feedback (" + obligation + ", " + reason + ") contradicts the learned order: " + text,
                                    std::move(cycle));
  }
  if (changed) ++next.revision;
  return next;
}

}  // namespace rsrl::learn
