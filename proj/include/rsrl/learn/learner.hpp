#pragma once

#include <string>
#include <vector>

#include "rsrl/judge/moral_judge.hpp"
#include "rsrl/logic/default_theory.hpp"
#include "rsrl/logic/vocabulary.hpp"

namespace rsrl::learn {

/// An accusation plus the context it refers to.
struct Feedback {
  judge::Accusation accusation;
  std::string state_digest;
  std::vector<std::string> chosen;  // ids of S* at the accused step
  int t = 0;
};

/// Repairs the reason theory from one accusation (phi, X):
///   1. adds X -> phi unless a rule with that premise and conclusion exists;
///   2. ranks that rule above every other member of the chosen scenario.
/// The revision grows by one iff the theory changed. Throws
/// InconsistentFeedbackError (theory untouched) if the new edges close a
/// cycle, and InputError for atoms of the wrong kind or unknown chosen ids.
logic::ReasonTheory apply_feedback(const logic::ReasonTheory& theory, const logic::Vocabulary& vocabulary,
                                   const Feedback& feedback);

/// First id of the form d<k> not used in `theory`.
std::string fresh_rule_id(const logic::ReasonTheory& theory);

}  // namespace rsrl::learn
