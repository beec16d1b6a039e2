#pragma once

#include <span>

#include "rsrl/logic/formula.hpp"
#include "rsrl/logic/vocabulary.hpp"

namespace rsrl::logic {

/// Classical propositional entailment: `goal` holds in every assignment
/// satisfying all `premises`. Inconsistent premises entail everything.
/// Throws InputError if any atom is not registered in `vocabulary`.
bool entails(const Vocabulary& vocabulary, std::span<const Formula> premises, const Formula& goal);

bool satisfiable(const Vocabulary& vocabulary, std::span<const Formula> formulas);

}  // namespace rsrl::logic
