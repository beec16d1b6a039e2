#pragma once

#include <json.hpp>

#include "rsrl/logic/default_theory.hpp"

namespace rsrl::logic {

// JSON schema:
//   { "atoms":      [ {"name": "B", "kind": "label" | "action-type"} ... ],
//     "background": [ "(not (and phi_W phi_R))", ... ],
//     "rules":      [ {"id": "d1", "premise": "B", "conclusion": "phi_W"} ... ],
//     "order":      [ {"lower": "d1", "higher": "d2"} ... ],
//     "revision":   0 }

nlohmann::json to_json(const Vocabulary& vocabulary);
Vocabulary vocabulary_from_json(const nlohmann::json& atoms);

nlohmann::json to_json(const ReasonTheory& theory);
/// Reads rules, order and revision. Does not validate against a vocabulary.
ReasonTheory reason_theory_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const DefaultTheory& theory);
/// Parses and validates a full default theory. Throws InputError.
DefaultTheory default_theory_from_json(const nlohmann::json& doc);

}  // namespace rsrl::logic
