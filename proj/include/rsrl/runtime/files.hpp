#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsrl/logic/default_theory.hpp"
#include "rsrl/learn/trainer.hpp"
#include "rsrl/realization/realization.hpp"

namespace rsrl::runtime {

/// Reads and parses a JSON file. Throws InputError naming the path.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// A reason theory together with the atoms and planners it refers to.
/// `background` is only consulted by direct reasoning queries; the agent
/// rebuilds W in every state.
struct TheoryFile {
  logic::Vocabulary vocabulary;
  logic::ReasonTheory theory;
  realization::ActionTypeRegistry action_types;
  std::vector<logic::Formula> background;
};

/// Missing `actionTypes` default to the bridge planners. Throws InputError
/// if the theory is invalid or a conclusion has no planner.
TheoryFile theory_file_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const TheoryFile& file);
/// Loads a theory file, or a built-in theory for "builtin:<name>".
TheoryFile load_theory(const std::filesystem::path& path);

/// Bridge theories over B, D, phi_W and phi_R: "exemplary" (d1: B -> phi_W,
/// d2: D -> phi_R, d1 < d2), "initial" (same rules, no order) and "empty".
TheoryFile builtin_theory(std::string_view name);

/// Name of the environment variable holding the default config path.
inline constexpr const char* kConfigEnv = "RSRL_CONFIG";

/// Reads `path`, or the file named by RSRL_CONFIG if `path` is empty, or
/// returns the defaults if neither is given.
learn::RunConfig load_run_config(const std::filesystem::path& path);

/// Rewrites the Greek letter phi as "phi" so that "φ_R" names phi_R.
std::string normalize_atom(std::string name);

}  // namespace rsrl::runtime
