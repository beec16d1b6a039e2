#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rsrl/common/rng.hpp"
#include "rsrl/env/action.hpp"

namespace rsrl::env {

enum class Terrain : std::uint8_t { Shore, Bridge, Water };

struct Cell {
  int x = 0;
  int y = 0;  // row 0 is the northern edge
  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

/// Cell reached by a movement action, ignoring terrain. Idle and pullOut stay.
Cell offset(Cell c, Action a);
int manhattan(Cell a, Cell b);

/// Static terrain. Spawn cells (a) are the shore cells of the northern row,
/// goal cells (b) the shore cells of the southern row.
class GridMap {
 public:
  GridMap(int width, int height, std::vector<Terrain> cells);

  /// Shore rows north and south, a one-cell-wide bridge in `bridge_column`, water elsewhere.
  static GridMap bridge_layout(int width, int height, int bridge_column);
  /// Rows of 'S' (shore), 'B' (bridge) and 'W' (water), northernmost first.
  static GridMap from_rows(const std::vector<std::string>& rows);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool in_bounds(Cell c) const noexcept { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
  Terrain at(Cell c) const { return cells_.at(static_cast<std::size_t>(c.y * width_ + c.x)); }
  bool is_solid(Cell c) const { return in_bounds(c) && at(c) != Terrain::Water; }
  bool is_bridge(Cell c) const { return in_bounds(c) && at(c) == Terrain::Bridge; }
  bool is_water(Cell c) const { return in_bounds(c) && at(c) == Terrain::Water; }

  const std::vector<Cell>& spawn_cells() const noexcept { return spawn_; }
  const std::vector<Cell>& goal_cells() const noexcept { return goal_; }
  /// All cells of a terrain type in row-major order.
  std::vector<Cell> cells_of(Terrain t) const;
  std::vector<Cell> solid_neighbors(Cell c) const;
  /// Water cells at minimal Manhattan distance from `c`, row-major.
  std::vector<Cell> nearest_water(Cell c) const;
  std::vector<std::string> rows() const;

 private:
  int width_;
  int height_;
  std::vector<Terrain> cells_;
  std::vector<Cell> spawn_;
  std::vector<Cell> goal_;
};

/// Simulation parameters. Defaults give a live but solvable dilemma on the 7x7 map.
struct EnvConfig {
  int width = 7;
  int height = 7;
  int bridge_column = 3;
  std::vector<std::string> terrain;  // overrides the generated layout when nonempty
  double walk_probability = 0.5;
  double fall_probability = 0.1;
  int drown_steps = 15;
  double step_cost = -1.0;
  double delivery_reward = 100.0;
  double drowning_penalty = 0.0;
  int episode_cap = 200;

  GridMap make_map() const;
};

nlohmann::json to_json(const EnvConfig& config);
/// Missing fields keep their defaults. Throws InputError on bad values.
EnvConfig env_config_from_json(const nlohmann::json& doc);

struct Person {
  int id = 0;
  Cell pos;
  std::optional<int> in_water_since;  // set iff pos is water

  friend bool operator==(const Person&, const Person&) = default;
};

struct WorldState {
  Cell agent;
  Cell goal;
  std::vector<Person> persons;
  int step = 0;
  bool delivered = false;
  bool terminal = false;

  friend bool operator==(const WorldState&, const WorldState&) = default;
};

nlohmann::json to_json(const WorldState& s);
WorldState world_state_from_json(const nlohmann::json& doc);
/// Stable hex digest of the full state.
std::string digest(const WorldState& s);

inline constexpr std::string_view kBridgeLabel = "B";
inline constexpr std::string_view kDrowningLabel = "D";

/// Morally relevant facts of a state; kept sorted and unique.
class LabelSet {
 public:
  LabelSet() = default;
  LabelSet(std::initializer_list<std::string> labels);
  void insert(std::string label);
  bool contains(std::string_view label) const;
  bool empty() const noexcept { return labels_.empty(); }
  const std::vector<std::string>& items() const noexcept { return labels_; }
  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  std::vector<std::string> labels_;
};

std::string to_string(const LabelSet& labels);  // "B,D"

enum class Constellation { None, Drowning, BridgePerson, Dilemma, Random };
std::string_view to_string(Constellation c);
Constellation parse_constellation(std::string_view text);

struct StepEvents {
  int pushes = 0;
  int rescues = 0;
  int falls = 0;
  int drownings = 0;
  bool delivered = false;
};

struct Transition {
  WorldState next;
  double reward = 0.0;
  LabelSet labels;  // l(next)
  bool terminal = false;
  StepEvents events;
};

/// The bridge gridworld as a labeled MDP.
class BridgeWorld {
 public:
  explicit BridgeWorld(EnvConfig config = {});

  const EnvConfig& config() const noexcept { return config_; }
  const GridMap& map() const noexcept { return map_; }

  WorldState reset(std::uint64_t seed, Constellation constellation) const;

  /// One stochastic step: agent action, person dynamics, drowning.
  Transition step(const WorldState& s, Action a, Rng& rng) const;

  /// Deterministic skeleton of step() used for planning: persons do not walk
  /// or fall, a pushed person lands in the first nearest water cell in
  /// row-major order, and the episode never terminates.
  Transition skeleton_step(const WorldState& s, Action a) const;

  LabelSet labels_of(const WorldState& s) const;

  /// Actions left to rescue `p` at time `step`, counting the pullOut itself.
  int time_left(const Person& p, int step) const;

  /// The shore cell directly north of the bridge, if any.
  std::optional<Cell> bridge_head() const;

 private:
  Transition advance(const WorldState& s, Action a, Rng* rng) const;

  EnvConfig config_;
  GridMap map_;
};

}  // namespace rsrl::env
