#include "rsrl/env/action.hpp"

#include <bit>

namespace rsrl::env {

std::string_view to_string(Action a) {
  switch (a) {
    case Action::North: return "north";
    case Action::East: return "east";
    case Action::West: return "west";
    case Action::South: return "south";
    case Action::Idle: return "idle";
    case Action::PullOut: return "pullOut";
  }
  return "?";
}

std::optional<Action> parse_action(std::string_view text) {
  for (auto a : kAllActions) {
    if (to_string(a) == text) return a;
  }
  return std::nullopt;
}

std::size_t ActionSet::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<Action> ActionSet::to_vector() const {
  std::vector<Action> out;
  for (auto a : kAllActions) {
    if (contains(a)) out.push_back(a);
  }
  return out;
}

std::string to_string(ActionSet s) {
  std::string out = "{";
  for (auto a : s.to_vector()) {
    if (out.size() > 1) out += ',';
    out += to_string(a);
  }
  return out + "}";
}

}  // namespace rsrl::env
