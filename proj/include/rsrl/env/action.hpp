#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rsrl::env {

/// The six primitive actions, in their fixed tie-break order.
enum class Action : std::uint8_t { North, East, West, South, Idle, PullOut };

inline constexpr std::array<Action, 6> kAllActions = {Action::North, Action::East, Action::West,
                                                      Action::South, Action::Idle, Action::PullOut};

std::string_view to_string(Action a);
std::optional<Action> parse_action(std::string_view text);

/// Set of primitive actions as a 6-bit mask.
class ActionSet {
 public:
  constexpr ActionSet() = default;
  constexpr ActionSet(std::initializer_list<Action> actions) {
    for (auto a : actions) insert(a);
  }
  static constexpr ActionSet all() { return ActionSet(0x3f); }
  static constexpr ActionSet none() { return ActionSet(0); }

  constexpr void insert(Action a) { bits_ |= bit(a); }
  constexpr void erase(Action a) { bits_ &= static_cast<std::uint8_t>(~bit(a)); }
  constexpr bool contains(Action a) const { return bits_ & bit(a); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }
  std::size_t size() const;
  /// Members in kAllActions order.
  std::vector<Action> to_vector() const;

  friend constexpr ActionSet operator&(ActionSet a, ActionSet b) { return ActionSet(a.bits_ & b.bits_); }
  friend constexpr ActionSet operator|(ActionSet a, ActionSet b) { return ActionSet(a.bits_ | b.bits_); }
  friend constexpr bool operator==(ActionSet, ActionSet) = default;

 private:
  constexpr explicit ActionSet(int bits) : bits_(static_cast<std::uint8_t>(bits)) {}
  static constexpr std::uint8_t bit(Action a) { return static_cast<std::uint8_t>(1u << static_cast<int>(a)); }
  std::uint8_t bits_ = 0;
};

std::string to_string(ActionSet s);

}  // namespace rsrl::env
