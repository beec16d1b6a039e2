#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsrl/logic/formula.hpp"

namespace rsrl::logic {

enum class AtomKind : unsigned char { Label, ActionType };

std::string_view to_string(AtomKind kind);
AtomKind parse_atom_kind(std::string_view text);

struct Atom {
  std::string name;
  AtomKind kind;
};

/// The registered atom universe. Names are unique and their kind is fixed.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::initializer_list<Atom> atoms);

  /// Registers an atom. Re-registering with the same kind is a no-op;
  /// a different kind is an InputError.
  void add(std::string name, AtomKind kind);

  bool contains(std::string_view name) const;
  std::optional<AtomKind> kind_of(std::string_view name) const;
  bool is_label(std::string_view name) const { return kind_of(name) == AtomKind::Label; }
  bool is_action_type(std::string_view name) const { return kind_of(name) == AtomKind::ActionType; }

  /// Atoms in registration order.
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::vector<std::string> names_of(AtomKind kind) const;

  /// Throws InputError naming the first atom of `f` that is not registered.
  void require_registered(const Formula& f) const;

 private:
  std::vector<Atom> atoms_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

}  // namespace rsrl::logic
