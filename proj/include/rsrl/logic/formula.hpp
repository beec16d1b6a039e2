#pragma once

#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rsrl::logic {

enum class Connective : unsigned char { Atom, Not, And, Or };

/// Immutable propositional formula over named atoms.
///
/// Canonical text form is a prefix grammar:
///
///     F := atom | (not F) | (and F F ...) | (or F F ...)
///
/// where an atom is any run of bytes other than whitespace and parentheses.
/// `parse_formula(f.to_string()) == f` holds for every formula.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula negation(Formula operand);
  /// Conjunction of the operands; a single operand is returned as is.
  static Formula conjunction(std::vector<Formula> operands);
  /// Disjunction of the operands; a single operand is returned as is.
  static Formula disjunction(std::vector<Formula> operands);

  Connective connective() const noexcept;
  /// Atom name; empty for compound formulas.
  const std::string& name() const noexcept;
  std::span<const Formula> operands() const noexcept;

  bool is_atom() const noexcept { return connective() == Connective::Atom; }

  std::string to_string() const;
  void collect_atoms(std::set<std::string>& out) const;
  std::set<std::string> atoms() const;

  friend bool operator==(const Formula& a, const Formula& b);
  /// Orders by canonical text; gives sets of formulas a stable iteration order.
  friend bool operator<(const Formula& a, const Formula& b) { return a.to_string() < b.to_string(); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses the canonical prefix grammar. Throws InputError on malformed text.
Formula parse_formula(std::string_view text);

}  // namespace rsrl::logic
