#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rsrl/logic/formula.hpp"

namespace rsrl::logic {

struct Literal {
  int atom;
  bool positive;
};

/// Satisfiability search over a fixed set of root formulas.
///
/// Roots are compiled once against a local atom index; each query supplies
/// literal assumptions. The search is a DPLL-style split on atoms with
/// three-valued evaluation of the roots, so a branch is cut as soon as any
/// root is decided false.
class PropSolver {
 public:
  PropSolver() = default;

  /// Index of `name`, registering it if new.
  int atom_index(const std::string& name);
  /// Index of `name` or -1.
  int find_atom(const std::string& name) const;
  int atom_count() const noexcept { return static_cast<int>(names_.size()); }

  void add_root(const Formula& f);

  bool satisfiable(std::span<const Literal> assumptions = {}) const;

 private:
  struct Node {
    Connective op;
    int atom;         // for Atom
    int first_child;  // index into children_
    int child_count;
  };

  int compile(const Formula& f);
  // -1 unknown, 0 false, 1 true
  int eval(int node, const std::vector<signed char>& assign) const;
  int pick_unassigned(int node, const std::vector<signed char>& assign) const;
  bool search(std::vector<signed char>& assign) const;

  std::map<std::string, int> index_;
  std::vector<std::string> names_;
  std::vector<Node> nodes_;
  std::vector<int> children_;
  std::vector<int> roots_;
};

}  // namespace rsrl::logic
