#include "rsrl/logic/solver.hpp"

namespace rsrl::logic {

int PropSolver::atom_index(const std::string& name) {
  auto [it, inserted] = index_.emplace(name, static_cast<int>(names_.size()));
  if (inserted) names_.push_back(name);
  return it->second;
}

int PropSolver::find_atom(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

void PropSolver::add_root(const Formula& f) { roots_.push_back(compile(f)); }

int PropSolver::compile(const Formula& f) {
  if (f.is_atom()) {
    nodes_.push_back(Node{Connective::Atom, atom_index(f.name()), 0, 0});
    return static_cast<int>(nodes_.size()) - 1;
  }
  std::vector<int> kids;
  for (const auto& op : f.operands()) kids.push_back(compile(op));
  const int first = static_cast<int>(children_.size());
  children_.insert(children_.end(), kids.begin(), kids.end());
  nodes_.push_back(Node{f.connective(), -1, first, static_cast<int>(kids.size())});
  return static_cast<int>(nodes_.size()) - 1;
}

int PropSolver::eval(int node, const std::vector<signed char>& assign) const {
  const Node& n = nodes_[node];
  switch (n.op) {
    case Connective::Atom:
      return assign[n.atom];
    case Connective::Not: {
      const int v = eval(children_[n.first_child], assign);
      return v < 0 ? -1 : 1 - v;
    }
    case Connective::And: {
      int result = 1;
      for (int i = 0; i < n.child_count; ++i) {
        const int v = eval(children_[n.first_child + i], assign);
        if (v == 0) return 0;
        if (v < 0) result = -1;
      }
      return result;
    }
    case Connective::Or: {
      int result = 0;
      for (int i = 0; i < n.child_count; ++i) {
        const int v = eval(children_[n.first_child + i], assign);
        if (v == 1) return 1;
        if (v < 0) result = -1;
      }
      return result;
    }
  }
  return -1;
}

int PropSolver::pick_unassigned(int node, const std::vector<signed char>& assign) const {
  const Node& n = nodes_[node];
  if (n.op == Connective::Atom) return assign[n.atom] < 0 ? n.atom : -1;
  for (int i = 0; i < n.child_count; ++i) {
    const int child = children_[n.first_child + i];
    if (eval(child, assign) >= 0) continue;
    const int a = pick_unassigned(child, assign);
    if (a >= 0) return a;
  }
  return -1;
}

bool PropSolver::search(std::vector<signed char>& assign) const {
  int undecided_root = -1;
  for (int r : roots_) {
    const int v = eval(r, assign);
    if (v == 0) return false;
    if (v < 0 && undecided_root < 0) undecided_root = r;
  }
  if (undecided_root < 0) return true;

  const int atom = pick_unassigned(undecided_root, assign);
  for (signed char value : {1, 0}) {
    assign[atom] = value;
    if (search(assign)) {
      assign[atom] = -1;
      return true;
    }
  }
  assign[atom] = -1;
  return false;
}

bool PropSolver::satisfiable(std::span<const Literal> assumptions) const {
  std::vector<signed char> assign(names_.size(), -1);
  for (const auto& lit : assumptions) {
    const signed char v = lit.positive ? 1 : 0;
    if (assign[lit.atom] >= 0 && assign[lit.atom] != v) return false;
    assign[lit.atom] = v;
  }
  return search(assign);
}

}  // namespace rsrl::logic
