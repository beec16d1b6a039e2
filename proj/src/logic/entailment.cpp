#include "rsrl/logic/entailment.hpp"

#include "rsrl/logic/solver.hpp"

namespace rsrl::logic {

bool entails(const Vocabulary& vocabulary, std::span<const Formula> premises, const Formula& goal) {
  PropSolver solver;
  for (const auto& p : premises) {
    vocabulary.require_registered(p);
    solver.add_root(p);
  }
  vocabulary.require_registered(goal);
  solver.add_root(Formula::negation(goal));
  return !solver.satisfiable();
}

bool satisfiable(const Vocabulary& vocabulary, std::span<const Formula> formulas) {
  PropSolver solver;
  for (const auto& f : formulas) {
    vocabulary.require_registered(f);
    solver.add_root(f);
  }
  return solver.satisfiable();
}

}  // namespace rsrl::logic
