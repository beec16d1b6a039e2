#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rsrl/logic/default_theory.hpp"
#include "rsrl/logic/solver.hpp"

namespace rsrl::logic {

enum class OughtAccount { Disjunctive, Conflict };

struct ReasonerOptions {
  /// Largest rule count for which proper scenarios are enumerated.
  std::size_t scenario_cap = 16;
};

/// Deductive closure of W ∪ Conc(S), answered by entailment on demand.
class BeliefSet {
 public:
  BeliefSet(Vocabulary vocabulary, std::vector<Formula> premises)
      : vocabulary_(std::move(vocabulary)), premises_(std::move(premises)) {}

  bool contains(const Formula& f) const;
  const std::vector<Formula>& premises() const noexcept { return premises_; }

 private:
  Vocabulary vocabulary_;
  std::vector<Formula> premises_;
};

/// Reasoning over one fixed-priority default theory.
///
/// The theory is validated and compiled at construction; every query is a
/// const, side-effect-free function of it, so one Reasoner may be shared
/// between threads.
class Reasoner {
 public:
  explicit Reasoner(DefaultTheory theory, ReasonerOptions options = {});

  const DefaultTheory& theory() const noexcept { return theory_; }
  std::size_t rule_count() const noexcept { return theory_.rules.size(); }
  Scenario all_rules() const noexcept;

  Scenario triggered(Scenario s) const;
  Scenario conflicted(Scenario s) const;
  Scenario defeated(Scenario s) const;
  Scenario binding(Scenario s) const;

  bool is_proper(Scenario s) const { return binding(s) == s; }

  /// All S ⊆ D with Binding(S) = S, in ascending bitmask order. The subset
  /// sweep is split across OpenMP threads. Throws ResourceError when |D|
  /// exceeds the configured cap.
  std::vector<Scenario> proper_scenarios() const;
  /// Same result as proper_scenarios(), computed on one thread.
  std::vector<Scenario> proper_scenarios_serial() const;

  BeliefSet belief_set(Scenario s) const;

  /// Action-type atoms entailed in some (disjunctive) or every (conflict)
  /// extension. With no extensions both accounts yield nothing.
  std::vector<std::string> oughts(OughtAccount account) const;

 private:
  void check_cap() const;
  /// Does W ∪ Conc(S) ∪ {extra} have a model?
  bool consistent_with(Scenario s, Literal extra) const;
  bool consistent(Scenario s) const;

  DefaultTheory theory_;
  ReasonerOptions options_;
  PropSolver solver_;
  std::vector<int> premise_atom_;
  std::vector<int> conclusion_atom_;
  // lower_[i] has bit j set iff rule i < rule j.
  std::vector<std::uint32_t> lower_than_;
  // excludes_[j] has bit i set iff W ∪ {Conc(j)} ⊢ ¬Conc(i).
  std::vector<std::uint32_t> excludes_;
};

}  // namespace rsrl::logic
