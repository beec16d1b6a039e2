#include "rsrl/logic/reasoner.hpp"

#include <algorithm>

#include "rsrl/common/error.hpp"
#include "rsrl/logic/entailment.hpp"

namespace rsrl::logic {

bool BeliefSet::contains(const Formula& f) const { return entails(vocabulary_, premises_, f); }

Reasoner::Reasoner(DefaultTheory theory, ReasonerOptions options)
    : theory_(std::move(theory)), options_(options) {
  theory_.validate();
  const std::size_t n = theory_.rules.size();
  if (n > Scenario::kMaxRules) {
    throw ResourceError("theory has " + std::to_string(n) + " rules; at most " +
                        std::to_string(Scenario::kMaxRules) + " are supported");
  }
  for (const auto& f : theory_.background) solver_.add_root(f);
  for (const auto& r : theory_.rules) {
    premise_atom_.push_back(solver_.atom_index(r.premise));
    conclusion_atom_.push_back(solver_.atom_index(r.conclusion));
  }

  lower_than_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && theory_.order.precedes(theory_.rules[i].id, theory_.rules[j].id)) lower_than_[i] |= 1u << j;
    }
  }

  excludes_.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      // W ∪ {Conc(j)} ⊢ ¬Conc(i)  iff  W ∪ {Conc(j), Conc(i)} has no model.
      const Literal lits[] = {{conclusion_atom_[j], true}, {conclusion_atom_[i], true}};
      if (!solver_.satisfiable(lits)) excludes_[j] |= 1u << i;
    }
  }
}

Scenario Reasoner::all_rules() const noexcept {
  const std::size_t n = rule_count();
  return Scenario(n == 32 ? ~0u : ((1u << n) - 1u));
}

bool Reasoner::consistent_with(Scenario s, Literal extra) const {
  std::vector<Literal> lits;
  lits.reserve(s.size() + 1);
  for (auto i : s.indices()) lits.push_back({conclusion_atom_[i], true});
  lits.push_back(extra);
  return solver_.satisfiable(lits);
}

bool Reasoner::consistent(Scenario s) const {
  std::vector<Literal> lits;
  for (auto i : s.indices()) lits.push_back({conclusion_atom_[i], true});
  return solver_.satisfiable(lits);
}

Scenario Reasoner::triggered(Scenario s) const {
  Scenario out;
  for (std::size_t i = 0; i < rule_count(); ++i) {
    if (!consistent_with(s, {premise_atom_[i], false})) out.insert(i);
  }
  return out;
}

Scenario Reasoner::conflicted(Scenario s) const {
  Scenario out;
  for (std::size_t i = 0; i < rule_count(); ++i) {
    if (!consistent_with(s, {conclusion_atom_[i], true})) out.insert(i);
  }
  return out;
}

Scenario Reasoner::defeated(Scenario s) const {
  const Scenario trig = triggered(s);
  Scenario out;
  for (std::size_t i = 0; i < rule_count(); ++i) {
    // A defeater j is triggered, ranks above i, and its conclusion excludes i's.
    std::uint32_t defeaters = lower_than_[i] & trig.bits();
    for (std::uint32_t b = defeaters; b != 0; b &= b - 1) {
      const int j = std::countr_zero(b);
      if (excludes_[j] >> i & 1u) {
        out.insert(i);
        break;
      }
    }
  }
  return out;
}

Scenario Reasoner::binding(Scenario s) const {
  return triggered(s) - conflicted(s) - defeated(s);
}

void Reasoner::check_cap() const {
  if (rule_count() > options_.scenario_cap) {
    throw ResourceError("proper-scenario enumeration over " + std::to_string(rule_count()) +
                        " rules exceeds the cap of " + std::to_string(options_.scenario_cap));
  }
}

std::vector<Scenario> Reasoner::proper_scenarios_serial() const {
  check_cap();
  const std::uint64_t count = std::uint64_t{1} << rule_count();
  std::vector<Scenario> out;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const Scenario s(static_cast<std::uint32_t>(mask));
    if (is_proper(s)) out.push_back(s);
  }
  return out;
}

std::vector<Scenario> Reasoner::proper_scenarios() const {
  check_cap();
  const auto count = static_cast<long long>(std::uint64_t{1} << rule_count());
  std::vector<Scenario> out;
#pragma omp parallel
  {
    std::vector<Scenario> local;
#pragma omp for schedule(dynamic, 64) nowait
    for (long long mask = 0; mask < count; ++mask) {
      const Scenario s(static_cast<std::uint32_t>(mask));
      if (is_proper(s)) local.push_back(s);
    }
#pragma omp critical(rsrl_proper_merge)
    out.insert(out.end(), local.begin(), local.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

BeliefSet Reasoner::belief_set(Scenario s) const {
  std::vector<Formula> premises = theory_.background;
  for (auto i : s.indices()) premises.push_back(Formula::atom(theory_.rules[i].conclusion));
  return BeliefSet(theory_.vocabulary, std::move(premises));
}

std::vector<std::string> Reasoner::oughts(OughtAccount account) const {
  const auto extensions = proper_scenarios();
  std::vector<std::string> out;
  if (extensions.empty()) return out;

  for (const auto& name : theory_.vocabulary.names_of(AtomKind::ActionType)) {
    std::size_t holds = 0;
    for (auto s : extensions) {
      const int atom = solver_.find_atom(name);
      bool member = false;
      if (atom >= 0) {
        member = !consistent_with(s, {atom, false});
      } else {
        // Atom absent from W and D: entailed only if the context is inconsistent.
        member = !consistent(s);
      }
      if (member) ++holds;
    }
    const bool ought = account == OughtAccount::Disjunctive ? holds > 0 : holds == extensions.size();
    if (ought) out.push_back(name);
  }
  return out;
}

}  // namespace rsrl::logic
