#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rsrl/logic/formula.hpp"
#include "rsrl/logic/vocabulary.hpp"

namespace rsrl::logic {

/// Default rule X -> phi from a label atom to an action-type atom.
struct DefaultRule {
  std::string id;
  std::string premise;
  std::string conclusion;

  friend bool operator==(const DefaultRule&, const DefaultRule&) = default;
};

/// Set of rule indices into the ambient rule list, stored as a bitmask.
class Scenario {
 public:
  static constexpr std::size_t kMaxRules = 32;

  constexpr Scenario() = default;
  constexpr explicit Scenario(std::uint32_t bits) : bits_(bits) {}
  static Scenario of(std::initializer_list<std::size_t> indices);

  constexpr std::uint32_t bits() const noexcept { return bits_; }
  constexpr bool contains(std::size_t i) const noexcept { return (bits_ >> i) & 1u; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool subset_of(Scenario other) const noexcept { return (bits_ & ~other.bits_) == 0; }

  void insert(std::size_t i) noexcept { bits_ |= (1u << i); }
  std::vector<std::size_t> indices() const;

  friend constexpr Scenario operator|(Scenario a, Scenario b) { return Scenario(a.bits_ | b.bits_); }
  friend constexpr Scenario operator&(Scenario a, Scenario b) { return Scenario(a.bits_ & b.bits_); }
  friend constexpr Scenario operator-(Scenario a, Scenario b) { return Scenario(a.bits_ & ~b.bits_); }
  friend constexpr auto operator<=>(Scenario, Scenario) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Strict partial order over rule ids, kept as its generating edge set.
/// Comparisons use the transitive closure of the edges.
class PriorityOrder {
 public:
  using Edge = std::pair<std::string, std::string>;  // (lower, higher)

  PriorityOrder() = default;
  PriorityOrder(std::initializer_list<Edge> edges);

  /// Adds lower < higher. Does not check acyclicity; see find_cycle().
  bool add(const std::string& lower, const std::string& higher);

  const std::set<Edge>& edges() const noexcept { return edges_; }
  bool empty() const noexcept { return edges_.empty(); }

  /// True iff lower < higher in the transitive closure.
  bool precedes(const std::string& lower, const std::string& higher) const;

  /// A cycle as a list of ids (first == last), or empty if the closure is irreflexive.
  std::vector<std::string> find_cycle() const;

  friend bool operator==(const PriorityOrder&, const PriorityOrder&) = default;

 private:
  std::set<Edge> edges_;
};

/// The agent's learnable portion: rules plus their priority order.
struct ReasonTheory {
  std::vector<DefaultRule> rules;
  PriorityOrder order;
  std::uint64_t revision = 0;

  const DefaultRule* find(const std::string& premise, const std::string& conclusion) const;
  const DefaultRule* find_id(const std::string& id) const;

  /// Structural equality ignoring revision.
  bool same_content(const ReasonTheory& other) const;
};

/// Fixed-priority default theory <W, D, <>.
struct DefaultTheory {
  Vocabulary vocabulary;
  std::vector<Formula> background;
  std::vector<DefaultRule> rules;
  PriorityOrder order;

  static DefaultTheory extend(Vocabulary vocabulary, std::vector<Formula> background,
                              const ReasonTheory& reasons);

  /// Checks registration, atom kinds, id/pair uniqueness, order references
  /// and acyclicity. Throws InputError.
  void validate() const;
};

/// Rule ids for the members of `s`, in rule order.
std::vector<std::string> rule_ids(const std::vector<DefaultRule>& rules, Scenario s);
/// Scenario from rule ids. Throws InputError on an unknown id.
Scenario scenario_from_ids(const std::vector<DefaultRule>& rules, const std::vector<std::string>& ids);

}  // namespace rsrl::logic
