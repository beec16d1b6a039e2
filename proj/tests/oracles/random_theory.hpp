#pragma once

#include <algorithm>
#include <numeric>
#include <random>

#include "rsrl/logic/default_theory.hpp"
#include "truth_table.hpp"

namespace oracle {

struct RandomTheory {
  rsrl::logic::DefaultTheory theory;
  Theory reference;
};

/// Random theory over at most `max_atoms` atoms (labels and action types)
/// with at most `max_rules` rules and a random acyclic order.
inline RandomTheory random_theory(std::mt19937& gen, int max_atoms, int max_rules) {
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
  const int labels = uniform(1, max_atoms - 1);
  const int actions = uniform(1, max_atoms - labels);
  RandomTheory out;
  auto& t = out.theory;
  for (int i = 0; i < labels; ++i) t.vocabulary.add("L" + std::to_string(i), rsrl::logic::AtomKind::Label);
  for (int i = 0; i < actions; ++i) t.vocabulary.add("A" + std::to_string(i), rsrl::logic::AtomKind::ActionType);

  std::vector<std::pair<int, int>> pairs;
  for (int l = 0; l < labels; ++l)
    for (int a = 0; a < actions; ++a) pairs.push_back({l, a});
  std::shuffle(pairs.begin(), pairs.end(), gen);
  const int rules = uniform(0, std::min<int>(max_rules, static_cast<int>(pairs.size())));
  for (int i = 0; i < rules; ++i) {
    t.rules.push_back({"r" + std::to_string(i), "L" + std::to_string(pairs[i].first),
                       "A" + std::to_string(pairs[i].second)});
    out.reference.rules.push_back({t.rules.back().premise, t.rules.back().conclusion});
  }

  // Random acyclic order: edges only go up a random permutation.
  std::vector<int> rank(static_cast<std::size_t>(rules));
  std::iota(rank.begin(), rank.end(), 0);
  std::shuffle(rank.begin(), rank.end(), gen);
  for (int i = 0; i < rules; ++i) {
    for (int j = 0; j < rules; ++j) {
      if (rank[i] < rank[j] && uniform(0, 3) == 0) {
        t.order.add(t.rules[i].id, t.rules[j].id);
        out.reference.lower.insert({static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
      }
    }
  }

  auto atom = [&] {
    const int k = uniform(0, labels + actions - 1);
    return k < labels ? "L" + std::to_string(k) : "A" + std::to_string(k - labels);
  };
  const int background = uniform(0, 4);
  for (int i = 0; i < background; ++i) {
    rsrl::logic::Formula b = rsrl::logic::Formula::atom(atom());
    switch (uniform(0, 3)) {
      case 0: break;
      case 1: b = rsrl::logic::Formula::negation(b); break;
      case 2: b = rsrl::logic::Formula::negation(rsrl::logic::Formula::conjunction({b, rsrl::logic::Formula::atom(atom())})); break;
      default: b = rsrl::logic::Formula::disjunction({b, rsrl::logic::Formula::atom(atom())}); break;
    }
    t.background.push_back(b);
    out.reference.background.push_back(b.to_string());
  }
  return out;
}

}  // namespace oracle
