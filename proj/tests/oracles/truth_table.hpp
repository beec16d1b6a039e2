#pragma once

// Brute-force reference semantics used only by tests. Formulas are read
// back from their canonical text with a separate parser and evaluated by
// enumerating every assignment, so nothing here shares code with the solver.

#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsrl/logic/default_theory.hpp"

namespace oracle {

struct Expr {
  enum Kind { Atom, Not, And, Or } kind;
  std::string name;
  std::vector<Expr> args;
};

inline Expr parse(const std::string& text, std::size_t& pos) {
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (text.at(pos) != '(') {
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '(' &&
           text[pos] != ')') {
      ++pos;
    }
    return {Expr::Atom, text.substr(start, pos - start), {}};
  }
  ++pos;
  skip();
  std::size_t start = pos;
  while (!std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  const std::string op = text.substr(start, pos - start);
  Expr e{op == "not" ? Expr::Not : op == "and" ? Expr::And : Expr::Or, "", {}};
  if (op != "not" && op != "and" && op != "or") throw std::runtime_error("oracle: bad connective " + op);
  for (skip(); text.at(pos) != ')'; skip()) e.args.push_back(parse(text, pos));
  ++pos;
  return e;
}

inline Expr parse(const std::string& text) {
  std::size_t pos = 0;
  return parse(text, pos);
}

inline void atoms_of(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Atom) out.insert(e.name);
  for (const auto& a : e.args) atoms_of(a, out);
}

inline bool eval(const Expr& e, const std::map<std::string, bool>& v) {
  switch (e.kind) {
    case Expr::Atom: return v.at(e.name);
    case Expr::Not: return !eval(e.args.at(0), v);
    case Expr::And:
      for (const auto& a : e.args)
        if (!eval(a, v)) return false;
      return true;
    case Expr::Or:
      for (const auto& a : e.args)
        if (eval(a, v)) return true;
      return false;
  }
  return false;
}

/// premises ⊢ goal by enumerating all assignments over their atoms.
inline bool entails(const std::vector<std::string>& premises, const std::string& goal) {
  std::vector<Expr> ps;
  std::set<std::string> atoms;
  for (const auto& p : premises) {
    ps.push_back(parse(p));
    atoms_of(ps.back(), atoms);
  }
  const Expr g = parse(goal);
  atoms_of(g, atoms);
  const std::vector<std::string> names(atoms.begin(), atoms.end());
  if (names.size() > 20) throw std::runtime_error("oracle: too many atoms");
  std::map<std::string, bool> v;
  for (std::uint64_t m = 0; m < (1ull << names.size()); ++m) {
    for (std::size_t i = 0; i < names.size(); ++i) v[names[i]] = (m >> i) & 1u;
    bool all = true;
    for (const auto& p : ps) {
      if (!eval(p, v)) {
        all = false;
        break;
      }
    }
    if (all && !eval(g, v)) return false;
  }
  return true;
}

inline std::string neg(const std::string& f) { return "(not " + f + ")"; }

/// Reference definitions of the scenario operators, straight from the
/// textbook clauses, over a theory given as plain strings.
struct Theory {
  std::vector<std::string> background;
  std::vector<std::pair<std::string, std::string>> rules;  // (premise, conclusion)
  std::set<std::pair<std::size_t, std::size_t>> lower;     // (i, j): rule i < rule j

  // Transitive closure by repeated relaxation.
  std::set<std::pair<std::size_t, std::size_t>> closure() const {
    auto c = lower;
    bool grew = true;
    while (grew) {
      grew = false;
      for (auto [a, b] : std::set(c)) {
        for (auto [x, y] : std::set(c)) {
          if (b == x && c.insert({a, y}).second) grew = true;
        }
      }
    }
    return c;
  }

  std::vector<std::string> context(std::uint32_t s) const {
    auto ctx = background;
    for (std::size_t i = 0; i < rules.size(); ++i)
      if ((s >> i) & 1u) ctx.push_back(rules[i].second);
    return ctx;
  }

  std::uint32_t triggered(std::uint32_t s) const {
    std::uint32_t out = 0;
    const auto ctx = context(s);
    for (std::size_t i = 0; i < rules.size(); ++i)
      if (entails(ctx, rules[i].first)) out |= 1u << i;
    return out;
  }

  std::uint32_t conflicted(std::uint32_t s) const {
    std::uint32_t out = 0;
    const auto ctx = context(s);
    for (std::size_t i = 0; i < rules.size(); ++i)
      if (entails(ctx, neg(rules[i].second))) out |= 1u << i;
    return out;
  }

  std::uint32_t defeated(std::uint32_t s) const {
    const auto trig = triggered(s);
    const auto order = closure();
    std::uint32_t out = 0;
    for (std::size_t d = 0; d < rules.size(); ++d) {
      for (std::size_t e = 0; e < rules.size(); ++e) {
        if (!((trig >> e) & 1u) || !order.count({d, e})) continue;
        auto ctx = background;
        ctx.push_back(rules[e].second);
        if (entails(ctx, neg(rules[d].second))) {
          out |= 1u << d;
          break;
        }
      }
    }
    return out;
  }

  std::uint32_t binding(std::uint32_t s) const { return triggered(s) & ~conflicted(s) & ~defeated(s); }

  std::vector<std::uint32_t> proper() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t s = 0; s < (1u << rules.size()); ++s)
      if (binding(s) == s) out.push_back(s);
    return out;
  }
};

}  // namespace oracle
