#include "rsrl/logic/default_theory.hpp"

#include <algorithm>
#include <map>

#include "rsrl/common/error.hpp"

namespace rsrl::logic {

Scenario Scenario::of(std::initializer_list<std::size_t> indices) {
  Scenario s;
  for (auto i : indices) s.insert(i);
  return s;
}

std::vector<std::size_t> Scenario::indices() const {
  std::vector<std::size_t> out;
  for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  return out;
}

PriorityOrder::PriorityOrder(std::initializer_list<Edge> edges) {
  for (const auto& [lo, hi] : edges) add(lo, hi);
}

bool PriorityOrder::add(const std::string& lower, const std::string& higher) {
  return edges_.emplace(lower, higher).second;
}

bool PriorityOrder::precedes(const std::string& lower, const std::string& higher) const {
  std::vector<std::string> stack{lower};
  std::set<std::string> seen;
  while (!stack.empty()) {
    std::string cur = std::move(stack.back());
    stack.pop_back();
    for (auto it = edges_.lower_bound({cur, std::string()}); it != edges_.end() && it->first == cur; ++it) {
      if (it->second == higher) return true;
      if (seen.insert(it->second).second) stack.push_back(it->second);
    }
  }
  return false;
}

std::vector<std::string> PriorityOrder::find_cycle() const {
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& [lo, hi] : edges_) succ[lo].push_back(hi);

  enum Color { White, Grey, Black };
  std::map<std::string, Color> color;
  std::vector<std::string> path;
  std::vector<std::string> cycle;

  auto dfs = [&](auto&& self, const std::string& v) -> bool {
    color[v] = Grey;
    path.push_back(v);
    for (const auto& w : succ[v]) {
      if (color[w] == Grey) {
        auto start = std::find(path.begin(), path.end(), w);
        cycle.assign(start, path.end());
        cycle.push_back(w);
        return true;
      }
      if (color[w] == White && self(self, w)) return true;
    }
    path.pop_back();
    color[v] = Black;
    return false;
  };

  for (const auto& [v, _] : succ) {
    if (color[v] == White && dfs(dfs, v)) return cycle;
  }
  return {};
}

const DefaultRule* ReasonTheory::find(const std::string& premise, const std::string& conclusion) const {
  auto it = std::find_if(rules.begin(), rules.end(), [&](const DefaultRule& r) {
    return r.premise == premise && r.conclusion == conclusion;
  });
  return it == rules.end() ? nullptr : &*it;
}

const DefaultRule* ReasonTheory::find_id(const std::string& id) const {
  auto it = std::find_if(rules.begin(), rules.end(), [&](const DefaultRule& r) { return r.id == id; });
  return it == rules.end() ? nullptr : &*it;
}

bool ReasonTheory::same_content(const ReasonTheory& other) const {
  auto sorted = [](std::vector<DefaultRule> rs) {
    std::sort(rs.begin(), rs.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return rs;
  };
  return sorted(rules) == sorted(other.rules) && order == other.order;
}

DefaultTheory DefaultTheory::extend(Vocabulary vocabulary, std::vector<Formula> background,
                                    const ReasonTheory& reasons) {
  return DefaultTheory{std::move(vocabulary), std::move(background), reasons.rules, reasons.order};
}

void DefaultTheory::validate() const {
  for (const auto& f : background) vocabulary.require_registered(f);

  std::set<std::string> ids;
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& r : rules) {
    if (r.id.empty()) throw InputError("rule with empty id");
    if (!ids.insert(r.id).second) throw InputError("duplicate rule id '" + r.id + "'");
    if (!pairs.emplace(r.premise, r.conclusion).second) {
      throw InputError("duplicate rule " + r.premise + " -> " + r.conclusion);
    }
    const auto pk = vocabulary.kind_of(r.premise);
    if (!pk) throw InputError("unregistered atom '" + r.premise + "' in rule " + r.id);
    if (*pk != AtomKind::Label) throw InputError("premise of rule " + r.id + " must be a label");
    const auto ck = vocabulary.kind_of(r.conclusion);
    if (!ck) throw InputError("unregistered atom '" + r.conclusion + "' in rule " + r.id);
    if (*ck != AtomKind::ActionType) throw InputError("conclusion of rule " + r.id + " must be an action type");
  }
  for (const auto& [lo, hi] : order.edges()) {
    if (!ids.count(lo) || !ids.count(hi)) {
      throw InputError("priority edge " + lo + " < " + hi + " references an unknown rule");
    }
  }
  if (auto cycle = order.find_cycle(); !cycle.empty()) {
    std::string text;
    for (const auto& id : cycle) text += (text.empty() ? "" : " < ") + id;
    throw InputError("priority order is cyclic: " + text);
  }
}

std::vector<std::string> rule_ids(const std::vector<DefaultRule>& rules, Scenario s) {
  std::vector<std::string> out;
  for (auto i : s.indices()) out.push_back(rules.at(i).id);
  return out;
}

Scenario scenario_from_ids(const std::vector<DefaultRule>& rules, const std::vector<std::string>& ids) {
  Scenario s;
  for (const auto& id : ids) {
    auto it = std::find_if(rules.begin(), rules.end(), [&](const DefaultRule& r) { return r.id == id; });
    if (it == rules.end()) throw InputError("unknown rule id '" + id + "'");
    s.insert(static_cast<std::size_t>(it - rules.begin()));
  }
  return s;
}

}  // namespace rsrl::logic
