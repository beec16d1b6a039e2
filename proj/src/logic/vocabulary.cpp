#include "rsrl/logic/vocabulary.hpp"

#include "rsrl/common/error.hpp"

namespace rsrl::logic {

std::string_view to_string(AtomKind kind) { return kind == AtomKind::Label ? "label" : "action-type"; }

AtomKind parse_atom_kind(std::string_view text) {
  if (text == "label") return AtomKind::Label;
  if (text == "action-type" || text == "action") return AtomKind::ActionType;
  throw InputError("unknown atom kind '" + std::string(text) + "'");
}

Vocabulary::Vocabulary(std::initializer_list<Atom> atoms) {
  for (const auto& a : atoms) add(a.name, a.kind);
}

void Vocabulary::add(std::string name, AtomKind kind) {
  if (auto it = index_.find(name); it != index_.end()) {
    if (atoms_[it->second].kind != kind) {
      throw InputError("atom '" + name + "' already registered as " +
                       std::string(to_string(atoms_[it->second].kind)));
    }
    return;
  }
  Formula::atom(name);  // validates the spelling
  index_.emplace(name, atoms_.size());
  atoms_.push_back(Atom{std::move(name), kind});
}

bool Vocabulary::contains(std::string_view name) const { return index_.find(name) != index_.end(); }

std::optional<AtomKind> Vocabulary::kind_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return atoms_[it->second].kind;
}

std::vector<std::string> Vocabulary::names_of(AtomKind kind) const {
  std::vector<std::string> out;
  for (const auto& a : atoms_) {
    if (a.kind == kind) out.push_back(a.name);
  }
  return out;
}

void Vocabulary::require_registered(const Formula& f) const {
  for (const auto& name : f.atoms()) {
    if (!contains(name)) throw InputError("unregistered atom '" + name + "' in " + f.to_string());
  }
}

}  // namespace rsrl::logic
