#include "rsrl/runtime/files.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rsrl/common/error.hpp"
#include "rsrl/logic/theory_json.hpp"

namespace rsrl::runtime {

using nlohmann::json;

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw InputError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

TheoryFile theory_file_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("theory document must be an object");
  if (!doc.contains("atoms")) throw InputError("missing field 'atoms'");
  TheoryFile f;
  f.vocabulary = logic::vocabulary_from_json(doc.at("atoms"));
  f.theory = logic::reason_theory_from_json(doc);
  f.action_types = doc.contains("actionTypes") ? realization::action_types_from_json(doc.at("actionTypes"))
                                               : realization::ActionTypeRegistry::bridge_default();
  if (doc.contains("background")) {
    if (!doc.at("background").is_array()) throw InputError("'background' must be an array");
    for (const auto& b : doc.at("background")) {
      if (!b.is_string()) throw InputError("background entries must be formula strings");
      f.background.push_back(logic::parse_formula(b.get<std::string>()));
    }
  }
  logic::DefaultTheory::extend(f.vocabulary, f.background, f.theory).validate();
  for (const auto& r : f.theory.rules) {
    if (!f.action_types.find(r.conclusion)) {
      throw InputError("rule '" + r.id + "' concludes '" + r.conclusion + "', which has no planner");
    }
  }
  return f;
}

json to_json(const TheoryFile& file) {
  json doc = logic::to_json(file.theory);
  doc["atoms"] = logic::to_json(file.vocabulary);
  doc["actionTypes"] = realization::to_json(file.action_types);
  json background = json::array();
  for (const auto& b : file.background) background.push_back(b.to_string());
  doc["background"] = std::move(background);
  return doc;
}

TheoryFile builtin_theory(std::string_view name) {
  TheoryFile f;
  f.vocabulary = logic::Vocabulary{{"B", logic::AtomKind::Label},
                                   {"D", logic::AtomKind::Label},
                                   {"phi_W", logic::AtomKind::ActionType},
                                   {"phi_R", logic::AtomKind::ActionType}};
  f.action_types = realization::ActionTypeRegistry::bridge_default();
  if (name == "empty") return f;
  f.theory.rules = {{"d1", "B", "phi_W"}, {"d2", "D", "phi_R"}};
  if (name == "initial") return f;
  if (name == "exemplary") {
    f.theory.order.add("d1", "d2");
    return f;
  }
  throw InputError("unknown built-in theory '" + std::string(name) + "'");
}

TheoryFile load_theory(const std::filesystem::path& path) {
  static constexpr std::string_view prefix = "builtin:";
  if (const auto text = path.string(); text.starts_with(prefix)) return builtin_theory(text.substr(prefix.size()));
  try {
    return theory_file_from_json(read_json_file(path));
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.find(path.string()) != std::string::npos) throw;
    throw InputError("'" + path.string() + "': " + msg);
  }
}

learn::RunConfig load_run_config(const std::filesystem::path& path) {
  std::filesystem::path chosen = path;
  if (chosen.empty()) {
    if (const char* env = std::getenv(kConfigEnv); env && *env) chosen = env;
  }
  if (chosen.empty()) return {};
  return learn::run_config_from_json(read_json_file(chosen));
}

std::string normalize_atom(std::string name) {
  static const std::string phi = "\xCF\x86";
  for (auto pos = name.find(phi); pos != std::string::npos; pos = name.find(phi, pos)) {
    name.replace(pos, phi.size(), "phi");
  }
  return name;
}

}  // namespace rsrl::runtime
