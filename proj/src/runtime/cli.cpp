#include "rsrl/runtime/cli.hpp"

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rsrl/common/error.hpp"
#include "rsrl/logic/reasoner.hpp"
#include "rsrl/logic/theory_json.hpp"
#include "rsrl/runtime/episode_log.hpp"
#include "rsrl/runtime/files.hpp"
#include "rsrl/runtime/service.hpp"

namespace rsrl::runtime {

using nlohmann::json;
namespace fs = std::filesystem;

json summarize(const std::vector<learn::EpisodeMetrics>& metrics) {
  json s = {{"episodes", metrics.size()}, {"steps", 0},    {"accusations", 0}, {"rejected_feedback", 0},
            {"pushes", 0},                {"rescues", 0},  {"falls", 0},       {"drownings", 0},
            {"deliveries", 0},            {"mean_return", 0.0}};
  double total_return = 0.0;
  for (const auto& m : metrics) {
    s["steps"] = s["steps"].get<int>() + m.steps;
    s["accusations"] = s["accusations"].get<int>() + m.accusations;
    s["rejected_feedback"] = s["rejected_feedback"].get<int>() + m.rejected_feedback;
    s["pushes"] = s["pushes"].get<int>() + m.pushes;
    s["rescues"] = s["rescues"].get<int>() + m.rescues;
    s["falls"] = s["falls"].get<int>() + m.falls;
    s["drownings"] = s["drownings"].get<int>() + m.drownings;
    s["deliveries"] = s["deliveries"].get<int>() + (m.delivered ? 1 : 0);
    total_return += m.return_;
  }
  if (!metrics.empty()) s["mean_return"] = total_return / static_cast<double>(metrics.size());
  return s;
}

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(normalize_atom(item.substr(b, e - b + 1)));
  }
  return out;
}

std::optional<logic::ReasonTheory> load_truth(const std::string& path) {
  if (path.empty() || path == "none") return std::nullopt;
  return load_theory(path).theory;
}

std::string metrics_csv(const std::vector<learn::EpisodeMetrics>& metrics) {
  std::string text = learn::metrics_csv_header() + "\n";
  for (const auto& m : metrics) text += learn::to_csv_row(m) + "\n";
  return text;
}

std::string scenario_text(const std::vector<logic::DefaultRule>& rules, logic::Scenario s) {
  std::string out = "{";
  for (const auto& id : logic::rule_ids(rules, s)) out += (out.size() > 1 ? "," : "") + id;
  return out + "}";
}

struct TrainArgs {
  std::string config, theory = "builtin:initial", truth = "builtin:exemplary", judge, constellation, out = "run", q;
  int episodes = -1;
  std::int64_t seed = -1;
};

struct EvalArgs {
  std::string config, theory, truth, constellation, q, metrics;
  int episodes = -1;
  std::int64_t seed = -1;
  double epsilon = 0.0;
  bool serial = false;
};

struct ReasonArgs {
  std::string theory, labels, account = "both";
  std::vector<std::string> exclusive;
  bool as_json = false;
};

struct ServeArgs {
  std::string config, theory = "builtin:initial", truth = "builtin:exemplary", host = "127.0.0.1";
  int port = 8080;
};

learn::RunConfig apply_overrides(learn::RunConfig c, int episodes, std::int64_t seed, const std::string& judge,
                                 const std::string& constellation) {
  if (episodes >= 0) c.episodes = episodes;
  if (seed >= 0) c.seed = static_cast<std::uint64_t>(seed);
  if (!judge.empty()) c.judge = learn::parse_judge_mode(judge);
  if (!constellation.empty()) c.constellation = env::parse_constellation(constellation);
  return c;
}

int cmd_train(const TrainArgs& a, std::ostream& out) {
  auto config = apply_overrides(load_run_config(a.config), a.episodes, a.seed, a.judge, a.constellation);
  if (config.judge == learn::JudgeMode::Human) throw ConfigError("train runs without a human; use serve");
  const TheoryFile initial = load_theory(a.theory);
  const auto truth = load_truth(a.truth);
  std::optional<rl::QTable> q;
  if (!a.q.empty()) q = rl::QTable::from_json(read_json_file(a.q));

  fs::create_directories(a.out);
  std::ofstream log(fs::path(a.out) / "episodes.jsonl", std::ios::binary);
  if (!log) throw InputError("cannot write to '" + a.out + "'");
  LogWriter writer(log);
  const LogHeader header{config, initial, truth, q};
  writer.header(header);
  const auto wiring = make_wiring(header);
  const auto result = learn::run_loop(config, wiring, initial.theory, writer.observer(), q.value_or(rl::QTable{}));

  TheoryFile final_theory = initial;
  final_theory.theory = result.theory;
  write_text_file(fs::path(a.out) / "theory.json", to_json(final_theory).dump(2) + "\n");
  std::string snapshots;
  for (const auto& t : result.snapshots) snapshots += logic::to_json(t).dump() + "\n";
  write_text_file(fs::path(a.out) / "snapshots.jsonl", snapshots);
  write_text_file(fs::path(a.out) / "q_table.json", result.q.to_json(config.agent).dump() + "\n");
  write_text_file(fs::path(a.out) / "metrics.csv", metrics_csv(result.metrics));

  json summary = summarize(result.metrics);
  summary["revision"] = result.theory.revision;
  summary["theory"] = logic::to_json(result.theory);
  summary["out"] = a.out;
  out << summary.dump() << "\n";
  return 0;
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  auto config = apply_overrides(load_run_config(a.config), a.episodes, a.seed, "", a.constellation);
  const TheoryFile theory = load_theory(a.theory);
  const auto truth = load_truth(a.truth);
  config.judge = truth ? learn::JudgeMode::Oracle : learn::JudgeMode::None;
  config.epsilon = a.epsilon;
  rl::QTable q;
  if (!a.q.empty()) q = rl::QTable::from_json(read_json_file(a.q));
  const auto wiring = learn::make_wiring(config, theory.vocabulary, theory.action_types, truth);
  const auto metrics = a.serial ? learn::evaluate_serial(config, wiring, theory.theory, q)
                                : learn::evaluate(config, wiring, theory.theory, q);
  if (!a.metrics.empty()) write_text_file(a.metrics, metrics_csv(metrics));
  out << summarize(metrics).dump() << "\n";
  return 0;
}

int cmd_replay(const std::string& path, std::ostream& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  const auto report = replay(in);
  out << json{{"steps", report.steps},
              {"mismatches", report.mismatches},
              {"violations", report.violations},
              {"first_mismatch", report.first_mismatch ? json(*report.first_mismatch) : json(nullptr)}}
             .dump()
      << "\n";
  return report.ok() ? 0 : 1;
}

int cmd_reason(const ReasonArgs& a, std::ostream& out) {
  const TheoryFile file = load_theory(a.theory);
  std::vector<logic::Formula> background = file.background;
  for (const auto& l : split_list(a.labels)) background.push_back(logic::Formula::atom(l));
  for (const auto& group : a.exclusive) {
    std::vector<logic::Formula> atoms;
    for (const auto& name : split_list(group)) atoms.push_back(logic::Formula::atom(name));
    if (atoms.empty()) throw InputError("--exclusive needs at least one atom");
    background.push_back(logic::Formula::negation(logic::Formula::conjunction(std::move(atoms))));
  }
  const logic::Reasoner reasoner(logic::DefaultTheory::extend(file.vocabulary, background, file.theory));
  const auto proper = reasoner.proper_scenarios();
  const auto& rules = reasoner.theory().rules;

  json doc;
  json bg = json::array();
  for (const auto& f : reasoner.theory().background) bg.push_back(f.to_string());
  doc["background"] = bg;
  json scenarios = json::array();
  for (auto s : proper) scenarios.push_back(logic::rule_ids(rules, s));
  doc["proper"] = scenarios;
  json oughts = json::object();
  if (a.account == "disjunctive" || a.account == "both") {
    oughts["disjunctive"] = reasoner.oughts(logic::OughtAccount::Disjunctive);
  }
  if (a.account == "conflict" || a.account == "both") oughts["conflict"] = reasoner.oughts(logic::OughtAccount::Conflict);
  doc["oughts"] = oughts;

  if (a.as_json) {
    out << doc.dump() << "\n";
    return 0;
  }
  std::string w;
  for (const auto& f : bg) w += (w.empty() ? "" : ", ") + f.get<std::string>();
  out << "W: " << w << "\n";
  for (auto s : proper) out << "proper: " << scenario_text(rules, s) << "\n";
  for (const auto& [account, atoms] : oughts.items()) {
    std::string list;
    for (const auto& x : atoms) list += (list.empty() ? "" : ", ") + x.get<std::string>();
    out << "oughts (" << account << "): " << (list.empty() ? "none" : list) << "\n";
  }
  return 0;
}

std::atomic<Service*> g_service{nullptr};

extern "C" void stop_service(int) {
  if (auto* s = g_service.load()) s->stop();
}

int cmd_serve(const ServeArgs& a, std::ostream& out) {
  const auto config = load_run_config(a.config);
  SessionManager sessions(load_theory(a.theory), load_truth(a.truth), config);
  Service service(sessions);
  const int port = service.bind(a.host, a.port);
  if (port < 0) throw ConfigError("cannot bind " + a.host + ":" + std::to_string(a.port));
  out << json{{"listening", a.host}, {"port", port}}.dump() << std::endl;
  g_service = &service;
  std::signal(SIGINT, stop_service);
  std::signal(SIGTERM, stop_service);
  service.listen();
  g_service = nullptr;
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reason-sensitive reinforcement learning in the bridge world", "rsrl"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Train an agent with the oracle judge or without a judge");
  t->add_option("--config", train.config, "Run config JSON (default: $RSRL_CONFIG)");
  t->add_option("--episodes", train.episodes, "Number of episodes");
  t->add_option("--seed", train.seed, "Base seed");
  t->add_option("--judge", train.judge, "oracle or none")->check(CLI::IsMember({"oracle", "none"}));
  t->add_option("--constellation", train.constellation, "none, drowning, bridge-person, dilemma or random");
  t->add_option("--theory", train.theory, "Initial theory file or builtin:<name>");
  t->add_option("--truth", train.truth, "Ground-truth theory for the oracle judge, or none");
  t->add_option("--q", train.q, "Q-table checkpoint to start from");
  t->add_option("--out", train.out, "Output directory");

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Evaluate a fixed theory without learning");
  e->add_option("--theory", eval.theory, "Theory file or builtin:<name>")->required();
  e->add_option("--config", eval.config, "Run config JSON (default: $RSRL_CONFIG)");
  e->add_option("--constellation", eval.constellation, "none, drowning, bridge-person, dilemma or random");
  e->add_option("--episodes", eval.episodes, "Number of episodes");
  e->add_option("--seed", eval.seed, "Base seed");
  e->add_option("--truth", eval.truth, "Ground truth used to count accusations");
  e->add_option("--q", eval.q, "Q-table checkpoint");
  e->add_option("--epsilon", eval.epsilon, "Exploration rate")->check(CLI::Range(0.0, 1.0));
  e->add_option("--metrics", eval.metrics, "Write per-episode metrics CSV here");
  e->add_flag("--serial", eval.serial, "Use the single-threaded reference");

  std::string log_path;
  auto* r = app.add_subcommand("replay", "Re-execute a logged run and verify it");
  r->add_option("--log", log_path, "Episode log (JSON Lines)")->required();

  ReasonArgs reason;
  auto* q = app.add_subcommand("reason", "Proper scenarios and oughts for given facts");
  q->add_option("--theory", reason.theory, "Theory file or builtin:<name>")->required();
  q->add_option("--labels", reason.labels, "Comma-separated facts, e.g. B,D");
  q->add_option("--exclusive", reason.exclusive, "Comma-separated action types that cannot hold together");
  q->add_option("--account", reason.account, "disjunctive, conflict or both")
      ->check(CLI::IsMember({"disjunctive", "conflict", "both"}));
  q->add_flag("--json", reason.as_json, "Print JSON");

  ServeArgs serve;
  auto* s = app.add_subcommand("serve", "Start the live session service");
  s->add_option("--port", serve.port, "Port (0 picks a free one)");
  s->add_option("--host", serve.host, "Bind address");
  s->add_option("--config", serve.config, "Default run config JSON (default: $RSRL_CONFIG)");
  s->add_option("--theory", serve.theory, "Initial theory for new sessions");
  s->add_option("--truth", serve.truth, "Ground truth for batch-oracle sessions, or none");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& ex) {
    err << json{{"error", "usage"}, {"message", ex.what()}}.dump() << "\n";
    return ex.get_exit_code() == 0 ? 2 : ex.get_exit_code();
  }

  try {
    if (*t) return cmd_train(train, out);
    if (*e) return cmd_eval(eval, out);
    if (*r) return cmd_replay(log_path, out);
    if (*q) return cmd_reason(reason, out);
    if (*s) return cmd_serve(serve, out);
  } catch (const Error& ex) {
    err << json{{"error", ex.kind()}, {"message", ex.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    err << json{{"error", "internal"}, {"message", ex.what()}}.dump() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace rsrl::runtime
