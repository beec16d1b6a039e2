#include "rsrl/runtime/episode_log.hpp"

#include <istream>
#include <ostream>

#include "rsrl/common/error.hpp"
#include "rsrl/logic/theory_json.hpp"

namespace rsrl::runtime {

using nlohmann::json;

json to_json(const LogHeader& h) {
  return {{"type", "header"},
          {"format", 1},
          {"config", learn::to_json(h.config)},
          {"theory", to_json(h.initial)},
          {"truth", h.truth ? logic::to_json(*h.truth) : json(nullptr)},
          {"q", h.q ? h.q->to_json(h.config.agent) : json(nullptr)}};
}

LogHeader log_header_from_json(const json& doc) {
  if (!doc.is_object() || doc.value("type", "") != "header") throw InputError("log does not start with a header");
  LogHeader h;
  try {
    h.config = learn::run_config_from_json(doc.at("config"));
    h.initial = theory_file_from_json(doc.at("theory"));
    if (!doc.at("truth").is_null()) h.truth = logic::reason_theory_from_json(doc.at("truth"));
    if (!doc.at("q").is_null()) h.q = rl::QTable::from_json(doc.at("q"));
  } catch (const json::exception& e) {
    throw InputError(std::string("bad log header: ") + e.what());
  }
  return h;
}

std::string step_line(const learn::StepRecord& r) {
  json doc = learn::to_json(r);
  doc["type"] = "step";
  return doc.dump();
}

std::string theory_line(const logic::ReasonTheory& t) {
  return json{{"type", "theory"}, {"revision", t.revision}, {"theory", logic::to_json(t)}}.dump();
}

std::string episode_line(const learn::EpisodeMetrics& m) {
  return json{{"type", "episode"}, {"metrics", learn::to_json(m)}}.dump();
}

void LogWriter::header(const LogHeader& h) { line(to_json(h).dump()); }

void LogWriter::line(const std::string& text) {
  *out_ << text << '\n';
  out_->flush();
}

learn::Trainer::Observer LogWriter::observer() {
  return {[this](const learn::StepRecord& r) { line(step_line(r)); },
          [this](const logic::ReasonTheory& t) { line(theory_line(t)); },
          [this](const learn::EpisodeMetrics& m) { line(episode_line(m)); }};
}

learn::Wiring make_wiring(const LogHeader& h) {
  return learn::make_wiring(h.config, h.initial.vocabulary, h.initial.action_types, h.truth);
}

ReplayReport replay(std::istream& log) {
  std::string text;
  if (!std::getline(log, text)) throw InputError("empty log");
  json header_doc;
  try {
    header_doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("log header is not JSON: ") + e.what());
  }
  const LogHeader header = log_header_from_json(header_doc);

  std::vector<std::string> logged;
  while (std::getline(log, text)) {
    if (!text.empty()) logged.push_back(text);
  }

  ReplayReport report;
  const learn::Wiring wiring = make_wiring(header);
  learn::Trainer trainer(header.config, wiring, header.initial.theory, header.q.value_or(rl::QTable{}));
  trainer.set_observer({[&](const learn::StepRecord& r) { report.body.push_back(step_line(r)); },
                        [&](const logic::ReasonTheory& t) { report.body.push_back(theory_line(t)); },
                        [&](const learn::EpisodeMetrics& m) { report.body.push_back(episode_line(m)); }});

  for (const auto& line : logged) {
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError(std::string("log line is not JSON: ") + e.what());
    }
    if (rec.value("type", "") != "step") continue;
    ++report.steps;
    try {
      const auto action = env::parse_action(rec.at("action").get<std::string>());
      bool permitted = false;
      for (const auto& a : rec.at("shield").at("permitted")) permitted |= env::parse_action(a.get<std::string>()) == action;
      if (!permitted) ++report.violations;

      const int episode = rec.at("episode").get<int>();
      if (!trainer.in_episode() || trainer.episode() != episode) trainer.begin_episode(episode);
      trainer.act();

      std::optional<judge::Accusation> accusation;
      auto source = judge::VerdictSource::Oracle;
      if (header.config.judge == learn::JudgeMode::Oracle) {
        accusation = trainer.oracle_verdict();
      } else if (header.config.judge == learn::JudgeMode::Human && !rec.at("verdict").is_null()) {
        const auto v = judge::verdict_from_json(rec.at("verdict"));
        accusation = v.accusation;
        source = v.source;
      }
      trainer.resolve(accusation, source);
    } catch (const json::exception& e) {
      throw InputError(std::string("bad step record: ") + e.what());
    }
  }

  const std::size_t common = std::min(logged.size(), report.body.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (logged[i] != report.body[i]) {
      ++report.mismatches;
      if (!report.first_mismatch) report.first_mismatch = "line " + std::to_string(i + 2) + ": " + logged[i];
    }
  }
  const std::size_t extra = std::max(logged.size(), report.body.size()) - common;
  report.mismatches += extra;
  if (extra && !report.first_mismatch) report.first_mismatch = "line count differs";
  return report;
}

}  // namespace rsrl::runtime
