#include "rsrl/judge/moral_judge.hpp"

#include <algorithm>

#include "rsrl/common/error.hpp"
#include "rsrl/learn/learner.hpp"

namespace rsrl::judge {

using nlohmann::json;

std::string_view to_string(VerdictSource s) { return s == VerdictSource::Oracle ? "oracle" : "human"; }

VerdictSource parse_verdict_source(std::string_view text) {
  if (text == "oracle") return VerdictSource::Oracle;
  if (text == "human") return VerdictSource::Human;
  throw InputError("unknown verdict source '" + std::string(text) + "'");
}

json to_json(const Verdict& v) {
  return {{"t", v.t},
          {"obligation", v.accusation ? json(v.accusation->obligation) : json(nullptr)},
          {"reason", v.accusation ? json(v.accusation->reason) : json(nullptr)},
          {"source", to_string(v.source)}};
}

Verdict verdict_from_json(const json& doc) {
  try {
    Verdict v;
    v.t = doc.at("t").get<int>();
    v.source = parse_verdict_source(doc.at("source").get<std::string>());
    if (!doc.at("obligation").is_null()) {
      v.accusation = Accusation{doc.at("obligation").get<std::string>(), doc.at("reason").get<std::string>()};
    }
    return v;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad verdict: ") + e.what());
  }
}

OracleJudge::OracleJudge(logic::ReasonTheory truth, shield::ShieldGenerator generator)
    : truth_(std::move(truth)), generator_(std::move(generator)) {}

std::vector<Obligation> OracleJudge::obligations(const env::WorldState& prev, const env::LabelSet& labels) const {
  const logic::Reasoner reasoner(generator_.extend(truth_, prev, labels), generator_.options());
  const auto proper = reasoner.proper_scenarios();
  if (proper.size() != 1) {
    throw ConfigError("ground-truth theory yields " + std::to_string(proper.size()) +
                      " proper scenarios; the judge needs exactly one");
  }
  std::vector<Obligation> out;
  for (auto i : proper.front().indices()) {
    const auto& r = reasoner.theory().rules[i];
    out.push_back({r.id, r.conclusion, r.premise});
  }
  std::sort(out.begin(), out.end(), [](const Obligation& a, const Obligation& b) { return a.rule_id < b.rule_id; });
  return out;
}

std::optional<Accusation> OracleJudge::judge(const env::WorldState& prev, const env::LabelSet& labels,
                                             env::Action a) const {
  for (const auto& o : obligations(prev, labels)) {
    if (!generator_.realizer().first_actions(o.action_type, prev).contains(a)) {
      return Accusation{o.action_type, o.reason};
    }
  }
  return std::nullopt;
}

Screening screen_accusation(const Accusation& accusation, const env::WorldState& prev, const env::LabelSet& labels,
                            env::Action executed, const logic::ReasonTheory& theory,
                            const std::vector<std::string>& chosen, const shield::ShieldGenerator& generator) {
  const auto& vocab = generator.vocabulary();
  if (!vocab.is_action_type(accusation.obligation)) {
    return {false, "'" + accusation.obligation + "' is not a registered action type"};
  }
  if (!vocab.is_label(accusation.reason)) {
    return {false, "'" + accusation.reason + "' is not a registered label"};
  }
  if (!labels.contains(accusation.reason)) {
    return {false, "reason '" + accusation.reason + "' was not a morally relevant fact of the judged state"};
  }
  if (!generator.realizer().registry().find(accusation.obligation)) {
    return {false, "no realization is known for '" + accusation.obligation + "'"};
  }
  if (generator.realizer().first_actions(accusation.obligation, prev).contains(executed)) {
    return {false, "the executed action '" + std::string(env::to_string(executed)) + "' already realizes '" +
                       accusation.obligation + "'"};
  }
  try {
    learn::apply_feedback(theory, vocab, learn::Feedback{accusation, {}, chosen, 0});
  } catch (const InconsistentFeedbackError& e) {
    return {false, e.what()};
  } catch (const InputError& e) {
    return {false, e.what()};
  }
  return {};
}

}  // namespace rsrl::judge
