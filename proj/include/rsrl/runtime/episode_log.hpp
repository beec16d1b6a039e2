#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsrl/learn/trainer.hpp"
#include "rsrl/runtime/files.hpp"

namespace rsrl::runtime {

// JSON-Lines episode log. The first line is the header; every other line
// carries a "type" of "step", "theory" or "episode". Records contain no
// timestamps, so a replay regenerates the body byte for byte.

struct LogHeader {
  learn::RunConfig config;
  TheoryFile initial;
  std::optional<logic::ReasonTheory> truth;
  std::optional<rl::QTable> q;
};

nlohmann::json to_json(const LogHeader& h);
LogHeader log_header_from_json(const nlohmann::json& doc);

std::string step_line(const learn::StepRecord& r);
std::string theory_line(const logic::ReasonTheory& t);
std::string episode_line(const learn::EpisodeMetrics& m);

/// Writes one line per event to `out` and flushes after each.
class LogWriter {
 public:
  explicit LogWriter(std::ostream& out) : out_(&out) {}
  void header(const LogHeader& h);
  void line(const std::string& text);
  /// Observer writing step, theory and episode lines.
  learn::Trainer::Observer observer();

 private:
  std::ostream* out_;
};

/// Wiring for the configuration, planners and ground truth of a header.
learn::Wiring make_wiring(const LogHeader& h);

struct ReplayReport {
  std::size_t steps = 0;
  /// Logged body lines that differ from the regenerated ones, plus any
  /// difference in line count.
  std::size_t mismatches = 0;
  /// Logged actions outside their step's shield.
  std::size_t violations = 0;
  std::optional<std::string> first_mismatch;
  std::vector<std::string> body;  // regenerated lines

  bool ok() const noexcept { return mismatches == 0 && violations == 0; }
};

/// Re-executes a logged run from its header and recorded verdicts.
/// Throws InputError for a malformed log.
ReplayReport replay(std::istream& log);

}  // namespace rsrl::runtime
