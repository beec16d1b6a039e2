#pragma once

#include <iosfwd>

#include <json.hpp>

#include "rsrl/learn/trainer.hpp"

namespace rsrl::runtime {

/// Entry point of the rsrl command-line tool: train, eval, replay, reason
/// and serve. Errors are written to `err` as one JSON object
/// {"error": kind, "message": text}; the return value is the exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Totals over a batch of episodes.
nlohmann::json summarize(const std::vector<learn::EpisodeMetrics>& metrics);

}  // namespace rsrl::runtime
