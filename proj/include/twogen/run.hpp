#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twogen/surface.hpp"

namespace twogen {

enum class ReportFormat { text, json };

/// Suite names: atlas, actions, prop22, lemma31, thm32, lemma41, thm42.
const std::vector<std::string>& suite_names();

struct RunConfig {
  int genus = 3;
  int punctures = 7;
  std::vector<std::string> suites;
  std::string emit_path;  // empty: no artifact file
  ReportFormat report = ReportFormat::text;
  std::size_t max_word_length = kDefaultMaxWordLength;
  int threads = 0;  // 0: machine parallelism
  bool negative_controls = true;
  std::uint64_t seed = 20240607;
  std::size_t mutations = 10;  // per certificate, when controls are on
};

struct RunResult {
  int exit_code = 0;     // 0 all pass, 1 some check failed, 2 bad configuration
  std::string report;    // for stdout
  std::string artifact;  // JSON document with expanded words
  std::string error;     // set when exit_code == 2
};

/// Checks every suite's preconditions before running anything. The report
/// and artifact do not depend on the thread count.
RunResult run(const RunConfig& config);

}  // namespace twogen
