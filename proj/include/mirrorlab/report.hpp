#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mirrorlab {

// Tabular result of one CLI experiment. Rows are produced deterministically
// (fixed seed, fixed tolerances), so re-running an experiment regenerates
// them byte-for-byte; wall_clock and fingerprint are metadata only.
struct ExperimentReport {
  std::string id;
  std::vector<std::pair<std::string, std::string>> inputs;  // effective config
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  double wall_clock_seconds = 0.0;
  std::string toolchain;
  int exit_code = 0;
};

std::string format_double(double x);  // shortest round-trip-exact form

std::string to_csv(const ExperimentReport& r);    // rows only, stable column contract
std::string to_json_string(const ExperimentReport& r);

std::string toolchain_fingerprint();

void write_text_file(const std::string& path, const std::string& content);

}  // namespace mirrorlab
