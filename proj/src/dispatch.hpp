#pragma once

#include <picard/report.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace picard::cli {

inline constexpr const char* kSchema = "picard-report/1";
inline constexpr const char* kReportDirEnv = "PICARD_REPORT_DIR";

enum Exit : int { pass = 0, fail = 1, usage = 2 };

struct RunConfig {
  std::string command;
  std::uint64_t seed = 1;
  std::string out;
  bool json_stdout = false;
};

// every suite, each one guarded so that an exception becomes a failing check
json report_all(std::uint64_t seed);

// wraps reports into the versioned document written by every command
json document(const RunConfig& cfg, const json& config, const std::vector<Report>& reports);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace picard::cli
