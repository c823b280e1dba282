#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "markovsig/scenario.hpp"

namespace markovsig {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;

struct CommandOptions {
  std::string scenario_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> grid_size;  // overrides time.steps
};

/// Runs design | verify | simulate | bounds | region. Files go to out_dir;
/// a short summary goes to `out`, diagnostics to `err`. Returns the exit code.
int run_command(const std::string& command, const CommandOptions& opts, std::ostream& out,
                std::ostream& err);

/// Report bodies, exposed for tests. Deterministic given the scenario.
std::string design_report(const Scenario& s);
std::string verify_report(const Scenario& s, bool* all_passed = nullptr);
std::string region_report(const Scenario& s);

/// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::string& path, const std::string& content);

/// 17 significant digits.
std::string format_double(double v);

}  // namespace markovsig
