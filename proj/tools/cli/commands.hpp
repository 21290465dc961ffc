#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace esr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalFailure = 3;

/// Numbers in table output carry this many significant digits.
inline constexpr int kTableDigits = 12;

void write_probs(const RunConfig &config, std::ostream &out);
void write_expect(const RunConfig &config, std::ostream &out);
void write_collapse(const RunConfig &config, std::ostream &out);
void write_sample(const RunConfig &config, std::ostream &out);
void write_compare(const RunConfig &config, std::ostream &out);

/// Full command line without the program name, e.g. {"probs", "--config", "x.json"}.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace esr::cli
