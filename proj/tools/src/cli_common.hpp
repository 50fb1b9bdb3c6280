#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steerkit/steerkit.hpp"

namespace steerkit::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

ScenarioKind parse_scenario_kind(const std::string& name);
const char* scenario_to_string(ScenarioKind kind);

Direction parse_direction(const std::string& name);
const char* direction_to_string(Direction direction);

// m2 | m3 | dihedral:<m> | equatorial | projective:<res>
MeasurementScheme parse_scheme(const std::string& name);
std::string scheme_to_string(const MeasurementScheme& scheme);

// Shortest-faithful numeric formatting used by the CSV emitters.
std::string format_double(double value);

// Parses "a,b,c" into doubles; throws ParameterOutOfRange on junk.
std::vector<double> parse_list(const std::string& csv);

// Worker-pool width: STEERKIT_THREADS if set (>=1), else hardware concurrency.
int worker_count();

// Runs fn(i) for i in [0, count) on the worker pool; exceptions are
// propagated from the first failing index (by index order).
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace steerkit::cli
