#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atem/job.hpp"

namespace atem {

struct Preset {
  std::string name;
  std::string description;
  JobSpec job;
};

/// Built-in jobs: the harmonic check, the quartic sweep, the ten-state
/// quartic and the bistable sextic.
const std::vector<Preset>& presets();
const Preset* find_preset(std::string_view name);

/// Jobs whose results a reference table is checked against, in table order.
std::vector<JobSpec> table_jobs(TableId table);

}  // namespace atem
