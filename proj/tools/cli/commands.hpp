#pragma once

#include <vector>

#include "config.hpp"
#include "table.hpp"

namespace barrierlab::cli {

struct RunResult {
  std::vector<Section> sections;
  PlotSpec plot;
  // merged into the manifest
  json extra = json::object();
};

// cfg must be resolved.
RunResult run_command(const RunConfig& cfg);

}  // namespace barrierlab::cli
