#pragma once

#include <string>

#include "commands.hpp"

namespace mwgcli {

// Tables and plot script for one of the fixed figure parameter sets: 1, 2, 4, 5 or 6.
RunResult run_figure(const std::string& which, int jobs, const std::string& format);

}  // namespace mwgcli
