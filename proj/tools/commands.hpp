#pragma once

#include <iosfwd>

#include "config.hpp"

namespace slicepi::cli {

// Both return a process exit status and write their artifacts under cfg.outdir.
int solve_beltrami_cmd(const RunConfig& cfg, std::ostream& log);
int dump_constants(const RunConfig& cfg, std::ostream& out);

}  // namespace slicepi::cli
