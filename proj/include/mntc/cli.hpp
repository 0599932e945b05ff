#pragma once

#include <string>

#include "mntc/config.hpp"
#include "mntc/dataset.hpp"

namespace mntc::cli {

/// Fills unset branch-dependent fields (p, w, gamma list, grids) with the
/// subcommand's defaults and returns the fully resolved config that goes
/// into output headers.
RunConfig resolve_defaults(const std::string &command, RunConfig config);

io::Dataset run_spectrum(const RunConfig &config);
io::Dataset run_dynamics(const RunConfig &config);
io::Dataset run_fit(const RunConfig &config);
io::Dataset run_phase(const RunConfig &config);
io::Dataset run_oracle(const RunConfig &config);

/// Resolves defaults, runs the subcommand, writes the dataset (file or
/// stdout). Returns 0 on success, 2 on configuration errors, 3 on numerical
/// failures.
int dispatch(const std::string &command, RunConfig config);

} // namespace mntc::cli
