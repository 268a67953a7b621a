#ifndef QSH_RUNNER_HPP
#define QSH_RUNNER_HPP

#include "qsh/config.hpp"

namespace qsh {

/// Execute a configured run and write all outputs under config.output_dir.
/// Returns the process exit status: 0 success, 1 validation failure,
/// 2 numerical failure (last good snapshot saved). Config and I/O errors
/// propagate as exceptions (the CLI maps them to status 3).
int run(const RunConfig& config);

}  // namespace qsh

#endif
