#pragma once

namespace scengen {

// Full command-line entry point (subcommands: ingest, analyze, simulate,
// expand, validate, compare, baseline, make-fixture, pipeline).
// Returns the process exit code: 0 success, 1 usage error, 2 data error.
int run_cli(int argc, const char* const* argv);

} // namespace scengen
