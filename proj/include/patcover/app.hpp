#pragma once

#include <ostream>

#include "patcover/json_io.hpp"

namespace patcover {

/// The patcover command line. Returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Re-checks the witnesses of a result record produced by run_cli. Records of commands
/// without witnesses pass when their output digest matches.
bool verify_record(const Json& record);

}  // namespace patcover
