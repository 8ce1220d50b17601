#pragma once

namespace oracle_lab {

/// Entry point of the `oracle-lab` command. Returns the process exit code.
int cli_main(int argc, const char* const* argv);

}  // namespace oracle_lab
