// Invariant suite behind the `verify` subcommand: fast re-checks of the
// library's structural identities, one printed line per check.

#pragma once

#include <string>

// returns the number of failed checks; lines go to stdout and, when
// out_path is non-empty, to that file as well
int run_verify(const std::string& module, int d, const std::string& out_path);
