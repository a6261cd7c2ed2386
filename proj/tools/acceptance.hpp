#pragma once

#include <string>

namespace adl_accept {

// Runs the named acceptance suite and prints one pass/fail line per
// criterion.  "all" selects every criterion; a key or a criterion number
// selects one.  Returns 0 when everything selected passed, 2 otherwise.
// Unknown suite names throw std::invalid_argument listing the valid keys.
int run_suite(const std::string& suite, int jobs);

}  // namespace adl_accept
