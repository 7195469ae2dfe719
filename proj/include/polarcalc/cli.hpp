#pragma once

// Command-line front end, exposed as a library function so tests can drive
// it without spawning processes.
//
// Exit codes: 0 success, 2 domain/usage error (bad input, wrong exponents,
// arcs that are roots, ...), 3 certification error (shallow truncations,
// indeterminate contacts, failed genericity or route cross-checks), 4
// internal error.

#include <string>
#include <vector>

namespace polarcalc {

struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args);

}  // namespace polarcalc
