#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tetra::cli {

// Dispatches subcommands. Exit codes: 0 success/certified, 1 not-certified
// or statistical-fail, 2 usage/input error, 3 internal inconsistency.
// All randomized output is reproducible given --seed (or TETRA_SEED).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tetra::cli
