#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "psched/oracle.hpp"

namespace psched::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name). Output files are
/// written directly; everything else goes to `out` / `err`. `solvers` lets
/// tests plant a faulty solver behind `verify`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Solvers& solvers = {});

}  // namespace psched::cli
