#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace icisim {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 2,
    kExitInfeasible = 3,
    kExitDomain = 4,
};

/// Entry point of `icisim <simulate|equilibrium|lyapunov|dispatch> ...`.
/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace icisim
