#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gbp {

// dispatches the gbp subcommands; returns the process exit code
// (0 ok, 1 usage, 2 invalid input, 3 size-limit refusal)
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace gbp
