// SPDX-License-Identifier: Apache-2.0

#ifndef MDR_TOOLS_CLI_HPP
#define MDR_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace mdr::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitIntegrity = 2,
    kExitUnrecoverable = 3,
};

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mdr::cli

#endif
