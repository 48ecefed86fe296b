#ifndef OPENPATH_CLI_HPP
#define OPENPATH_CLI_HPP

#include <string>
#include <vector>

namespace openpath {

struct CommandResult {
    std::string out;
    int code = 0;  // 0 success, 1 property failure, 2 usage or parse error
};

/// Runs one command; args excludes the program name.
CommandResult run_command(const std::vector<std::string>& args);

}  // namespace openpath

#endif  // OPENPATH_CLI_HPP
