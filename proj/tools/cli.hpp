#ifndef TMLAB_TOOLS_CLI_HPP_
#define TMLAB_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace tmlab::cli {

// Exit codes.
inline constexpr int kOk = 0;             // accepted / valid
inline constexpr int kRejected = 1;       // rejected / invalid machine
inline constexpr int kResourceCap = 2;
inline constexpr int kUsage = 64;
inline constexpr int kBadData = 65;       // malformed machine, story or report
inline constexpr int kIoError = 66;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tmlab::cli

#endif  // TMLAB_TOOLS_CLI_HPP_
