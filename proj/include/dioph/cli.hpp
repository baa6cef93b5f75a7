#ifndef DIOPH_CLI_HPP
#define DIOPH_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace dioph {

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (args[0] is the program name). Machine
/// output goes to `out` as JSON, diagnostics to `err`; `in` feeds
/// subcommands that read a construction document.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace dioph

#endif
