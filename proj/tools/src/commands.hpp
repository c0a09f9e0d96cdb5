#ifndef MAXSIE_TOOLS_COMMANDS_HPP
#define MAXSIE_TOOLS_COMMANDS_HPP

#include <functional>
#include <ostream>

#include "config.hpp"

namespace maxsie::cli
{

enum ExitCode
{
  kExitOk = 0,
  kExitInputError = 1,
  kExitNearSingular = 2,
  kExitOracleMismatch = 3
};

// Results go to the configured output paths, or to out when none is set; diagnostics go
// to err. The return value is the process exit code.
int CmdSolve(const RunConfig &config, std::ostream &out, std::ostream &err);
int CmdSweep(const RunConfig &config, std::ostream &out, std::ostream &err);
int CmdSingularFind(const RunConfig &config, std::ostream &out, std::ostream &err);
int CmdPencil(const RunConfig &config, std::ostream &out, std::ostream &err);

// Runs body and maps library exceptions onto exit codes.
int RunGuarded(const std::function<int()> &body, std::ostream &err);

}  // namespace maxsie::cli

#endif  // MAXSIE_TOOLS_COMMANDS_HPP
