#ifndef PATCHBOUND_CLI_HPP
#define PATCHBOUND_CLI_HPP

#include <iosfwd>

namespace patchbound {

// Subcommands mesh, analyze, sweep, calibrate. Returns 0 on success, 1 on
// usage or input errors, 2 on numerical failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace patchbound

#endif  // PATCHBOUND_CLI_HPP
