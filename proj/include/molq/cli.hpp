#ifndef MOLQ_CLI_HPP
#define MOLQ_CLI_HPP

namespace molq {

/// Command-line entry point. Subcommands: scenario, suite, geometry,
/// spectrum, mermin, evolve. Returns 0 when every expectation passes, 1 on an
/// expectation failure, 2 on usage or configuration errors.
int run_cli(int argc, const char* const* argv);

}  // namespace molq

#endif
