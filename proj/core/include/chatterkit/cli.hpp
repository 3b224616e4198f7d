#ifndef CHATTERKIT_CLI_HPP
#define CHATTERKIT_CLI_HPP

#include <string>
#include <vector>

namespace chatterkit::cli {

/// Command-line front end: build | figure1 | figure2 | instance | verify.
/// Exit codes: 0 ok, 2 input/build error, 3 verification failure.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace chatterkit::cli

#endif  // CHATTERKIT_CLI_HPP
