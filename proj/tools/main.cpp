#include "chatterkit/cli.hpp"

int main(int argc, char** argv) { return chatterkit::cli::run(argc, argv); }
