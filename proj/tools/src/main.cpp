#include "panda_cli/cli.hpp"

int main(int argc, char** argv) { return panda::cli::main(argc, argv); }
