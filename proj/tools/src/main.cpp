#include "plancherel_cli/cli.hpp"

int main(int argc, char** argv) { return plancherel::cli::cli_main(argc, argv); }
