#include "fusionopt/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return fusionopt::cli::run_cli(argc, argv, std::cout, std::cerr); }
