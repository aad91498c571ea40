#include <iostream>

#include "funspace_cli/cli.hpp"

int main(int argc, char** argv) { return funspace::cli::run(argc, argv, std::cout, std::cerr); }
