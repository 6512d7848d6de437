#include <iostream>

#include "partmodes_cli/commands.hpp"

int main(int argc, char** argv) { return partmodes::cli::run(argc, argv, std::cout, std::cerr); }
